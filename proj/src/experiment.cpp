#include "wex/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "wex/jc.hpp"
#include "wex/rng.hpp"
#include "wex/thermal.hpp"
#include "wex/version.hpp"

namespace wex {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string to_string(EngineKind e) {
    switch (e) {
        case EngineKind::ThermalQuasistatic: return "thermal-quasistatic";
        case EngineKind::ThermalFiniteM: return "thermal-finite-m";
        case EngineKind::Jc: return "jc";
    }
    return "?";
}

std::string to_string(StrategyKind s) {
    switch (s) {
        case StrategyKind::Adaptive: return "adaptive";
        case StrategyKind::TwoPhase: return "twophase";
        case StrategyKind::Oracle: return "oracle";
        case StrategyKind::ScriptedHalf: return "scripted-half";
    }
    return "?";
}

EngineKind engine_from_string(const std::string& s) {
    if (s == "thermal-quasistatic") return EngineKind::ThermalQuasistatic;
    if (s == "thermal-finite-m") return EngineKind::ThermalFiniteM;
    if (s == "jc") return EngineKind::Jc;
    throw std::domain_error("unknown engine: " + s);
}

StrategyKind strategy_from_string(const std::string& s) {
    if (s == "adaptive") return StrategyKind::Adaptive;
    if (s == "twophase") return StrategyKind::TwoPhase;
    if (s == "oracle") return StrategyKind::Oracle;
    if (s == "scripted-half") return StrategyKind::ScriptedHalf;
    throw std::domain_error("unknown strategy: " + s);
}

double zeta_paper_constant() {
    return 334812.0 * std::sqrt(2.0) + 1296.0 * std::sqrt(6.0);
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
    return {buf, ptr};
}

} // namespace

void ExperimentConfig::validate() const {
    if (n < 1) throw std::domain_error("config: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("config: delta must lie in (0,1)");
    if (!(c > 0.0)) throw std::domain_error("config: c must be positive");
    if (!(effective_zeta() > 0.0)) throw std::domain_error("config: zeta must be positive");
    if (!(lambda0 > 0.0)) throw std::domain_error("config: lambda0 must be positive");
    if (!(beta > 0.0)) throw std::domain_error("config: beta must be positive");
    if (!(omega > 0.0)) throw std::domain_error("config: omega must be positive");
    if (engine == EngineKind::ThermalFiniteM && m_reps < 1)
        throw std::domain_error("config: m-reps must be >= 1 for the finite-M engine");
    if (strategy == StrategyKind::TwoPhase && !(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("config: alpha must lie in (0,1)");
    if (!(c_tp > 0.0)) throw std::domain_error("config: c-tp must be positive");
    if (trials < 1) throw std::domain_error("config: trials must be >= 1");
    if (threads < 0) throw std::domain_error("config: threads must be >= 0");
    if (psi_mode == PsiMode::Fixed &&
        std::abs(psi_fixed.norm() - 1.0) > 1e-6)
        throw std::domain_error("config: fixed psi must be a unit vector");
}

std::string ExperimentConfig::canonical_string() const {
    std::map<std::string, std::string> kv;
    kv["engine"] = to_string(engine);
    kv["strategy"] = to_string(strategy);
    kv["n"] = std::to_string(n);
    kv["delta"] = format_double(delta);
    kv["c"] = format_double(c);
    kv["zeta"] = format_double(effective_zeta());
    kv["zeta_paper"] = zeta_paper ? "1" : "0";
    kv["lambda0"] = format_double(lambda0);
    kv["beta"] = format_double(beta);
    kv["omega"] = format_double(omega);
    kv["m_reps"] = std::to_string(m_reps);
    kv["alpha"] = format_double(alpha);
    kv["c_tp"] = format_double(c_tp);
    kv["trials"] = std::to_string(trials);
    kv["base_seed"] = std::to_string(base_seed);
    kv["psi_mode"] = psi_mode == PsiMode::Haar ? "haar" : "fixed";
    kv["psi_fixed"] = format_double(psi_fixed.x) + "," + format_double(psi_fixed.y) +
                      "," + format_double(psi_fixed.z);
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical_string()); }

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::domain_error("quantile: empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

std::vector<long> checkpoint_rounds(long n) {
    std::vector<long> out;
    for (long k = 1; k <= n && k > 0; k *= 2) out.push_back(k);
    if (out.empty() || out.back() != n) out.push_back(n);
    return out;
}

namespace {

std::unique_ptr<Strategy> make_strategy(const ExperimentConfig& cfg, const PureQubit& psi) {
    switch (cfg.strategy) {
        case StrategyKind::Oracle: return std::make_unique<OracleStrategy>(psi);
        case StrategyKind::ScriptedHalf: return std::make_unique<ScriptedHalfStrategy>();
        case StrategyKind::TwoPhase:
            return std::make_unique<TwoPhaseStrategy>(cfg.alpha, cfg.n, cfg.delta, cfg.c_tp);
        case StrategyKind::Adaptive:
            return std::make_unique<AdaptiveStrategy>(cfg.n, cfg.delta, cfg.c, cfg.lambda0,
                                                      cfg.effective_zeta());
    }
    throw std::logic_error("make_strategy: unreachable");
}

TrialResult run_trial(const ExperimentConfig& cfg, long trial_index) {
    TrialResult res;
    res.seed = trial_seed(cfg.base_seed, static_cast<std::uint64_t>(trial_index));
    Philox rng(res.seed);

    if (cfg.psi_mode == PsiMode::Haar) {
        const auto u = rng.unit_sphere();
        res.psi = {u[0], u[1], u[2]};
    } else {
        res.psi = cfg.psi_fixed.normalized();
    }
    const PureQubit psi{res.psi};
    auto strategy = make_strategy(cfg, psi);

    BatteryLedger battery;
    long jc_n = 0;
    res.ledger.eps_k.reserve(cfg.n);
    res.probes.reserve(cfg.n);

    for (long k = 1; k <= cfg.n; ++k) {
        const Proposal prop = strategy->propose(k);
        const PureQubit psi_k{prop.psi_k};
        const double fid = fidelity(psi, psi_k);

        double delta_w;
        int reward;
        double diss;
        double land;
        switch (cfg.engine) {
            case EngineKind::ThermalQuasistatic: {
                const ExtractionParams params(prop.eps_k, cfg.beta);
                const RoundOutcome out = run_round_quasistatic(psi, psi_k, params, rng);
                delta_w = out.delta_w;
                reward = out.reward;
                diss = dissipation_round(psi, psi_k, prop.eps_k, cfg.beta);
                land = landauer_round_sc(prop.eps_k);
                break;
            }
            case EngineKind::ThermalFiniteM: {
                const ExtractionParams params(prop.eps_k, cfg.beta, cfg.m_reps);
                const RoundOutcome out = run_round_finite_m(psi, psi_k, params, rng);
                delta_w = out.delta_w;
                reward = out.reward;
                diss = dissipation_round(psi, psi_k, prop.eps_k, cfg.beta);
                land = landauer_round_sc(prop.eps_k);
                break;
            }
            case EngineKind::Jc: {
                const JcParams params(cfg.omega, jc_n);
                const JcOutcome out = jc_round(psi, psi_k, params, rng);
                diss = jc_dissipation_round(fid, jc_n, cfg.omega);
                land = landauer_round_jc(1.0 - fid, jc_theta(jc_n));
                jc_n = out.n_next;
                delta_w = out.delta_w;
                reward = out.reward;
                break;
            }
            default: throw std::logic_error("run_trial: unreachable");
        }

        battery.deposit(delta_w);
        strategy->observe(k, reward);
        res.ledger.push(prop.eps_k, fid, diss, std::max(0.0, 1.0 - fid), land);
        res.probes.push_back(
            {prop.stage, prop.group, prop.slot, prop.psi_k, reward, delta_w});
    }

    res.battery_mu = battery.mu;

    // Per the round bound, cumulative dissipation in the ladder model can
    // never exceed twice omega times the regret.
    if (cfg.engine == EngineKind::Jc &&
        res.ledger.total_diss() >
            2.0 * cfg.omega * res.ledger.total_regret() * (1.0 + 1e-12) + 1e-12)
        throw std::logic_error("jc run violated the dissipation-regret bound");

    return res;
}

void write_csv(const ExperimentConfig& cfg, const std::vector<TrialResult>& trials,
               std::ostream& os) {
    os << "trial,k,stage,group,slot,ax,ay,az,eps_k,fidelity_k,reward,delta_w,"
          "diss_round,diss_cum,regret_cum,landauer_round,landauer_cum\n";
    std::string line;
    for (long trial = 0; trial < static_cast<long>(trials.size()); ++trial) {
        const TrialResult& tr = trials[static_cast<std::size_t>(trial)];
        for (long i = 0; i < cfg.n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const ProbeRecord& pr = tr.probes[idx];
            line.clear();
            line += std::to_string(trial);
            line += ',';
            line += std::to_string(i + 1);
            line += ',';
            line += std::to_string(pr.stage);
            line += ',';
            line += std::to_string(pr.group);
            line += ',';
            line += std::to_string(pr.slot);
            line += ',';
            line += format_double(pr.a.x);
            line += ',';
            line += format_double(pr.a.y);
            line += ',';
            line += format_double(pr.a.z);
            line += ',';
            line += format_double(tr.ledger.eps_k[idx]);
            line += ',';
            line += format_double(tr.ledger.fidelity_k[idx]);
            line += ',';
            line += std::to_string(pr.reward);
            line += ',';
            line += format_double(pr.delta_w);
            line += ',';
            line += format_double(tr.ledger.diss[idx]);
            line += ',';
            line += format_double(tr.ledger.diss_cum[idx]);
            line += ',';
            line += format_double(tr.ledger.regret_cum[idx]);
            line += ',';
            line += format_double(tr.ledger.landauer[idx]);
            line += ',';
            line += format_double(tr.ledger.landauer_cum[idx]);
            line += '\n';
            os << line;
        }
    }
}

QuantileTriple quantiles_of(std::vector<double> v) {
    return {quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75)};
}

std::vector<CheckpointSummary> summarize_checkpoints(const ExperimentConfig& cfg,
                                                     const std::vector<TrialResult>& trials) {
    std::vector<CheckpointSummary> out;
    for (long k : checkpoint_rounds(cfg.n)) {
        const auto idx = static_cast<std::size_t>(k - 1);
        std::vector<double> d, r, l;
        for (const auto& tr : trials) {
            d.push_back(tr.ledger.diss_cum[idx]);
            r.push_back(tr.ledger.regret_cum[idx]);
            l.push_back(tr.ledger.landauer_cum[idx]);
        }
        out.push_back({k, quantiles_of(d), quantiles_of(r), quantiles_of(l)});
    }
    return out;
}

ordered_json quantile_json(const QuantileTriple& q) {
    return ordered_json{{"q25", q.q25}, {"q50", q.q50}, {"q75", q.q75}};
}

ordered_json config_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["engine"] = to_string(cfg.engine);
    j["strategy"] = to_string(cfg.strategy);
    j["n"] = cfg.n;
    j["delta"] = cfg.delta;
    j["c"] = cfg.c;
    j["zeta"] = cfg.effective_zeta();
    j["zeta_paper"] = cfg.zeta_paper;
    j["lambda0"] = cfg.lambda0;
    j["beta"] = cfg.beta;
    j["omega"] = cfg.omega;
    j["m_reps"] = cfg.m_reps;
    j["alpha"] = cfg.alpha;
    j["c_tp"] = cfg.c_tp;
    j["trials"] = cfg.trials;
    j["base_seed"] = cfg.base_seed;
    j["psi_mode"] = cfg.psi_mode == PsiMode::Haar ? "haar" : "fixed";
    j["psi_fixed"] = {cfg.psi_fixed.x, cfg.psi_fixed.y, cfg.psi_fixed.z};
    return j;
}

char hex_digit(std::uint64_t v) {
    return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
}

std::string hex64(std::uint64_t v) {
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = hex_digit(v & 0xF);
        v >>= 4;
    }
    return s;
}

std::vector<TrialResult> run_all_trials(const ExperimentConfig& cfg) {
    std::vector<TrialResult> trials(static_cast<std::size_t>(cfg.trials));
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min<unsigned>(n_threads,
                                                static_cast<unsigned>(cfg.trials)));

    if (n_threads == 1) {
        for (long i = 0; i < cfg.trials; ++i)
            trials[static_cast<std::size_t>(i)] = run_trial(cfg, i);
        return trials;
    }

    // Trials are independent; results land in trial-index slots, so the
    // merge order never depends on scheduling.
    std::atomic<long> next{0};
    std::vector<std::thread> workers;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < n_threads; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const long i = next.fetch_add(1);
                if (i >= cfg.trials || failed.load()) return;
                try {
                    trials[static_cast<std::size_t>(i)] = run_trial(cfg, i);
                } catch (...) {
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : workers) th.join();
    if (failed.load()) throw std::runtime_error("a trial worker failed");
    return trials;
}

} // namespace

double ExperimentResult::median_final_diss() const {
    std::vector<double> v;
    for (const auto& tr : trials) v.push_back(tr.ledger.total_diss());
    return quantile(std::move(v), 0.5);
}

double ExperimentResult::median_final_regret() const {
    std::vector<double> v;
    for (const auto& tr : trials) v.push_back(tr.ledger.total_regret());
    return quantile(std::move(v), 0.5);
}

double ExperimentResult::median_final_landauer() const {
    std::vector<double> v;
    for (const auto& tr : trials) v.push_back(tr.ledger.total_landauer());
    return quantile(std::move(v), 0.5);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    ExperimentResult result;
    result.trials = run_all_trials(cfg);
    result.checkpoints = summarize_checkpoints(cfg, result.trials);

    ordered_json j;
    j["version"] = kVersion;
    j["config"] = config_json(cfg);
    j["config_hash"] = "fnv1a64:" + hex64(cfg.hash());
    j["rng"] = {{"algorithm", kRngAlgorithm}, {"seed_derivation", kSeedDerivation}};

    ordered_json seeds = ordered_json::array();
    ordered_json psis = ordered_json::array();
    ordered_json finals = ordered_json::array();
    for (const auto& tr : result.trials) {
        seeds.push_back(tr.seed);
        psis.push_back({tr.psi.x, tr.psi.y, tr.psi.z});
        finals.push_back({{"diss_cum", tr.ledger.total_diss()},
                          {"regret_cum", tr.ledger.total_regret()},
                          {"landauer_cum", tr.ledger.total_landauer()},
                          {"battery_mu", tr.battery_mu}});
    }
    j["trial_seeds"] = seeds;
    j["trial_psi"] = psis;
    j["trial_final"] = finals;

    if (cfg.strategy == StrategyKind::Adaptive) {
        const AdaptivePlan plan = plan_stages(cfg.n, cfg.delta);
        j["adaptive_plan"] = {{"t", plan.t},
                              {"stages", plan.stages},
                              {"leftover_rounds", plan.leftover},
                              {"leftover_policy", "replay-last-actions-drop-rewards"}};
    }

    ordered_json cps = ordered_json::array();
    for (const auto& cp : result.checkpoints) {
        ordered_json e;
        e["k"] = cp.k;
        e["diss_cum"] = quantile_json(cp.diss_cum);
        e["regret_cum"] = quantile_json(cp.regret_cum);
        e["landauer_cum"] = quantile_json(cp.landauer_cum);
        cps.push_back(e);
    }
    j["checkpoints"] = cps;

    if (cfg.engine != EngineKind::Jc) {
        // Erasure-cost case analysis on the scheduled accuracies, per trial.
        bool all_ok = true;
        for (const auto& tr : result.trials) {
            const auto cb = landauer_case_bound(tr.ledger.eps_k, cfg.c, cfg.n, cfg.delta);
            all_ok = all_ok && cb.ok;
        }
        const auto cb0 =
            landauer_case_bound(result.trials.front().ledger.eps_k, cfg.c, cfg.n, cfg.delta);
        j["landauer_case_bound"] = {{"premise_holds", cb0.premise_holds},
                                    {"small_n_case", cb0.small_n_case},
                                    {"eps_sum", cb0.eps_sum},
                                    {"xlogx_sum", cb0.xlogx_sum},
                                    {"bound", cb0.bound},
                                    {"all_trials_ok", all_ok}};
        if (!all_ok) throw std::logic_error("landauer case bound violated");
    } else {
        bool ok = true;
        for (const auto& tr : result.trials)
            ok = ok && tr.ledger.total_diss() <=
                           2.0 * cfg.omega * tr.ledger.total_regret() * (1.0 + 1e-12) + 1e-12;
        j["jc_dissipation_regret_bound_ok"] = ok;
    }

    result.summary_json = j.dump(2) + "\n";

    if (!cfg.out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(cfg.out_dir, ec);
        if (ec) throw std::runtime_error("cannot create output dir: " + cfg.out_dir);

        if (cfg.write_csv) {
            const fs::path csv = fs::path(cfg.out_dir) / "rounds.csv";
            std::ofstream os(csv, std::ios::binary);
            if (!os) throw std::runtime_error("cannot write " + csv.string());
            write_csv(cfg, result.trials, os);
            if (!os) throw std::runtime_error("failed writing " + csv.string());
            result.csv_path = csv.string();
        }
        const fs::path sp = fs::path(cfg.out_dir) / "summary.json";
        std::ofstream os(sp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + sp.string());
        os << result.summary_json;
        if (!os) throw std::runtime_error("failed writing " + sp.string());
        result.summary_path = sp.string();
    }
    return result;
}

SweepResult run_sweep(const ExperimentConfig& base, const std::vector<long>& n_list,
                      const std::vector<double>& alpha_grid) {
    if (n_list.size() < 3) throw std::domain_error("sweep: need at least 3 N values");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::domain_error("sweep: N list must be strictly ascending");
    if (base.strategy == StrategyKind::TwoPhase && alpha_grid.empty())
        throw std::domain_error("sweep: two-phase sweep needs an alpha grid");

    SweepResult out;
    for (long n : n_list) {
        ExperimentConfig cfg = base;
        cfg.n = n;

        if (base.strategy == StrategyKind::TwoPhase) {
            std::optional<SweepEntry> best;
            for (double a : alpha_grid) {
                cfg.alpha = a;
                cfg.out_dir = base.out_dir.empty()
                                  ? ""
                                  : base.out_dir + "/n" + std::to_string(n) + "_alpha" +
                                        format_double(a);
                const ExperimentResult r = run_experiment(cfg);
                const SweepEntry e{n, a, r.median_final_diss(), r.median_final_regret(),
                                   r.median_final_landauer()};
                out.entries.push_back(e);
                if (!best || e.median_diss < best->median_diss) best = e;
            }
            out.best_per_n.push_back(*best);
        } else {
            cfg.out_dir =
                base.out_dir.empty() ? "" : base.out_dir + "/n" + std::to_string(n);
            const ExperimentResult r = run_experiment(cfg);
            const SweepEntry e{n, std::numeric_limits<double>::quiet_NaN(),
                               r.median_final_diss(), r.median_final_regret(),
                               r.median_final_landauer()};
            out.entries.push_back(e);
            out.best_per_n.push_back(e);
        }
    }

    std::vector<std::pair<double, double>> points;
    for (const auto& e : out.best_per_n)
        points.emplace_back(static_cast<double>(e.n), e.median_diss);
    out.fit = fit_scaling(points, base.delta);

    ordered_json j;
    j["version"] = kVersion;
    j["strategy"] = to_string(base.strategy);
    j["engine"] = to_string(base.engine);
    j["delta"] = base.delta;
    ordered_json entries = ordered_json::array();
    for (const auto& e : out.entries) {
        ordered_json je;
        je["n"] = e.n;
        if (!std::isnan(e.alpha)) je["alpha"] = e.alpha;
        je["median_diss"] = e.median_diss;
        je["median_regret"] = e.median_regret;
        je["median_landauer"] = e.median_landauer;
        entries.push_back(je);
    }
    j["runs"] = entries;
    ordered_json fit;
    fit["polylog"] = {{"a", out.fit.polylog_a},
                      {"b", out.fit.polylog_b},
                      {"resid", out.fit.polylog_resid}};
    fit["sqrt"] = {{"a", out.fit.sqrt_a}, {"b", out.fit.sqrt_b}, {"resid", out.fit.sqrt_resid}};
    fit["implied_polylog"] = out.fit.implied_polylog;
    fit["implied_sqrt"] = out.fit.implied_sqrt;
    j["fit"] = fit;
    out.summary_json = j.dump(2) + "\n";

    if (!base.out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(base.out_dir, ec);
        if (ec) throw std::runtime_error("cannot create output dir: " + base.out_dir);
        const fs::path sp = fs::path(base.out_dir) / "sweep_summary.json";
        std::ofstream os(sp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + sp.string());
        os << out.summary_json;
        out.summary_path = sp.string();
    }
    return out;
}

} // namespace wex
