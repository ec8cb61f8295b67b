// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 5 and 8 share one scaling sweep; criterion 9 exercises
// the file-writing path twice and compares bytes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wex/accounting.hpp"
#include "wex/bloch.hpp"
#include "wex/experiment.hpp"
#include "wex/jc.hpp"
#include "wex/rng.hpp"
#include "wex/thermal.hpp"

using namespace wex;

namespace {

struct Criterion {
    int id;
    bool passed;
    std::string detail;
    double seconds;
};

std::vector<Criterion> g_results;

template <typename F>
void run_criterion(int id, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        std::tie(ok, detail) = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g_results.push_back({id, ok, detail, secs});
    std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id,
                detail.c_str(), secs);
    std::fflush(stdout);
}

PureQubit random_pure(Philox& rng) {
    const auto u = rng.unit_sphere();
    return PureQubit{BlochVector{u[0], u[1], u[2]}};
}

PureQubit at_fidelity(const PureQubit& psi, double fid, Philox& rng) {
    const BlochVector u = psi.u();
    const double ca = 2.0 * fid - 1.0;
    const double sa = std::sqrt(std::max(0.0, 1.0 - ca * ca));
    const BlochVector ref = std::abs(u.z) < 0.9 ? BlochVector{0, 0, 1} : BlochVector{1, 0, 0};
    BlochVector e1{u.y * ref.z - u.z * ref.y, u.z * ref.x - u.x * ref.z,
                   u.x * ref.y - u.y * ref.x};
    e1 = e1.normalized();
    const BlochVector e2{u.y * e1.z - u.z * e1.y, u.z * e1.x - u.x * e1.z,
                         u.x * e1.y - u.y * e1.x};
    const double phi = 2.0 * M_PI * rng.next_double();
    return PureQubit{u * ca + (e1 * std::cos(phi) + e2 * std::sin(phi)) * sa};
}

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// Criterion 1: expected work equals the Born mixture of the work values.
std::pair<bool, std::string> criterion1() {
    Philox rng(0x5EC1);
    double max_scaled_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const PureQubit psi = random_pure(rng);
        const PureQubit psi_k = random_pure(rng);
        const double eps = 1e-6 + (0.5 - 1e-6) * rng.next_double();
        const double beta = 0.25 + 4.0 * rng.next_double();
        const ExtractionParams params(eps, beta);
        const auto [w0, w1] = work_values(params);
        const double p = fidelity(psi, psi_k);
        const double err =
            std::abs(expected_work(psi, psi_k, params) - (p * w0 + (1.0 - p) * w1));
        max_scaled_err = std::max(max_scaled_err, err * beta);
    }
    return {max_scaled_err <= 1e-12,
            "max beta-scaled identity error " + fmt(max_scaled_err, 3) + " <= 1e-12"};
}

// ---------------------------------------------------------------------------
// Criterion 2: finite-M convergence slope and Hoeffding tails.
std::pair<bool, std::string> criterion2() {
    Philox rng(0x5EC2);
    const PureQubit psi{BlochVector{0, 0, 1}};
    const long chains = 100000;
    const std::vector<long> ms = {100, 1000, 10000};

    std::vector<double> ln_m, ln_err;
    bool tails_ok = true;
    std::string tail_note;

    for (long m : ms) {
        const ExtractionParams params(0.25, 1.0, m);
        const GapTable gaps(params);
        const auto [w0, w1] = work_values(params);
        const double exact = finite_m_expected_work(0, params);

        const double p0 = 0.75, p1 = 0.25;
        std::vector<double> thresholds;
        for (double target : {1.0, 2.0, 4.0, 8.0})
            thresholds.push_back(std::sqrt(target * (2.0 * p0 - 1.0) * (2.0 * p0 - 1.0) /
                                           (p1 * p1 * static_cast<double>(m))));
        std::vector<long> counts(thresholds.size(), 0);

        double sum = 0.0;
        for (long c = 0; c < chains; ++c) {
            const double dw = run_round_finite_m(psi, psi, params, gaps, rng).delta_w;
            sum += dw;
            const double dev = std::abs(dw - exact);
            for (std::size_t i = 0; i < thresholds.size(); ++i)
                if (dev >= thresholds[i]) ++counts[i];
        }
        const double mean_err = std::abs(sum / static_cast<double>(chains) - w0);
        ln_m.push_back(std::log(static_cast<double>(m)));
        ln_err.push_back(std::log(mean_err));

        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            const double bound =
                std::min(1.0, 2.0 * std::exp(-p1 * p1 * thresholds[i] * thresholds[i] *
                                             static_cast<double>(m) /
                                             ((2.0 * p0 - 1.0) * (2.0 * p0 - 1.0))));
            const double nd = static_cast<double>(chains);
            const double allow = nd * bound + 3.0 * std::sqrt(nd * bound * (1.0 - bound));
            if (static_cast<double>(counts[i]) > allow) {
                tails_ok = false;
                tail_note += " tail violation at M=" + std::to_string(m) +
                             " eps'=" + fmt(thresholds[i]);
            }
        }
    }

    const double n = static_cast<double>(ln_m.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ln_m.size(); ++i) {
        sx += ln_m[i];
        sy += ln_err[i];
        sxx += ln_m[i] * ln_m[i];
        sxy += ln_m[i] * ln_err[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool slope_ok = slope >= -1.2 && slope <= -0.8;
    return {slope_ok && tails_ok,
            "mean-error slope " + fmt(slope) + " in [-1.2,-0.8]; Hoeffding tails " +
                (tails_ok ? "respected" : "violated:" + tail_note)};
}

// ---------------------------------------------------------------------------
// Criterion 3: branch distribution follows the Born rule.
std::pair<bool, std::string> criterion3() {
    Philox rng(0x5EC3);
    const long samples = 100000;
    double worst_sigma = 0.0;
    for (int pair = 0; pair < 20; ++pair) {
        const PureQubit psi = random_pure(rng);
        const PureQubit psi_k = random_pure(rng);
        const double p = fidelity(psi, psi_k);
        const ExtractionParams params(0.2, 1.0);
        long w0_hits = 0;
        for (long i = 0; i < samples; ++i)
            w0_hits += run_round_quasistatic(psi, psi_k, params, rng).branch == 0 ? 1 : 0;
        const double phat = static_cast<double>(w0_hits) / static_cast<double>(samples);
        const double se =
            std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(samples));
        worst_sigma = std::max(worst_sigma, std::abs(phat - p) / se);
    }
    return {worst_sigma <= 4.0,
            "20 state pairs, worst deviation " + fmt(worst_sigma) + " SE <= 4"};
}

// ---------------------------------------------------------------------------
// Criterion 4: dissipation-infidelity bound, zero violations.
std::pair<bool, std::string> criterion4() {
    Philox rng(0x5EC4);
    long violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const double eps = 1e-6 + (0.5 - 1e-6) * rng.next_double();
        const double infid = eps * rng.next_double();
        const PureQubit psi = random_pure(rng);
        const PureQubit psi_k = at_fidelity(psi, 1.0 - infid, rng);
        if (rel_entropy_pure_vs_target(psi, psi_k, eps) > rel_entropy_bound(eps))
            ++violations;
    }
    return {violations == 0,
            "10000 instances with infidelity <= eps <= 1/2, " +
                std::to_string(violations) + " violations"};
}

// ---------------------------------------------------------------------------
// Criteria 5 + 8 share the adaptive sweep and the two-phase grid.
struct ScalingData {
    std::vector<long> n_grid = {4096, 16384, 65536};
    std::vector<double> adaptive_diss_median;
    std::vector<double> adaptive_landauer_median;
    std::vector<double> twophase_medians; // at n = 65536, per alpha
    std::vector<double> alpha_grid = {0.01, 0.03, 0.1, 0.3};
    bool twophase_floor_ok = true;
    std::string floor_note;
};

ScalingData run_scaling_experiments() {
    ScalingData data;

    ExperimentConfig base;
    base.engine = EngineKind::ThermalQuasistatic;
    base.delta = 0.05;
    base.zeta = 1.0;
    base.c = 1.0;
    base.trials = 20;
    base.base_seed = 20260810;
    base.psi_mode = PsiMode::Haar;
    base.write_csv = false;
    base.out_dir.clear();

    for (long n : data.n_grid) {
        ExperimentConfig cfg = base;
        cfg.strategy = StrategyKind::Adaptive;
        cfg.n = n;
        const ExperimentResult r = run_experiment(cfg);
        std::vector<double> diss, land;
        for (const auto& tr : r.trials) {
            diss.push_back(tr.ledger.total_diss());
            land.push_back(tr.ledger.total_landauer());
        }
        data.adaptive_diss_median.push_back(quantile(diss, 0.5));
        data.adaptive_landauer_median.push_back(quantile(land, 0.5));
    }

    for (double alpha : data.alpha_grid) {
        ExperimentConfig cfg = base;
        cfg.strategy = StrategyKind::TwoPhase;
        cfg.n = 65536;
        cfg.alpha = alpha;
        const ExperimentResult r = run_experiment(cfg);
        std::vector<double> diss;
        const long learn = static_cast<long>(std::ceil(alpha * 65536.0));
        for (const auto& tr : r.trials) {
            diss.push_back(tr.ledger.total_diss());
            const double floor_val = static_cast<double>(learn) * std::log(2.0) / cfg.beta;
            const double at_learn = tr.ledger.diss_cum[learn - 1];
            if (std::abs(at_learn - floor_val) > 1e-12 * floor_val ||
                tr.ledger.total_diss() < floor_val * (1.0 - 1e-12)) {
                data.twophase_floor_ok = false;
                data.floor_note = "floor broken at alpha=" + fmt(alpha);
            }
        }
        data.twophase_medians.push_back(quantile(diss, 0.5));
    }
    return data;
}

std::pair<bool, std::string> criterion5(const ScalingData& data) {
    // (a) implied polylog constant stable within x2 across the N grid.
    std::vector<double> implied;
    for (std::size_t i = 0; i < data.n_grid.size(); ++i) {
        const double nd = static_cast<double>(data.n_grid[i]);
        implied.push_back(data.adaptive_diss_median[i] /
                          (std::log(nd / 0.05) * std::log(nd)));
    }
    const double lo = *std::min_element(implied.begin(), implied.end());
    const double hi = *std::max_element(implied.begin(), implied.end());
    const bool stable = hi <= 2.0 * lo;

    // (b) adaptive at N = 65536 at most half the best two-phase median.
    const double best_tp =
        *std::min_element(data.twophase_medians.begin(), data.twophase_medians.end());
    const double adaptive_big = data.adaptive_diss_median.back();
    const bool separated = adaptive_big <= 0.5 * best_tp;

    return {stable && separated,
            "implied constant " + fmt(lo) + ".." + fmt(hi) + " (ratio " + fmt(hi / lo) +
                " <= 2); adaptive " + fmt(adaptive_big) + " vs best two-phase " +
                fmt(best_tp) + " (need <= " + fmt(0.5 * best_tp) + ")"};
}

std::pair<bool, std::string> criterion6(const ScalingData& data) {
    return {data.twophase_floor_ok,
            data.twophase_floor_ok
                ? "learning-phase ledger identity ceil(alpha N) ln2 / beta held in all runs"
                : data.floor_note};
}

// ---------------------------------------------------------------------------
// Criterion 7: ladder-model suite.
std::pair<bool, std::string> criterion7() {
    for (long n : {0L, 1L, 2L, 5L, 31L, 1024L, 1000000L})
        for (double p = 0.0; p <= 1.0; p += 0.0625) {
            const auto probs = jc_outcome_probs(p, n);
            if (std::abs(probs[0] + probs[1] + probs[2] - 1.0) > 1e-12)
                return {false, "probability sum defect"};
        }

    Philox rng(0x5EC7);
    for (const auto& [p, n] :
         std::vector<std::pair<double, long>>{{0.85, 0L}, {0.6, 4L}, {0.3, 64L}}) {
        const PureQubit psi{BlochVector{0, 0, 1}};
        const PureQubit probe = at_fidelity(psi, p, rng);
        double sum = 0.0, sum2 = 0.0;
        const long rounds = 100000;
        for (long i = 0; i < rounds; ++i) {
            const double dw = jc_round(psi, probe, JcParams(1.0, n), rng).delta_w;
            sum += dw;
            sum2 += dw * dw;
        }
        const double mean = sum / rounds;
        const double se = std::sqrt((sum2 / rounds - mean * mean) / rounds);
        if (std::abs(mean - jc_expected_work(fidelity(psi, probe), n, 1.0)) > 4.0 * se)
            return {false, "MC mean off at p=" + fmt(p) + " n=" + std::to_string(n)};
    }

    ExperimentConfig cfg;
    cfg.engine = EngineKind::Jc;
    cfg.strategy = StrategyKind::Adaptive;
    cfg.n = 8192;
    cfg.trials = 5;
    cfg.omega = 1.3;
    cfg.base_seed = 7;
    cfg.write_csv = false;
    cfg.out_dir.clear();
    const ExperimentResult r = run_experiment(cfg);
    for (const auto& tr : r.trials)
        if (tr.ledger.total_diss() > 2.0 * cfg.omega * tr.ledger.total_regret() + 1e-9)
            return {false, "cumulative dissipation exceeded 2 omega regret"};

    return {true, "distribution sums, MC means within 4 SE, dissipation <= 2 omega regret"};
}

std::pair<bool, std::string> criterion8(const ScalingData& data) {
    for (int i = 1; i <= 1000; ++i) {
        const double eps = static_cast<double>(i) / 1000.0;
        if (landauer_round_sc(eps) > eps - eps * std::log(eps) + 1e-12)
            return {false, "h(eps) bound broken at eps=" + fmt(eps)};
    }
    std::vector<double> implied;
    for (std::size_t i = 0; i < data.n_grid.size(); ++i) {
        const double ln_n = std::log(static_cast<double>(data.n_grid[i]));
        implied.push_back(data.adaptive_landauer_median[i] / (ln_n * ln_n * ln_n));
    }
    const double lo = *std::min_element(implied.begin(), implied.end());
    const double hi = *std::max_element(implied.begin(), implied.end());
    return {hi <= 2.0 * lo,
            "entropy grid clean; ln^3 N implied constant " + fmt(lo) + ".." + fmt(hi) +
                " (ratio " + fmt(hi / lo) + " <= 2)"};
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical reruns.
std::pair<bool, std::string> criterion9() {
    namespace fs = std::filesystem;
    const auto read_all = [](const std::string& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };

    ExperimentConfig cfg;
    cfg.strategy = StrategyKind::Adaptive;
    cfg.engine = EngineKind::ThermalQuasistatic;
    cfg.n = 2048;
    cfg.trials = 4;
    cfg.base_seed = 99;
    cfg.out_dir = "acceptance_out/rerun_a";
    const ExperimentResult r1 = run_experiment(cfg);
    cfg.out_dir = "acceptance_out/rerun_b";
    const ExperimentResult r2 = run_experiment(cfg);

    const std::string a = read_all(r1.csv_path);
    const std::string b = read_all(r2.csv_path);
    const bool csv_ok = !a.empty() && a == b;
    const bool sum_ok = read_all(r1.summary_path) == read_all(r2.summary_path);
    const std::uint64_t h = fnv1a64(a);
    std::error_code ec;
    fs::remove_all("acceptance_out", ec);
    return {csv_ok && sum_ok,
            std::string("csv bytes ") + (csv_ok ? "identical" : "DIFFER") +
                ", summary " + (sum_ok ? "identical" : "DIFFER") + ", fnv1a64 " +
                std::to_string(h)};
}

} // namespace

int main() {
    run_criterion(1, criterion1);
    run_criterion(2, criterion2);
    run_criterion(3, criterion3);
    run_criterion(4, criterion4);

    ScalingData scaling;
    bool scaling_ready = false;
    try {
        const auto start = std::chrono::steady_clock::now();
        scaling = run_scaling_experiments();
        scaling_ready = true;
        std::printf("(scaling sweep: %.1fs)\n",
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count());
    } catch (const std::exception& e) {
        std::printf("(scaling sweep failed: %s)\n", e.what());
    }
    run_criterion(5, [&] {
        if (!scaling_ready) return std::make_pair(false, std::string("sweep failed"));
        return criterion5(scaling);
    });
    run_criterion(6, [&] {
        if (!scaling_ready) return std::make_pair(false, std::string("sweep failed"));
        return criterion6(scaling);
    });
    run_criterion(7, criterion7);
    run_criterion(8, [&] {
        if (!scaling_ready) return std::make_pair(false, std::string("sweep failed"));
        return criterion8(scaling);
    });
    run_criterion(9, criterion9);

    int failures = 0;
    for (const auto& c : g_results) failures += c.passed ? 0 : 1;
    std::printf("%d/%d criteria passed\n", static_cast<int>(g_results.size()) - failures,
                static_cast<int>(g_results.size()));
    return failures == 0 ? 0 : 1;
}
