#include "wex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wex/accounting.hpp"
#include "wex/bloch.hpp"
#include "wex/experiment.hpp"
#include "wex/jc.hpp"
#include "wex/rng.hpp"
#include "wex/thermal.hpp"

namespace wex {

namespace {

PureQubit random_pure(Philox& rng) {
    const auto u = rng.unit_sphere();
    return PureQubit{BlochVector{u[0], u[1], u[2]}};
}

/// Unit vector at a prescribed fidelity from psi, rotated in a random
/// perpendicular direction.
PureQubit at_fidelity(const PureQubit& psi, double fid, Philox& rng) {
    const BlochVector u = psi.u();
    const double cos_angle = 2.0 * fid - 1.0;
    const double sin_angle = std::sqrt(std::max(0.0, 1.0 - cos_angle * cos_angle));

    // Orthonormal basis of the plane perpendicular to u.
    const BlochVector ref = std::abs(u.z) < 0.9 ? BlochVector{0, 0, 1} : BlochVector{1, 0, 0};
    BlochVector e1{u.y * ref.z - u.z * ref.y, u.z * ref.x - u.x * ref.z,
                   u.x * ref.y - u.y * ref.x};
    e1 = e1.normalized();
    const BlochVector e2{u.y * e1.z - u.z * e1.y, u.z * e1.x - u.x * e1.z,
                         u.x * e1.y - u.y * e1.x};
    const double phi = 2.0 * M_PI * rng.next_double();
    const BlochVector dir = e1 * std::cos(phi) + e2 * std::sin(phi);
    return PureQubit{u * cos_angle + dir * sin_angle};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

SuiteResult verify_mixture_identity(long cases, std::uint64_t seed,
                                    double w0_perturbation) {
    Philox rng(seed);
    double max_err = 0.0;
    std::string worst;
    for (long i = 0; i < cases; ++i) {
        const PureQubit psi = random_pure(rng);
        const PureQubit psi_k = random_pure(rng);
        const double eps = 1e-6 + (0.5 - 1e-6) * rng.next_double();
        const ExtractionParams params(eps, 1.0);
        const auto [w0, w1] = work_values(params);
        const double p = fidelity(psi, psi_k);
        const double mixture = p * (w0 + w0_perturbation) + (1.0 - p) * w1;
        const double err = std::abs(expected_work(psi, psi_k, params) - mixture);
        if (err > max_err) {
            max_err = err;
            worst = "eps=" + fmt(eps) + " p=" + fmt(p);
        }
    }
    const bool ok = max_err <= 1e-12;
    return {"mixture-identity", ok,
            "max |E[dW] - (p w0 + (1-p) w1)| = " + fmt(max_err) +
                (ok ? "" : " at " + worst)};
}

SuiteResult verify_finite_m_slope(long chains, std::uint64_t seed) {
    Philox rng(seed);
    const PureQubit psi{BlochVector{0.0, 0.0, 1.0}};
    const std::vector<long> ms = {100, 1000, 10000};

    std::vector<double> ln_m, ln_err;
    std::string detail;
    for (long m : ms) {
        const ExtractionParams params(0.25, 1.0, m);
        const GapTable gaps(params);
        const auto [w0, w1] = work_values(params);
        double sum = 0.0;
        for (long c = 0; c < chains; ++c)
            sum += run_round_finite_m(psi, psi, params, gaps, rng).delta_w;
        const double err = std::abs(sum / static_cast<double>(chains) - w0);
        ln_m.push_back(std::log(static_cast<double>(m)));
        ln_err.push_back(std::log(err));
        detail += "M=" + std::to_string(m) + ":" + fmt(err) + " ";
    }

    // Least-squares slope of ln(err) on ln(M).
    const double n = static_cast<double>(ln_m.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ln_m.size(); ++i) {
        sx += ln_m[i];
        sy += ln_err[i];
        sxx += ln_m[i] * ln_m[i];
        sxy += ln_m[i] * ln_err[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool ok = slope >= -1.2 && slope <= -0.8;
    return {"finite-m-slope", ok, "slope = " + fmt(slope) + " (" + detail + ")"};
}

SuiteResult verify_hoeffding_tail(long chains, std::uint64_t seed) {
    Philox rng(seed);
    const PureQubit psi{BlochVector{0.0, 0.0, 1.0}};
    const long m = 1000;
    const ExtractionParams params(0.25, 1.0, m);
    const GapTable gaps(params);
    const double expect = finite_m_expected_work(0, params);

    const double p0 = 1.0 - params.eps;
    const double p1 = params.eps;
    // Thresholds chosen so the bound is informative: exponents 1, 2, 4, 8.
    std::vector<double> thresholds;
    for (double target : {1.0, 2.0, 4.0, 8.0})
        thresholds.push_back(
            std::sqrt(target * (2.0 * p0 - 1.0) * (2.0 * p0 - 1.0) /
                      (p1 * p1 * static_cast<double>(m))));

    std::vector<long> counts(thresholds.size(), 0);
    for (long c = 0; c < chains; ++c) {
        const double dev =
            std::abs(run_round_finite_m(psi, psi, params, gaps, rng).delta_w - expect);
        for (std::size_t i = 0; i < thresholds.size(); ++i)
            if (dev >= thresholds[i]) ++counts[i];
    }

    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double bound = std::min(
            1.0, 2.0 * std::exp(-p1 * p1 * thresholds[i] * thresholds[i] *
                                static_cast<double>(m) /
                                ((2.0 * p0 - 1.0) * (2.0 * p0 - 1.0))));
        const double nd = static_cast<double>(chains);
        const double allowance = nd * bound + 3.0 * std::sqrt(nd * bound * (1.0 - bound));
        if (static_cast<double>(counts[i]) > allowance) {
            ok = false;
            detail += "violation at eps'=" + fmt(thresholds[i]) + " count=" +
                      std::to_string(counts[i]) + " allowance=" + fmt(allowance) + "; ";
        }
    }
    if (ok) detail = "all " + std::to_string(thresholds.size()) + " thresholds respected";
    return {"hoeffding-tail", ok, detail};
}

SuiteResult verify_rel_entropy_bound(long cases, std::uint64_t seed) {
    Philox rng(seed);
    long violations = 0;
    std::string worst;
    for (long i = 0; i < cases; ++i) {
        const double eps = 1e-6 + (0.5 - 1e-6) * rng.next_double();
        const double infid = eps * rng.next_double();
        const PureQubit psi = random_pure(rng);
        const PureQubit psi_k = at_fidelity(psi, 1.0 - infid, rng);
        const double d = rel_entropy_pure_vs_target(psi, psi_k, eps);
        if (d > rel_entropy_bound(eps)) {
            ++violations;
            worst = "eps=" + fmt(eps) + " infid=" + fmt(infid) + " D=" + fmt(d);
        }
    }
    const bool ok = violations == 0;
    return {"rel-entropy-bound", ok,
            ok ? std::to_string(cases) + " instances, no violation"
               : std::to_string(violations) + " violations, e.g. " + worst};
}

SuiteResult verify_jc_invariants(long rounds, std::uint64_t seed) {
    Philox rng(seed);

    // Outcome probabilities: nonnegative, summing to one.
    for (long n : {0L, 1L, 2L, 3L, 10L, 100L, 1000L, 1000000L}) {
        for (double p = 0.0; p <= 1.0; p += 0.125) {
            const auto probs = jc_outcome_probs(p, n);
            const double sum = probs[0] + probs[1] + probs[2];
            if (std::abs(sum - 1.0) > 1e-12 || probs[0] < 0 || probs[1] < 0 || probs[2] < 0)
                return {"jc-invariants", false,
                        "probability defect at n=" + std::to_string(n) + " p=" + fmt(p)};
        }
    }

    // Monte Carlo mean against the closed-form expectation, 4 SE.
    for (const auto& [p, n] : std::vector<std::pair<double, long>>{
             {0.9, 0L}, {0.5, 3L}, {0.25, 50L}}) {
        const PureQubit psi{BlochVector{0.0, 0.0, 1.0}};
        const PureQubit probe = at_fidelity(psi, p, rng);
        double sum = 0.0, sum2 = 0.0;
        for (long i = 0; i < rounds; ++i) {
            const double dw = jc_round(psi, probe, JcParams(1.0, n), rng).delta_w;
            sum += dw;
            sum2 += dw * dw;
        }
        const double nd = static_cast<double>(rounds);
        const double mean = sum / nd;
        const double var = std::max(0.0, sum2 / nd - mean * mean);
        const double se = std::sqrt(var / nd);
        const double expect = jc_expected_work(fidelity(psi, probe), n, 1.0);
        if (std::abs(mean - expect) > 4.0 * se + 1e-12)
            return {"jc-invariants", false,
                    "MC mean " + fmt(mean) + " vs " + fmt(expect) + " at p=" + fmt(p) +
                        " n=" + std::to_string(n)};
    }

    // Round dissipation against the 2 omega (1-p) cap.
    for (long n : {0L, 1L, 7L, 500L})
        for (double p = 0.0; p <= 1.0; p += 0.0625)
            if (jc_dissipation_round(p, n, 1.0) > 2.0 * (1.0 - p) + 1e-12)
                return {"jc-invariants", false, "dissipation cap broken"};

    // Cumulative bound on a short adaptive run.
    ExperimentConfig cfg;
    cfg.engine = EngineKind::Jc;
    cfg.strategy = StrategyKind::Adaptive;
    cfg.n = 4096;
    cfg.trials = 3;
    cfg.base_seed = seed;
    cfg.out_dir.clear();
    cfg.write_csv = false;
    const ExperimentResult r = run_experiment(cfg);
    for (const auto& tr : r.trials)
        if (tr.ledger.total_diss() >
            2.0 * cfg.omega * tr.ledger.total_regret() * (1.0 + 1e-12) + 1e-12)
            return {"jc-invariants", false, "cumulative dissipation-regret bound broken"};

    return {"jc-invariants", true, "distribution, MC mean, and dissipation bounds hold"};
}

SuiteResult verify_landauer_bounds(long grid_points) {
    for (long i = 1; i <= grid_points; ++i) {
        const double eps = static_cast<double>(i) / static_cast<double>(grid_points);
        if (landauer_round_sc(eps) > eps - eps * std::log(eps) + 1e-12)
            return {"landauer-bounds", false, "h(eps) bound broken at eps=" + fmt(eps)};
        if (std::abs(landauer_round_jc(eps, 0.0) - landauer_round_sc(eps)) > 1e-12)
            return {"landauer-bounds", false, "theta=0 reduction broken at eps=" + fmt(eps)};
        if (landauer_round_jc(eps, M_PI / 3.0) > 2.0 * eps - eps * std::log(eps) + 1e-12)
            return {"landauer-bounds", false,
                    "three-outcome bound broken at eps=" + fmt(eps)};
    }
    return {"landauer-bounds", true, std::to_string(grid_points) + "-point grid clean"};
}

int run_verify(std::ostream& os) {
    const std::vector<SuiteResult> results = {
        verify_mixture_identity(10000, 0xA11CE),
        verify_finite_m_slope(100000, 0xB0B),
        verify_hoeffding_tail(100000, 0xC0FFEE),
        verify_rel_entropy_bound(10000, 0xD1CE),
        verify_jc_invariants(100000, 0xE66),
        verify_landauer_bounds(1000),
    };
    bool all = true;
    for (const auto& r : results) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        all = all && r.passed;
    }
    os << (all ? "verification passed" : "verification FAILED") << "\n";
    return all ? 0 : 2;
}

} // namespace wex
