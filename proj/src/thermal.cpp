#include "wex/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace wex {

double gap_schedule(long tau, const ExtractionParams& params) {
    if (params.quasistatic())
        throw std::domain_error("gap_schedule: requires finite m_reps");
    const long m = params.m_reps;
    if (tau < 1 || tau > m) throw std::domain_error("gap_schedule: tau out of [1, M]");

    const double frac = static_cast<double>(tau) / static_cast<double>(m);
    const double numer = 1.0 - 0.5 * frac - (1.0 - frac) * params.eps;
    const double denom = 0.5 * frac + (1.0 - frac) * params.eps;
    if (!(numer > 0.0) || !(denom > 0.0))
        throw std::runtime_error("gap_schedule: nonpositive log argument");
    return std::log(numer / denom) / params.beta;
}

std::pair<double, double> work_values(const ExtractionParams& params) {
    const double ln2 = std::log(2.0);
    return {(ln2 + std::log(1.0 - params.eps)) / params.beta,
            (ln2 + std::log(params.eps)) / params.beta};
}

RoundOutcome run_round_quasistatic(const PureQubit& psi, const PureQubit& psi_k,
                                   const ExtractionParams& params, Philox& rng) {
    const double p = fidelity(psi, psi_k);
    const int branch = rng.bernoulli(p) ? 0 : 1;
    const auto [w0, w1] = work_values(params);
    return {branch == 0 ? w0 : w1, 1 - branch, branch};
}

GapTable::GapTable(const ExtractionParams& params) {
    if (params.quasistatic())
        throw std::domain_error("GapTable: requires finite m_reps");
    nu.resize(params.m_reps);
    for (long tau = 1; tau <= params.m_reps; ++tau)
        nu[tau - 1] = gap_schedule(tau, params);
}

RoundOutcome run_round_finite_m(const PureQubit& psi, const PureQubit& psi_k,
                                const ExtractionParams& params, const GapTable& gaps,
                                Philox& rng) {
    const long m = params.m_reps;
    if (m < 1) throw std::domain_error("run_round_finite_m: m_reps must be >= 1");

    // Pinch: off-diagonals of the input in the target eigenbasis do not
    // reach the battery statistics, so the branch can be drawn up front.
    const double p = fidelity(psi, psi_k);
    const int branch = rng.bernoulli(p) ? 0 : 1;

    const double delta_p = (0.5 - params.eps) / static_cast<double>(m);
    double dw = -static_cast<double>(branch) * gaps.nu[0];
    for (long tau = 1; tau < m; ++tau) {
        const double p1_tau = params.eps + static_cast<double>(tau) * delta_p;
        if (rng.bernoulli(p1_tau)) dw += gaps.nu[tau - 1] - gaps.nu[tau];
    }
    const double p1_m = params.eps + static_cast<double>(m) * delta_p;
    if (rng.bernoulli(p1_m)) dw += gaps.nu[m - 1];

    const auto [w0, w1] = work_values(params);
    const int reward = dw >= 0.5 * (w0 + w1) ? 1 : 0;
    return {dw, reward, branch};
}

RoundOutcome run_round_finite_m(const PureQubit& psi, const PureQubit& psi_k,
                                const ExtractionParams& params, Philox& rng) {
    const GapTable gaps(params);
    return run_round_finite_m(psi, psi_k, params, gaps, rng);
}

double finite_m_expected_work(int branch, const ExtractionParams& params) {
    const GapTable gaps(params);
    const long m = params.m_reps;
    const double delta_p = (0.5 - params.eps) / static_cast<double>(m);
    double ew = -static_cast<double>(branch) * gaps.nu[0];
    for (long tau = 1; tau < m; ++tau)
        ew += (params.eps + static_cast<double>(tau) * delta_p) *
              (gaps.nu[tau - 1] - gaps.nu[tau]);
    ew += (params.eps + static_cast<double>(m) * delta_p) * gaps.nu[m - 1];
    return ew;
}

double expected_work(const PureQubit& psi, const PureQubit& psi_k,
                     const ExtractionParams& params) {
    const double d = rel_entropy_pure_vs_target(psi, psi_k, params.eps);
    return (std::log(2.0) - d) / params.beta;
}

} // namespace wex
