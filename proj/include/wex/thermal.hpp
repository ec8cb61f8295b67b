#ifndef WEX_THERMAL_HPP
#define WEX_THERMAL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "wex/bloch.hpp"
#include "wex/rng.hpp"

namespace wex {

/**
 * Parameters of one extraction round against the hedged target
 * (1-eps)|psi_k><psi_k| + eps|psi_k_perp><psi_k_perp|.
 *
 * m_reps is the number of swap repetitions; kQuasiStatic selects the
 * analytic infinite-repetition limit.
 */
struct ExtractionParams {
    static constexpr long kQuasiStatic = 0;

    double eps;
    double beta;
    long m_reps = kQuasiStatic;

    ExtractionParams(double eps_, double beta_, long m_reps_ = kQuasiStatic)
        : eps(eps_), beta(beta_), m_reps(m_reps_) {
        if (!(eps >= kEpsMin && eps <= 0.5))
            throw std::domain_error("ExtractionParams: eps must lie in [eps_min, 0.5]");
        if (!(beta > 0.0)) throw std::domain_error("ExtractionParams: beta must be positive");
        if (m_reps < 0) throw std::domain_error("ExtractionParams: m_reps must be >= 0");
    }

    bool quasistatic() const { return m_reps == kQuasiStatic; }
};

/// Outcome of a single extraction round. In the quasi-static limit delta_w
/// equals one of the two work values exactly; branch records which eigenstate
/// of the target fired.
struct RoundOutcome {
    double delta_w;
    int reward;
    int branch;
};

/// Running battery energy; mu is the exact sum of deposited work increments.
struct BatteryLedger {
    double mu = 0.0;
    std::vector<double> history;

    void deposit(double delta_w) {
        mu += delta_w;
        history.push_back(delta_w);
    }
};

/**
 * Reservoir gap at repetition tau:
 *   nu(tau, eps) = beta^-1 ln[(1 - tau/2M - (1 - tau/M) eps) /
 *                             (tau/2M + (1 - tau/M) eps)],
 * equivalently beta^-1 ln(p0_tau / p1_tau) with p0 = 1 - eps and
 * p_i,tau = p_i -(-1)^i tau (p0 - 1/2)/M. Requires finite m_reps.
 */
double gap_schedule(long tau, const ExtractionParams& params);

/// Quasi-static per-branch work values:
///   w0 = beta^-1 (ln 2 + ln(1-eps)),  w1 = beta^-1 (ln 2 + ln eps).
std::pair<double, double> work_values(const ExtractionParams& params);

/// Infinite-M round: branch drawn by Born weight, delta_w = w_branch,
/// reward = 1 - branch.
RoundOutcome run_round_quasistatic(const PureQubit& psi, const PureQubit& psi_k,
                                   const ExtractionParams& params, Philox& rng);

/// Precomputed gap values nu(1..M) for one (eps, M) pair; reusable across
/// chains with the same parameters.
struct GapTable {
    explicit GapTable(const ExtractionParams& params);
    std::vector<double> nu; // nu[tau-1]
};

/**
 * Finite-M stochastic swap chain. The initial pinch draws branch i by Born
 * weight; the chain then samples independent bits x_tau ~ Bernoulli(p1_tau)
 * and accumulates
 *   dW = -i nu(1) + sum_{tau<M} x_tau (nu(tau) - nu(tau+1)) + x_M nu(M).
 * Reward is 1 when dW >= (w0+w1)/2 with the quasi-static work values.
 */
RoundOutcome run_round_finite_m(const PureQubit& psi, const PureQubit& psi_k,
                                const ExtractionParams& params, const GapTable& gaps,
                                Philox& rng);

RoundOutcome run_round_finite_m(const PureQubit& psi, const PureQubit& psi_k,
                                const ExtractionParams& params, Philox& rng);

/// Exact finite-M expectation of delta_w conditioned on branch i; used by
/// convergence checks (no sampling involved).
double finite_m_expected_work(int branch, const ExtractionParams& params);

/// Expected round work beta^-1 [ln 2 - D(psi || target)]; equals the Born
/// mixture p w0 + (1-p) w1.
double expected_work(const PureQubit& psi, const PureQubit& psi_k,
                     const ExtractionParams& params);

} // namespace wex

#endif // WEX_THERMAL_HPP
