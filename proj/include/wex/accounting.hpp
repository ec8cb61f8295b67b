#ifndef WEX_ACCOUNTING_HPP
#define WEX_ACCOUNTING_HPP

#include <cstdint>
#include <vector>

#include "wex/bloch.hpp"

namespace wex {

/// Accuracy schedule eps_k = min{C ln(N/delta)/k, 1/2}, floored at kEpsMin.
struct ScheduleParams {
    double c;
    long n;
    double delta;

    ScheduleParams(double c_, long n_, double delta_) : c(c_), n(n_), delta(delta_) {
        if (!(c > 0.0)) throw std::domain_error("ScheduleParams: C must be positive");
        if (n_ < 1) throw std::domain_error("ScheduleParams: N must be >= 1");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::domain_error("ScheduleParams: delta must lie in (0,1)");
    }
};

double eps_schedule(long k, const ScheduleParams& sp);

/// Round dissipation beta^-1 D(psi || depolarized target), in energy units.
double dissipation_round(const PureQubit& psi, const PureQubit& psi_k, double eps,
                         double beta);

/// Binary entropy h(p) in nats, with 0 ln 0 := 0.
double binary_entropy(double p);

/// Memory-register entropy per round in the swap-chain model: h(eps_k).
/// Upper bounded by eps - eps ln eps.
double landauer_round_sc(double eps_k);

/// Three-outcome register entropy in the Jaynes-Cummings model:
/// h(eps) + eps * h2(cos^2 theta), theta in [0, pi/2].
double landauer_round_jc(double eps_k, double theta);

/**
 * Per-round dissipation/regret/erasure ledger. Cumulative sequences are exact
 * prefix sums of the round entries; all entries are nonnegative.
 */
struct Ledger {
    std::vector<double> eps_k;
    std::vector<double> fidelity_k;
    std::vector<double> diss;
    std::vector<double> regret;
    std::vector<double> landauer;
    std::vector<double> diss_cum;
    std::vector<double> regret_cum;
    std::vector<double> landauer_cum;

    void push(double eps, double fid, double diss_round, double regret_round,
              double landauer_round);

    long rounds() const { return static_cast<long>(diss.size()); }
    double total_diss() const { return diss_cum.empty() ? 0.0 : diss_cum.back(); }
    double total_regret() const { return regret_cum.empty() ? 0.0 : regret_cum.back(); }
    double total_landauer() const {
        return landauer_cum.empty() ? 0.0 : landauer_cum.back();
    }
};

/// Post-hoc check of the cumulative-erasure case analysis: when
/// sum(eps_k) <= L with L = C ln(N/delta) ln N, then sum(-eps_k ln eps_k) is
/// bounded by 2 L ln(N/L) (large-N case) or N/e (small-N case).
struct LandauerCaseBound {
    bool premise_holds;
    bool small_n_case;
    double eps_sum;
    double xlogx_sum;
    double bound;
    bool ok;
};

LandauerCaseBound landauer_case_bound(const std::vector<double>& eps_sequence, double c,
                                      long n, double delta);

/// Least-squares fits of W against a + b ln^2 N and a + b sqrt(N), with
/// residual norms and per-point implied constants.
struct FitReport {
    double polylog_a = 0.0;
    double polylog_b = 0.0;
    double polylog_resid = 0.0;
    double sqrt_a = 0.0;
    double sqrt_b = 0.0;
    double sqrt_resid = 0.0;
    std::vector<double> implied_polylog; // W / (ln(N/delta) ln N)
    std::vector<double> implied_sqrt;    // W / sqrt(N)
};

FitReport fit_scaling(const std::vector<std::pair<double, double>>& points, double delta);

} // namespace wex

#endif // WEX_ACCOUNTING_HPP
