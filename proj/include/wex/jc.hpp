#ifndef WEX_JC_HPP
#define WEX_JC_HPP

#include <array>

#include "wex/bloch.hpp"
#include "wex/rng.hpp"

namespace wex {

/// Level splitting and current battery occupation for one Jaynes-Cummings
/// round. The interaction time is absorbed analytically: rounds are sampled
/// at the closed-form outcome distribution.
struct JcParams {
    double omega;
    long n;

    JcParams(double omega_, long n_) : omega(omega_), n(n_) {
        if (!(omega > 0.0)) throw std::domain_error("JcParams: omega must be positive");
        if (n < 0) throw std::domain_error("JcParams: n must be >= 0");
    }
};

struct JcOutcome {
    long n_next;
    double delta_w;
    int reward;
};

/// theta = (pi/2) sqrt(n/(n+1)); 0 at n = 0, approaching pi/2 from below.
double jc_theta(long n);

/// Outcome probabilities for (n+1, n, n-1) given fidelity p and occupation n.
/// Sums to one; the n-1 slot is exactly zero at n = 0.
std::array<double, 3> jc_outcome_probs(double p, long n);

/// One battery transition: n+1 w.p. p, n w.p. (1-p)cos^2(theta),
/// n-1 w.p. (1-p)sin^2(theta). delta_w = omega (n_next - n); reward flags
/// the +1 outcome.
JcOutcome jc_round(const PureQubit& psi, const PureQubit& psi_k, const JcParams& params,
                   Philox& rng);

/// E[delta_w] = omega (p (1 + sin^2 theta) - sin^2 theta); maximum omega at p = 1.
double jc_expected_work(double p, long n, double omega);

/// Round dissipation omega (1 + sin^2 theta)(1 - p), bounded by 2 omega (1-p).
double jc_dissipation_round(double p, long n, double omega);

} // namespace wex

#endif // WEX_JC_HPP
