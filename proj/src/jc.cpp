#include "wex/jc.hpp"

#include <cmath>
#include <stdexcept>

namespace wex {

double jc_theta(long n) {
    if (n < 0) throw std::domain_error("jc_theta: n must be >= 0");
    const double x = static_cast<double>(n);
    return 0.5 * M_PI * std::sqrt(x / (x + 1.0));
}

std::array<double, 3> jc_outcome_probs(double p, long n) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("jc_outcome_probs: p out of [0,1]");
    const double s = std::sin(jc_theta(n));
    const double sin2 = s * s;
    return {p, (1.0 - p) * (1.0 - sin2), (1.0 - p) * sin2};
}

JcOutcome jc_round(const PureQubit& psi, const PureQubit& psi_k, const JcParams& params,
                   Philox& rng) {
    const double p = fidelity(psi, psi_k);
    const auto probs = jc_outcome_probs(p, params.n);
    const double u = rng.next_double();

    long n_next;
    if (u < probs[0]) {
        n_next = params.n + 1;
    } else if (u < probs[0] + probs[1]) {
        n_next = params.n;
    } else {
        n_next = params.n - 1; // unreachable at n = 0 where probs[2] == 0
    }
    const double dw = params.omega * static_cast<double>(n_next - params.n);
    return {n_next, dw, n_next == params.n + 1 ? 1 : 0};
}

double jc_expected_work(double p, long n, double omega) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("jc_expected_work: p out of [0,1]");
    const double s = std::sin(jc_theta(n));
    const double sin2 = s * s;
    return omega * (p * (1.0 + sin2) - sin2);
}

double jc_dissipation_round(double p, long n, double omega) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("jc_dissipation_round: p out of [0,1]");
    const double s = std::sin(jc_theta(n));
    return omega * (1.0 + s * s) * (1.0 - p);
}

} // namespace wex
