#ifndef WEX_BLOCH_HPP
#define WEX_BLOCH_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wex {

/// Floor substituted for an accuracy of exactly zero wherever log(eps) appears.
inline constexpr double kEpsMin = 1e-12;

/// Tolerance for unit-norm checks on Bloch vectors.
inline constexpr double kUnitTol = 1e-9;

/// Bloch coordinates of a qubit state. Unit norm encodes a pure state,
/// norm <= 1 a mixed state. All entropies below are in nats.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }

    BlochVector normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("cannot normalize zero Bloch vector");
        return {x / n, y / n, z / n};
    }
};

/// Pure qubit state, held as a unit Bloch vector. Construction renormalizes
/// (eigenvector arithmetic drifts) but rejects inputs off the sphere by more
/// than kUnitTol.
class PureQubit {
public:
    explicit PureQubit(const BlochVector& u) {
        const double n = u.norm();
        if (std::abs(n - 1.0) > kUnitTol)
            throw std::domain_error("PureQubit requires a unit Bloch vector");
        u_ = {u.x / n, u.y / n, u.z / n};
    }

    const BlochVector& u() const { return u_; }

private:
    BlochVector u_;
};

/// Mixed qubit state, Bloch norm <= 1.
class MixedQubit {
public:
    explicit MixedQubit(const BlochVector& r) : r_(r) {
        const double n = r.norm();
        if (n > 1.0 + kUnitTol)
            throw std::domain_error("MixedQubit requires Bloch norm <= 1");
        if (n > 1.0) r_ = r * (1.0 / n);
    }

    const BlochVector& r() const { return r_; }

private:
    BlochVector r_;
};

/// |<psi|phi>|^2 = (1 + u.a)/2, clamped to [0,1] against rounding.
inline double fidelity(const PureQubit& psi, const PureQubit& phi) {
    const double f = 0.5 * (1.0 + psi.u().dot(phi.u()));
    return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

/// Depolarizing channel: Bloch vector contracts by (1 - eps). Callers that
/// want the hedged target for accuracy eps pass 2*eps here.
inline MixedQubit depolarize(const MixedQubit& rho, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::domain_error("depolarize: eps must lie in [0,1]");
    return MixedQubit{rho.r() * (1.0 - eps)};
}

/**
 * Relative entropy D(psi || (1-eps) psi_k + eps psi_k_perp) in nats.
 *
 * The target equals the depolarized state with parameter 2*eps, and for pure
 * psi the closed form is -[p ln(1-eps) + (1-p) ln(eps)] with p the fidelity.
 * At eps = 0 or 1 with mismatched states this returns +infinity.
 */
inline double rel_entropy_pure_vs_target(const PureQubit& psi, const PureQubit& psi_k,
                                         double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::domain_error("rel_entropy_pure_vs_target: eps must lie in [0,1]");
    const double p = fidelity(psi, psi_k);
    double acc = 0.0;
    if (p > 0.0) acc += p * std::log(1.0 - eps);
    if (p < 1.0) acc += (1.0 - p) * std::log(eps);
    return -acc;
}

/// Infidelity-to-relative-entropy bound 16 eps (2 - ln eps), the qubit case
/// of the depolarized-target bound; valid when infidelity <= eps <= 1/2.
inline double rel_entropy_bound(double eps) {
    if (!(eps > 0.0 && eps <= 0.5))
        throw std::domain_error("rel_entropy_bound: eps must lie in (0, 0.5]");
    return 16.0 * eps * (2.0 - std::log(eps));
}

} // namespace wex

#endif // WEX_BLOCH_HPP
