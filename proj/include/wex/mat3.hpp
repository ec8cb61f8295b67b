#ifndef WEX_MAT3_HPP
#define WEX_MAT3_HPP

#include <array>

#include "wex/bloch.hpp"

namespace wex {

/// Dense 3x3 real matrix. Only symmetric matrices are used here, but the
/// storage is general.
struct Mat3 {
    // m[row][col]
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity(double scale = 1.0);

    double operator()(int r, int c) const { return m[r][c]; }
    double& operator()(int r, int c) { return m[r][c]; }

    Mat3 operator+(const Mat3& o) const;

    /// this += w * v v^T
    void add_outer(const BlochVector& v, double w);

    BlochVector mul(const BlochVector& v) const;

    /// Quadratic form x^T A x.
    double quad(const BlochVector& x) const;

    double max_abs_offdiag() const;
};

/// Closed-form inverse via the adjugate. Throws std::domain_error on a
/// (near-)singular matrix; never happens for SPD design matrices.
Mat3 invert3(const Mat3& a);

struct EigenDecomposition {
    std::array<double, 3> values;       // ascending
    std::array<BlochVector, 3> vectors; // matching order, unit norm
};

/**
 * Eigendecomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.
 *
 * Deterministic ordering: eigenvalues ascending; each eigenvector's sign is
 * fixed so its first nonzero component is positive; exact eigenvalue ties are
 * ordered by lexicographically descending sign-fixed eigenvectors (so
 * diag(2,2,3) yields v1 = e_x, v2 = e_y).
 */
EigenDecomposition sym_eigen(const Mat3& a);

} // namespace wex

#endif // WEX_MAT3_HPP
