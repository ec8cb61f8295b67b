#include "wex/mat3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wex {

Mat3 Mat3::identity(double scale) {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = scale;
    return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
    return r;
}

void Mat3::add_outer(const BlochVector& v, double w) {
    const double c[3] = {v.x, v.y, v.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] += w * c[i] * c[j];
}

BlochVector Mat3::mul(const BlochVector& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

double Mat3::quad(const BlochVector& x) const {
    return x.dot(mul(x));
}

double Mat3::max_abs_offdiag() const {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) r = std::max(r, std::abs(m[i][j]));
    return r;
}

Mat3 invert3(const Mat3& a) {
    const auto& v = a.m;
    const double c00 = v[1][1] * v[2][2] - v[1][2] * v[2][1];
    const double c01 = v[1][2] * v[2][0] - v[1][0] * v[2][2];
    const double c02 = v[1][0] * v[2][1] - v[1][1] * v[2][0];
    const double det = v[0][0] * c00 + v[0][1] * c01 + v[0][2] * c02;
    if (std::abs(det) < 1e-300) throw std::domain_error("invert3: singular matrix");
    const double inv = 1.0 / det;

    Mat3 r;
    r.m[0][0] = c00 * inv;
    r.m[0][1] = (v[0][2] * v[2][1] - v[0][1] * v[2][2]) * inv;
    r.m[0][2] = (v[0][1] * v[1][2] - v[0][2] * v[1][1]) * inv;
    r.m[1][0] = c01 * inv;
    r.m[1][1] = (v[0][0] * v[2][2] - v[0][2] * v[2][0]) * inv;
    r.m[1][2] = (v[0][2] * v[1][0] - v[0][0] * v[1][2]) * inv;
    r.m[2][0] = c02 * inv;
    r.m[2][1] = (v[0][1] * v[2][0] - v[0][0] * v[2][1]) * inv;
    r.m[2][2] = (v[0][0] * v[1][1] - v[0][1] * v[1][0]) * inv;
    return r;
}

namespace {

BlochVector column(const std::array<std::array<double, 3>, 3>& q, int c) {
    return {q[0][c], q[1][c], q[2][c]};
}

BlochVector sign_fixed(BlochVector v) {
    const double comp[3] = {v.x, v.y, v.z};
    for (double c : comp) {
        if (c != 0.0) {
            if (c < 0.0) v = v * -1.0;
            break;
        }
    }
    return v;
}

bool lex_greater(const BlochVector& a, const BlochVector& b) {
    if (a.x != b.x) return a.x > b.x;
    if (a.y != b.y) return a.y > b.y;
    return a.z > b.z;
}

} // namespace

EigenDecomposition sym_eigen(const Mat3& a) {
    // Cyclic Jacobi; converges to machine precision in a handful of sweeps
    // for 3x3 symmetric input.
    std::array<std::array<double, 3>, 3> d = a.m;
    std::array<std::array<double, 3>, 3> q{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(d[i][j]));
    if (scale == 0.0) scale = 1.0;
    const double tol = 1e-15 * scale;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::max({std::abs(d[0][1]), std::abs(d[0][2]), std::abs(d[1][2])});
        if (off <= tol) break;
        for (int p = 0; p < 2; ++p) {
            for (int r = p + 1; r < 3; ++r) {
                if (std::abs(d[p][r]) <= tol) continue;
                const double theta = (d[r][r] - d[p][p]) / (2.0 * d[p][r]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double dkp = d[k][p], dkr = d[k][r];
                    d[k][p] = c * dkp - s * dkr;
                    d[k][r] = s * dkp + c * dkr;
                }
                for (int k = 0; k < 3; ++k) {
                    const double dpk = d[p][k], drk = d[r][k];
                    d[p][k] = c * dpk - s * drk;
                    d[r][k] = s * dpk + c * drk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double qkp = q[k][p], qkr = q[k][r];
                    q[k][p] = c * qkp - s * qkr;
                    q[k][r] = s * qkp + c * qkr;
                }
            }
        }
    }

    std::array<int, 3> idx = {0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return d[i][i] < d[j][j]; });

    EigenDecomposition out;
    for (int i = 0; i < 3; ++i) {
        out.values[i] = d[idx[i]][idx[i]];
        out.vectors[i] = sign_fixed(column(q, idx[i]).normalized());
    }

    // Deterministic order inside exact ties.
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < 2; ++i) {
            if (out.values[i] == out.values[i + 1] &&
                lex_greater(out.vectors[i + 1], out.vectors[i])) {
                std::swap(out.values[i], out.values[i + 1]);
                std::swap(out.vectors[i], out.vectors[i + 1]);
            }
        }
    }
    return out;
}

} // namespace wex
