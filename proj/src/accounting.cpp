#include "wex/accounting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wex {

double eps_schedule(long k, const ScheduleParams& sp) {
    if (k < 1 || k > sp.n) throw std::domain_error("eps_schedule: k out of [1, N]");
    const double raw =
        sp.c * std::log(static_cast<double>(sp.n) / sp.delta) / static_cast<double>(k);
    return std::max(kEpsMin, std::min(raw, 0.5));
}

double dissipation_round(const PureQubit& psi, const PureQubit& psi_k, double eps,
                         double beta) {
    return rel_entropy_pure_vs_target(psi, psi_k, eps) / beta;
}

namespace {
double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
} // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p out of [0,1]");
    return -xlnx(p) - xlnx(1.0 - p);
}

double landauer_round_sc(double eps_k) { return binary_entropy(eps_k); }

double landauer_round_jc(double eps_k, double theta) {
    if (!(eps_k >= 0.0 && eps_k <= 1.0))
        throw std::domain_error("landauer_round_jc: eps out of [0,1]");
    if (!(theta >= 0.0 && theta <= 0.5 * M_PI + 1e-12))
        throw std::domain_error("landauer_round_jc: theta out of [0, pi/2]");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return binary_entropy(eps_k) - eps_k * (xlnx(c * c) + xlnx(s * s));
}

void Ledger::push(double eps, double fid, double diss_round, double regret_round,
                  double landauer_round) {
    if (diss_round < 0.0 || regret_round < 0.0 || landauer_round < 0.0)
        throw std::logic_error("Ledger: negative round entry");
    eps_k.push_back(eps);
    fidelity_k.push_back(fid);
    diss.push_back(diss_round);
    regret.push_back(regret_round);
    landauer.push_back(landauer_round);
    diss_cum.push_back(total_diss() + diss_round);
    regret_cum.push_back(total_regret() + regret_round);
    landauer_cum.push_back(total_landauer() + landauer_round);
}

LandauerCaseBound landauer_case_bound(const std::vector<double>& eps_sequence, double c,
                                      long n, double delta) {
    const double nd = static_cast<double>(n);
    const double limit = c * std::log(nd / delta) * std::log(nd);

    LandauerCaseBound out{};
    out.eps_sum = 0.0;
    out.xlogx_sum = 0.0;
    for (double e : eps_sequence) {
        out.eps_sum += e;
        out.xlogx_sum -= xlnx(e);
    }
    out.premise_holds = out.eps_sum <= limit;
    out.small_n_case = limit / nd > std::exp(-1.0);
    out.bound = out.small_n_case ? nd * std::exp(-1.0) : 2.0 * limit * std::log(nd / limit);
    out.ok = !out.premise_holds || out.xlogx_sum <= out.bound * (1.0 + 1e-12);
    return out;
}

namespace {

// Least squares y ~ a + b * f; returns (a, b, residual 2-norm).
struct LinFit {
    double a, b, resid;
};

LinFit fit_affine(const std::vector<double>& f, const std::vector<double>& y) {
    const auto n = static_cast<double>(f.size());
    double sf = 0.0, sy = 0.0, sff = 0.0, sfy = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        sf += f[i];
        sy += y[i];
        sff += f[i] * f[i];
        sfy += f[i] * y[i];
    }
    const double det = n * sff - sf * sf;
    const double b = (n * sfy - sf * sy) / det;
    const double a = (sy - b * sf) / n;
    double r2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = y[i] - (a + b * f[i]);
        r2 += r * r;
    }
    return {a, b, std::sqrt(r2)};
}

} // namespace

FitReport fit_scaling(const std::vector<std::pair<double, double>>& points, double delta) {
    if (points.size() < 3) throw std::domain_error("fit_scaling: need at least 3 points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].first > points[i - 1].first))
            throw std::domain_error("fit_scaling: N must be strictly increasing");

    std::vector<double> f_polylog, f_sqrt, w;
    FitReport rep;
    for (const auto& [nn, ww] : points) {
        const double ln_n = std::log(nn);
        f_polylog.push_back(ln_n * ln_n);
        f_sqrt.push_back(std::sqrt(nn));
        w.push_back(ww);
        rep.implied_polylog.push_back(ww / (std::log(nn / delta) * ln_n));
        rep.implied_sqrt.push_back(ww / std::sqrt(nn));
    }

    const LinFit p = fit_affine(f_polylog, w);
    const LinFit s = fit_affine(f_sqrt, w);
    rep.polylog_a = p.a;
    rep.polylog_b = p.b;
    rep.polylog_resid = p.resid;
    rep.sqrt_a = s.a;
    rep.sqrt_b = s.b;
    rep.sqrt_resid = s.resid;
    return rep;
}

} // namespace wex
