#include "wex/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wex {

RoundIndex RoundIndex::from_round(long k, long t) {
    if (k < 1) throw std::domain_error("RoundIndex: k must be >= 1");
    const long q = k - 1;
    const long per_stage = 4 * t;
    return {k, q / per_stage + 1, static_cast<int>(q % 4 + 1),
            static_cast<int>(q % per_stage / 4 + 1)};
}

long RoundIndex::to_round(long t) const {
    return 4 * t * (stage - 1) + 4 * (slot - 1) + group;
}

std::array<BlochVector, 4> next_actions(const BlochVector& theta, const BlochVector& v1,
                                        const BlochVector& v2, double lambda_min) {
    const double step = 1.0 / std::sqrt(lambda_min);
    std::array<BlochVector, 4> out;
    for (int i = 1; i <= 4; ++i) {
        const BlochVector& v = i <= 2 ? v1 : v2;
        const double sign = i % 2 == 1 ? 1.0 : -1.0; // -(-1)^i
        BlochVector a = theta + v * (sign * step);
        out[i - 1] = a.norm() > 0.0 ? a.normalized() : theta;
    }
    return out;
}

BanditState::BanditState(double lambda0, long t, double zeta)
    : t_(t),
      zeta_(zeta),
      v_(Mat3::identity(lambda0)),
      sigma2_(1.0),
      weighted_sums_(static_cast<std::size_t>(t)),
      seen_(static_cast<std::size_t>(4 * t), false) {
    if (!(lambda0 > 0.0)) throw std::domain_error("BanditState: lambda0 must be positive");
    if (t < 1) throw std::domain_error("BanditState: t must be >= 1");
    if (!(zeta > 0.0)) throw std::domain_error("BanditState: zeta must be positive");
    const double h = 1.0 / std::sqrt(2.0);
    actions_ = {BlochVector{h, 0.0, h}, BlochVector{-h, 0.0, h}, BlochVector{0.0, h, h},
                BlochVector{0.0, -h, h}};
}

PureQubit BanditState::current_direction(const RoundIndex& idx) const {
    if (idx.stage != stage_) throw std::logic_error("current_direction: stage mismatch");
    if (idx.group < 1 || idx.group > 4 || idx.slot < 1 || idx.slot > t_)
        throw std::logic_error("current_direction: index out of range");
    return PureQubit{actions_[idx.group - 1]};
}

void BanditState::record_reward(const RoundIndex& idx, int reward) {
    if (idx.stage != stage_) throw std::logic_error("record_reward: stage mismatch");
    if (idx.group < 1 || idx.group > 4 || idx.slot < 1 || idx.slot > t_)
        throw std::logic_error("record_reward: index out of range");
    if (reward != 0 && reward != 1)
        throw std::logic_error("record_reward: reward must be a bit");
    const std::size_t cell = static_cast<std::size_t>((idx.slot - 1) * 4 + idx.group - 1);
    if (seen_[cell]) throw std::logic_error("record_reward: round replay");
    seen_[cell] = true;
    ++rewards_this_stage_;

    const double weight = static_cast<double>(2 * reward - 1) / sigma2_;
    BlochVector& s = weighted_sums_[static_cast<std::size_t>(idx.slot - 1)];
    s = s + actions_[idx.group - 1] * weight;
}

namespace {

// Lower median of an ascending-sorted sequence; zero for an empty one.
double lower_median(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

} // namespace

StageUpdate BanditState::close_stage() {
    if (!stage_complete()) throw std::logic_error("close_stage: stage not complete");

    for (const auto& a : actions_) v_.add_outer(a, 1.0 / sigma2_);

    const Mat3 v_inv = invert3(v_);
    std::vector<BlochVector> theta(static_cast<std::size_t>(t_));
    for (long j = 0; j < t_; ++j)
        theta[static_cast<std::size_t>(j)] =
            v_inv.mul(weighted_sums_[static_cast<std::size_t>(j)]);

    // Weighted median-of-means: pick the estimator whose median V-norm
    // distance to the others is smallest (lowest index on ties).
    std::size_t best = 0;
    double best_med = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < theta.size(); ++j) {
        std::vector<double> dists;
        dists.reserve(theta.size() - 1);
        for (std::size_t jp = 0; jp < theta.size(); ++jp) {
            if (jp == j) continue;
            const BlochVector d = theta[j] - theta[jp];
            dists.push_back(std::sqrt(std::max(0.0, v_.quad(d))));
        }
        const double med = lower_median(dists);
        if (med < best_med) {
            best_med = med;
            best = j;
        }
    }

    const BlochVector& selected = theta[best];
    BlochVector wmom;
    if (selected.norm() > 0.0) {
        wmom = selected.normalized();
    } else if (theta_wmom_) {
        wmom = *theta_wmom_;
    } else {
        wmom = {0.0, 0.0, 1.0};
    }
    theta_wmom_ = wmom;

    const EigenDecomposition eig = sym_eigen(v_);
    actions_ = next_actions(wmom, eig.vectors[0], eig.vectors[1], eig.values[0]);
    sigma2_ = 2.0 * zeta_ / std::sqrt(eig.values[2]);

    ++stage_;
    rewards_this_stage_ = 0;
    std::fill(seen_.begin(), seen_.end(), false);
    return {actions_, wmom};
}

} // namespace wex
