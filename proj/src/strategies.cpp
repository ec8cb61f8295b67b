#include "wex/strategies.hpp"

#include <cmath>
#include <stdexcept>

namespace wex {

namespace {

void check_observe_order(long& next_k, long k) {
    if (k != next_k) throw std::logic_error("observe: rounds must arrive once, in order");
    ++next_k;
}

} // namespace

Proposal OracleStrategy::propose(long k) const {
    (void)k;
    return {psi_.u(), kEpsMin};
}

void OracleStrategy::observe(long k, int reward) {
    (void)reward;
    check_observe_order(next_k_, k);
}

Proposal ScriptedHalfStrategy::propose(long k) const {
    (void)k;
    return {BlochVector{0.0, 0.0, 1.0}, 0.5};
}

void ScriptedHalfStrategy::observe(long k, int reward) {
    (void)reward;
    check_observe_order(next_k_, k);
}

TwoPhaseStrategy::TwoPhaseStrategy(double alpha, long n, double delta, double c_tp)
    : alpha_(alpha), n_(n), delta_(delta), c_tp_(c_tp) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("TwoPhaseStrategy: alpha must lie in (0,1)");
    if (n < 1) throw std::domain_error("TwoPhaseStrategy: N must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("TwoPhaseStrategy: delta must lie in (0,1)");
    if (!(c_tp > 0.0)) throw std::domain_error("TwoPhaseStrategy: c_tp must be positive");
    learn_rounds_ = std::min<long>(n, static_cast<long>(std::ceil(alpha * static_cast<double>(n))));
}

Proposal TwoPhaseStrategy::propose(long k) const {
    if (k < 1 || k > n_) throw std::domain_error("propose: k out of [1, N]");
    if (k <= learn_rounds_) {
        static constexpr BlochVector kAxes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        return {kAxes[(k - 1) % 3], 0.5};
    }
    return {u_hat_, eps_hat_};
}

void TwoPhaseStrategy::observe(long k, int reward) {
    check_observe_order(next_k_, k);
    if (k > learn_rounds_) return;
    const auto axis = static_cast<std::size_t>((k - 1) % 3);
    axis_count_[axis] += 1;
    axis_reward_sum_[axis] += reward;
    if (k == learn_rounds_) freeze();
}

void TwoPhaseStrategy::freeze() {
    BlochVector u{0.0, 0.0, 0.0};
    double* comps[3] = {&u.x, &u.y, &u.z};
    for (std::size_t a = 0; a < 3; ++a) {
        if (axis_count_[a] > 0)
            *comps[a] = 2.0 * static_cast<double>(axis_reward_sum_[a]) /
                            static_cast<double>(axis_count_[a]) -
                        1.0;
    }
    u_hat_ = u.norm() > 0.0 ? u.normalized() : BlochVector{0.0, 0.0, 1.0};

    const double raw =
        c_tp_ * std::log(6.0 / delta_) / (alpha_ * static_cast<double>(n_));
    eps_hat_ = std::max(kEpsMin, std::min(raw, 0.5));
    frozen_ = true;
}

AdaptivePlan plan_stages(long n, double delta) {
    if (n < 1) throw std::domain_error("plan_stages: N must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("plan_stages: delta must lie in (0,1)");

    const auto t_for = [delta](long stages) {
        return static_cast<long>(
            std::ceil(24.0 * std::log(static_cast<double>(stages) / delta)));
    };

    long best = 0;
    for (long stages = 1; 4 * t_for(stages) * stages <= n; ++stages) best = stages;

    AdaptivePlan plan{};
    plan.stages = best;
    plan.t = t_for(best > 0 ? best : 1);
    plan.leftover = n - 4 * plan.t * plan.stages;
    return plan;
}

AdaptiveStrategy::AdaptiveStrategy(long n, double delta, double c, double lambda0,
                                   double zeta)
    : n_(n),
      plan_(plan_stages(n, delta)),
      bandit_(lambda0, plan_.t, zeta) {
    const double nd = static_cast<double>(n);
    const bool expectation_mode = std::abs(delta * nd - 1.0) <= 1e-12;
    eps_numerator_ = expectation_mode ? c * std::log(nd) : c * std::log(nd / delta);
}

double AdaptiveStrategy::eps_at(long k) const {
    return std::max(kEpsMin, std::min(eps_numerator_ / static_cast<double>(k), 0.5));
}

RoundIndex AdaptiveStrategy::label(long k) const {
    const long full = 4 * plan_.t * plan_.stages;
    if (k <= full) return RoundIndex::from_round(k, plan_.t);
    // Leftover tail: replay the freshest actions under the next stage label.
    const long r = k - full - 1;
    return {k, plan_.stages + 1, static_cast<int>(r % 4 + 1),
            static_cast<int>(r / 4 % plan_.t + 1)};
}

Proposal AdaptiveStrategy::propose(long k) const {
    if (k < 1 || k > n_) throw std::domain_error("propose: k out of [1, N]");
    const RoundIndex idx = label(k);
    return {bandit_.current_direction(idx).u(), eps_at(k), idx.stage, idx.group, idx.slot};
}

void AdaptiveStrategy::observe(long k, int reward) {
    check_observe_order(next_k_, k);
    const long full = 4 * plan_.t * plan_.stages;
    if (k > full) return; // leftover rewards are dropped
    bandit_.record_reward(label(k), reward);
    if (bandit_.stage_complete()) bandit_.close_stage();
}

} // namespace wex
