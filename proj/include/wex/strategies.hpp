#ifndef WEX_STRATEGIES_HPP
#define WEX_STRATEGIES_HPP

#include <memory>

#include "wex/accounting.hpp"
#include "wex/bandit.hpp"
#include "wex/bloch.hpp"

namespace wex {

/// What a strategy asks the engine to do at round k. stage/group/slot are the
/// bandit round labels; zero for strategies without stage structure.
struct Proposal {
    BlochVector psi_k;
    double eps_k;
    long stage = 0;
    int group = 0;
    int slot = 0;
};

/// Round-selection policy: maps round index to a probe direction and an
/// accuracy, and consumes the engine's binary rewards. propose is pure;
/// observe must be called once per round in order.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual Proposal propose(long k) const = 0;
    virtual void observe(long k, int reward) = 0;
    virtual const char* name() const = 0;
};

/// State-aware optimum: always the true direction at the accuracy floor.
class OracleStrategy final : public Strategy {
public:
    explicit OracleStrategy(const PureQubit& psi) : psi_(psi) {}
    Proposal propose(long k) const override;
    void observe(long k, int reward) override;
    const char* name() const override { return "oracle"; }

private:
    PureQubit psi_;
    long next_k_ = 1;
};

/// Scripted constant probe (+z at eps = 1/2); every round extracts zero
/// expected work and dissipates exactly ln(2)/beta. Test instrumentation.
class ScriptedHalfStrategy final : public Strategy {
public:
    Proposal propose(long k) const override;
    void observe(long k, int reward) override;
    const char* name() const override { return "scripted-half"; }

private:
    long next_k_ = 1;
};

/**
 * Tomography-then-extraction baseline. The first ceil(alpha N) rounds probe
 * the +x/+y/+z axes cyclically at eps = 1/2 (a plain Born measurement that
 * extracts nothing); the reward tallies then freeze an estimate
 * u_hat = normalize(2 mean(r) - 1 per axis) and a fixed accuracy
 * eps_hat = clamp(c_tp ln(6/delta) / (alpha N)) used for every remaining
 * round.
 */
class TwoPhaseStrategy final : public Strategy {
public:
    TwoPhaseStrategy(double alpha, long n, double delta, double c_tp);

    Proposal propose(long k) const override;
    void observe(long k, int reward) override;
    const char* name() const override { return "twophase"; }

    long learning_rounds() const { return learn_rounds_; }
    bool frozen() const { return frozen_; }
    const BlochVector& estimate() const { return u_hat_; }
    double eps_hat() const { return eps_hat_; }

private:
    void freeze();

    double alpha_;
    long n_;
    double delta_;
    double c_tp_;
    long learn_rounds_;
    std::array<long, 3> axis_count_{};
    std::array<long, 3> axis_reward_sum_{};
    bool frozen_ = false;
    BlochVector u_hat_{0.0, 0.0, 1.0};
    double eps_hat_ = 0.5;
    long next_k_ = 1;
};

/// Stage layout for the adaptive strategy: t = ceil(24 ln(stages/delta)),
/// with the largest stage count satisfying 4 t stages <= N. Rounds beyond the
/// last full stage replay the freshest actions and their rewards are dropped.
struct AdaptivePlan {
    long t;
    long stages;
    long leftover;
};

AdaptivePlan plan_stages(long n, double delta);

/**
 * Bandit-driven policy: probe directions from the stage-structured bandit,
 * accuracies from the eps schedule. When delta equals 1/N the schedule
 * numerator drops to C ln N (the in-expectation guarantee); otherwise it is
 * C ln(N/delta).
 */
class AdaptiveStrategy final : public Strategy {
public:
    AdaptiveStrategy(long n, double delta, double c, double lambda0, double zeta);

    Proposal propose(long k) const override;
    void observe(long k, int reward) override;
    const char* name() const override { return "adaptive"; }

    const AdaptivePlan& plan() const { return plan_; }
    const BanditState& bandit() const { return bandit_; }
    double eps_at(long k) const;

private:
    RoundIndex label(long k) const;

    long n_;
    AdaptivePlan plan_;
    double eps_numerator_;
    BanditState bandit_;
    long next_k_ = 1;
};

} // namespace wex

#endif // WEX_STRATEGIES_HPP
