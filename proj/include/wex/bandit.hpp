#ifndef WEX_BANDIT_HPP
#define WEX_BANDIT_HPP

#include <array>
#include <optional>
#include <vector>

#include "wex/bloch.hpp"
#include "wex/mat3.hpp"

namespace wex {

/**
 * Stage-structured round label. Round k (1-based) decomposes uniquely as
 *   k = 4t(stage-1) + 4(slot-1) + group,
 * with group in {1..4} and slot in {1..t}.
 */
struct RoundIndex {
    long k;
    long stage;
    int group;
    int slot;

    static RoundIndex from_round(long k, long t);
    long to_round(long t) const;
};

/// Result of closing a stage: the four directions for the next stage and the
/// normalized weighted median-of-means estimate.
struct StageUpdate {
    std::array<BlochVector, 4> actions;
    BlochVector theta_wmom;
};

/// Next-stage probe construction: theta -(-1)^i v_{ceil(i/2)} / sqrt(lambda_min),
/// normalized. Flipping the sign of either eigenvector permutes the set.
std::array<BlochVector, 4> next_actions(const BlochVector& theta, const BlochVector& v1,
                                        const BlochVector& v2, double lambda_min);

/**
 * Stage-structured linear bandit with vanishing variance weights.
 *
 * Each stage probes four Bloch directions t times each, accumulates
 * variance-weighted reward sums per slot, and on stage close rebuilds the
 * design matrix, selects a weighted median-of-means estimate, and points the
 * next four probes at the estimate plus exploration offsets along the two
 * least-explored eigendirections.
 */
class BanditState {
public:
    BanditState(double lambda0, long t, double zeta);

    long stage() const { return stage_; }
    long t() const { return t_; }
    double sigma2() const { return sigma2_; }
    const Mat3& design_matrix() const { return v_; }
    const std::array<BlochVector, 4>& actions() const { return actions_; }
    const std::vector<BlochVector>& weighted_sums() const { return weighted_sums_; }
    const std::optional<BlochVector>& theta_wmom() const { return theta_wmom_; }
    long rewards_this_stage() const { return rewards_this_stage_; }
    bool stage_complete() const { return rewards_this_stage_ == 4 * t_; }

    /// Probe direction for the round's group. idx.stage must match.
    PureQubit current_direction(const RoundIndex& idx) const;

    /// Accumulate one reward: weighted_sums[slot] += a_group (2r-1) / sigma2.
    /// Throws std::logic_error on stage mismatch or slot/group replay.
    void record_reward(const RoundIndex& idx, int reward);

    /// Consume the 4t rewards of the current stage: update the design matrix,
    /// solve the weighted least-squares estimators, select the median-of-means
    /// direction and emit next-stage actions. Advances the stage index.
    StageUpdate close_stage();

private:
    long t_;
    double zeta_;
    Mat3 v_;
    double sigma2_;
    long stage_ = 1;
    std::array<BlochVector, 4> actions_;
    std::vector<BlochVector> weighted_sums_;
    std::optional<BlochVector> theta_wmom_;
    long rewards_this_stage_ = 0;
    std::vector<bool> seen_;
};

} // namespace wex

#endif // WEX_BANDIT_HPP
