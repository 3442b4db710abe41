#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sjext/ground.hpp"
#include "sjext/sjpoint.hpp"

namespace sjext {

/// Four-term convex combination lifting values at the corner pairs to the
/// pair of join parameters (t, t2). The coefficients are nonnegative and sum
/// to exactly one. Throws std::domain_error for parameters outside [0,1].
double magic_formula(double q_xx, double q_xy, double q_yx, double q_yy,
                     double t, double t2);

/// Evaluator of the lifted function sj^n(p) on pairs of squeezed-join points
/// over p's ground space. Results are memoized on node identity, so reusing
/// one evaluator across many pairs built from shared subtrees is cheap.
/// Not safe for concurrent use; distinct evaluators are independent.
class SjEvaluator {
  public:
    explicit SjEvaluator(const FunctionTable& p) : p_(&p) {}

    /// Evaluates on the canonical forms of both arguments, so the result
    /// is invariant under canonicalization.
    /// Throws std::out_of_range if a leaf id is not in p's ground space.
    double eval(const SJPoint& u, const SJPoint& v);

  private:
    struct KeyHash {
        std::size_t operator()(const std::pair<const void*, const void*>& k) const;
    };
    double eval_impl(const SJPoint& u, const SJPoint& v);

    const FunctionTable* p_;
    std::unordered_map<std::pair<const void*, const void*>, double, KeyHash> memo_;
    // Memo keys are node addresses, so every evaluated tree is retained here;
    // otherwise a freed node's address could be reused and hit a stale entry.
    std::vector<SJPoint> roots_;
};

/// One-shot evaluation of the lift: depth alignment treats the shallower
/// argument as [w,w;0]; leaves evaluate through p directly, so the lift
/// extends p exactly. Invariant under canonicalization of either argument.
double sj_eval(const FunctionTable& p, const SJPoint& u, const SJPoint& v);

/// Finite eps-net of depth-1 squeezed-join points for the pseudometric sj(p):
/// joins [x,y;t] with x,y from an eps/4-net of the ground and t from a uniform
/// grid on [0,1] of spacing <= eps/(4*sup|p|). Throws validation_error when
/// sup|p| is zero (the normalization of the construction degenerates).
std::vector<SJPoint> epsilon_net(const FunctionTable& p, double eps);

}  // namespace sjext
