#include "sjext/sjeval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sjext/errors.hpp"

namespace sjext {

double magic_formula(double q_xx, double q_xy, double q_yx, double q_yy,
                     double t, double t2) {
    if (!(t >= 0.0 && t <= 1.0) || !(t2 >= 0.0 && t2 <= 1.0))
        throw std::domain_error("magic_formula parameters must lie in [0,1]");
    return std::min(1.0 - t, 1.0 - t2) * q_xx + std::max(0.0, t2 - t) * q_xy +
           std::max(0.0, t - t2) * q_yx + std::min(t, t2) * q_yy;
}

std::size_t SjEvaluator::KeyHash::operator()(
    const std::pair<const void*, const void*>& k) const {
    auto mix = [](std::uint64_t x) {
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return x;
    };
    const auto a = reinterpret_cast<std::uintptr_t>(k.first);
    const auto b = reinterpret_cast<std::uintptr_t>(k.second);
    return static_cast<std::size_t>(mix(static_cast<std::uint64_t>(a) * 0x9e3779b97f4a7c15ULL ^
                                        static_cast<std::uint64_t>(b)));
}

double SjEvaluator::eval(const SJPoint& u, const SJPoint& v) {
    // The recursion is only well defined on the quotient when both arguments
    // are in normal form: collapsing [w,w;t] inside a tree can lower its depth
    // and change the top-level alignment, so raw trees that denote the same
    // point could otherwise evaluate differently.
    SJPoint cu = canonicalize(u);
    SJPoint cv = canonicalize(v);
    roots_.push_back(cu);
    roots_.push_back(cv);
    return eval_impl(cu, cv);
}

double SjEvaluator::eval_impl(const SJPoint& u, const SJPoint& v) {
    const auto key = std::make_pair(u.key(), v.key());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    double result;
    if (u.is_leaf() && v.is_leaf()) {
        result = p_->value(u.id(), v.id());
    } else if (u.depth() < v.depth()) {
        // u embeds as [u,u;0] at v's level.
        result = (1.0 - v.t()) * eval_impl(u, v.left()) + v.t() * eval_impl(u, v.right());
    } else if (v.depth() < u.depth()) {
        result = (1.0 - u.t()) * eval_impl(u.left(), v) + u.t() * eval_impl(u.right(), v);
    } else {
        result = magic_formula(eval_impl(u.left(), v.left()), eval_impl(u.left(), v.right()),
                               eval_impl(u.right(), v.left()), eval_impl(u.right(), v.right()),
                               u.t(), v.t());
    }
    memo_.emplace(key, result);
    return result;
}

double sj_eval(const FunctionTable& p, const SJPoint& u, const SJPoint& v) {
    return SjEvaluator(p).eval(u, v);
}

std::vector<SJPoint> epsilon_net(const FunctionTable& p, double eps) {
    if (eps <= 0.0) throw std::domain_error("epsilon_net requires eps > 0");
    const double norm = p.sup_norm();
    if (norm == 0.0)
        throw validation_error("epsilon_net: sup|p| is zero, construction degenerates");

    // Greedy eps/4-net on the ground: keep a point when it is not yet covered.
    const double ground_eps = eps / 4.0;
    std::vector<std::size_t> net_idx;
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool covered = false;
        for (std::size_t a : net_idx)
            if (p(i, a) < ground_eps) {
                covered = true;
                break;
            }
        if (!covered) net_idx.push_back(i);
    }

    // Uniform grid on [0,1], endpoints included, spacing <= eps/(4*norm).
    const double step_bound = eps / (4.0 * norm);
    const std::size_t segments =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(1.0 / step_bound)));
    std::vector<double> grid;
    grid.reserve(segments + 1);
    for (std::size_t k = 0; k <= segments; ++k)
        grid.push_back(static_cast<double>(k) / static_cast<double>(segments));

    std::vector<SJPoint> net;
    net.reserve(net_idx.size() * net_idx.size() * grid.size());
    for (std::size_t a : net_idx)
        for (std::size_t b : net_idx)
            for (double t : grid)
                net.push_back(canonicalize(
                    SJPoint::join(SJPoint::leaf(p.ground().id(a)),
                                  SJPoint::leaf(p.ground().id(b)), t)));
    return net;
}

}  // namespace sjext
