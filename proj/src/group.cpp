#include "sjext/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sjext/errors.hpp"

namespace sjext {

GroupAction::GroupAction(const GroundSpace& points,
                         std::vector<std::vector<std::string>> images)
    : points_(points) {
    const std::size_t n = points_.size();
    if (images.empty()) throw validation_error("group must contain at least one element");
    for (const auto& img : images) {
        if (img.size() != n)
            throw validation_error("group element image list size does not match Y");
        std::vector<std::size_t> perm(n);
        std::vector<bool> hit(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = points_.index(img[i]);
            if (hit[j]) throw validation_error("group element is not a permutation");
            hit[j] = true;
            perm[i] = j;
        }
        perms_.push_back(std::move(perm));
    }

    // Group axioms: identity present, closed under composition (which on a
    // finite set also forces inverses).
    std::set<std::vector<std::size_t>> members(perms_.begin(), perms_.end());
    if (members.size() != perms_.size())
        throw validation_error("group contains duplicate elements");
    std::vector<std::size_t> id_perm(n);
    std::iota(id_perm.begin(), id_perm.end(), 0);
    if (members.find(id_perm) == members.end())
        throw validation_error("group does not contain the identity");
    for (const auto& g : perms_)
        for (const auto& h : perms_) {
            std::vector<std::size_t> gh(n);
            for (std::size_t i = 0; i < n; ++i) gh[i] = g[h[i]];
            if (members.find(gh) == members.end())
                throw validation_error("group is not closed under composition");
        }
}

GroupAction GroupAction::identity(const GroundSpace& points) {
    return GroupAction(points, {points.ids()});
}

const std::string& GroupAction::apply(std::size_t g, const std::string& y) const {
    return points_.id(perms_[g][points_.index(y)]);
}

bool GroupAction::preserves(const std::vector<std::string>& subset) const {
    std::set<std::size_t> idx;
    for (const auto& x : subset) idx.insert(points_.index(x));
    for (const auto& perm : perms_)
        for (std::size_t i : idx)
            if (idx.find(perm[i]) == idx.end()) return false;
    return true;
}

double GroupAction::invariance_defect(const FunctionTable& f) const {
    if (!(f.ground() == points_))
        throw validation_error("invariance_defect: table ground is not Y");
    const std::size_t n = points_.size();
    double worst = 0.0;
    for (const auto& perm : perms_)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                worst = std::max(worst, std::fabs(f(perm[i], perm[j]) - f(i, j)));
    return worst;
}

double GroupAction::invariance_defect_on(const FunctionTable& f,
                                         const std::vector<std::string>& subset) const {
    if (!preserves(subset))
        throw validation_error("invariance_defect_on: subset is not G-invariant");
    const std::size_t m = subset.size();
    double worst = 0.0;
    for (std::size_t g = 0; g < perms_.size(); ++g)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                worst = std::max(worst,
                                 std::fabs(f.value(apply(g, subset[i]), apply(g, subset[j])) -
                                           f.value(subset[i], subset[j])));
    return worst;
}

}  // namespace sjext
