#pragma once

#include <string>
#include <vector>

#include "sjext/ground.hpp"

namespace sjext {

/// Finite group of permutations of an ambient point set, given by image lists
/// aligned with the ground ordering. Construction validates the group axioms
/// (identity, closure, inverses).
class GroupAction {
  public:
    GroupAction(const GroundSpace& points, std::vector<std::vector<std::string>> images);

    static GroupAction identity(const GroundSpace& points);

    std::size_t size() const { return perms_.size(); }
    const GroundSpace& points() const { return points_; }

    std::size_t apply_index(std::size_t g, std::size_t i) const { return perms_[g][i]; }
    const std::string& apply(std::size_t g, const std::string& y) const;

    /// True when every element maps the subset onto itself.
    bool preserves(const std::vector<std::string>& subset) const;

    /// max over g, y, y2 of |f(gy, gy2) - f(y, y2)| for a table on the full
    /// ground space.
    double invariance_defect(const FunctionTable& f) const;

    /// Same defect for a table on a G-invariant subset of the ground.
    double invariance_defect_on(const FunctionTable& f,
                                const std::vector<std::string>& subset) const;

  private:
    GroundSpace points_;
    std::vector<std::vector<std::size_t>> perms_;  // perms_[g][i] = index of g(point i)
};

}  // namespace sjext
