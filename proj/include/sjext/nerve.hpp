#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sjext/ground.hpp"
#include "sjext/sjpoint.hpp"

namespace sjext {

/// Finite ambient metric space Y with a distinguished subset X. The metric is
/// validated on construction and rescaled so its sup norm is at most one; the
/// applied scale factor is recorded.
class AmbientSpace {
  public:
    AmbientSpace(std::vector<std::string> ids, std::vector<double> metric_values,
                 std::vector<std::string> subset, double tol = 1e-9);

    const GroundSpace& points() const { return metric_.ground(); }
    /// Normalized metric (sup norm <= 1).
    const FunctionTable& metric() const { return metric_; }
    /// Factor the input metric was divided by (1 when already bounded by 1).
    double scale() const { return scale_; }

    const std::vector<std::string>& subset() const { return subset_; }
    bool in_subset(const std::string& id) const;
    std::vector<std::string> exterior() const;

    /// Normalized metric restricted to X.
    const FunctionTable& subset_metric() const { return subset_metric_; }

    double distance(const std::string& y, const std::string& y2) const {
        return metric_.value(y, y2);
    }
    /// min over x in X of d(y, x).
    double distance_to_subset(const std::string& y) const;
    /// Smallest positive pairwise distance (normalized); 0 on a single point.
    double min_positive_distance() const;

  private:
    FunctionTable metric_;
    double scale_;
    std::vector<std::string> subset_;
    std::vector<bool> subset_mask_;
    FunctionTable subset_metric_;
};

struct CoverSet {
    int id = 0;
    std::string center;
    double radius = 0.0;
    std::vector<std::string> members;
};

/// Finite cover of a region by metric balls; optionally anchored into X.
class Cover {
  public:
    Cover(std::vector<CoverSet> sets, std::vector<std::string> region,
          double diameter_bound);

    const std::vector<CoverSet>& sets() const { return sets_; }
    const CoverSet& set(int set_id) const { return sets_.at(static_cast<std::size_t>(set_id)); }
    const std::vector<std::string>& region() const { return region_; }
    double diameter_bound() const { return diameter_bound_; }

    std::vector<int> sets_containing(const std::string& y) const;
    bool covers(const std::string& y) const { return !sets_containing(y).empty(); }

    bool anchored() const { return !anchors_.empty(); }
    const std::string& anchor(int set_id) const;
    void set_anchors(std::map<int, std::string> anchors);

  private:
    std::vector<CoverSet> sets_;
    std::vector<std::string> region_;
    double diameter_bound_;
    std::map<int, std::string> anchors_;
    std::map<std::string, std::vector<int>> membership_;
};

/// Cover of `region` by the balls {y : d(c,y) < radius} around every point c of
/// the region. Every point covers itself and every set has diameter < 2*radius.
Cover build_cover(const AmbientSpace& space, const std::vector<std::string>& region,
                  double radius);

/// Anchor each set at the X-point nearest to its center, ties broken by the
/// smallest position in Y's ordering.
Cover anchor_cover(const AmbientSpace& space, Cover cover);

/// The finite set u(y): {y} for y in X, otherwise the anchors of the sets
/// containing y. Sorted, deduplicated.
std::vector<std::string> anchor_set(const AmbientSpace& space, const Cover& cover,
                                    const std::string& y);

/// Barycentric coordinates of a point of the nerve: positive weights on cover
/// sets, summing to one.
struct NervePoint {
    std::map<int, double> coords;
};

/// Tent partition of unity subordinated to a ball cover: raw weight
/// max(0, 1 - d(y, center)/radius), normalized over the sets (positive for
/// every covered point since every point is a center).
class PartitionOfUnity {
  public:
    PartitionOfUnity(const Cover* cover, std::map<std::string, NervePoint> weights);

    double weight(const std::string& y, int set_id) const;
    const NervePoint& coords(const std::string& y) const;
    const Cover& cover() const { return *cover_; }

  private:
    const Cover* cover_;
    std::map<std::string, NervePoint> weights_;
};

PartitionOfUnity partition_of_unity(const AmbientSpace& space, const Cover& cover);

/// Radial decomposition of a nerve simplex point into an iterated join over the
/// vertex labels: peel the point toward the barycenter of its support simplex,
/// labeling the barycenter by the smallest-id vertex.
SJPoint simplex_to_sj(const NervePoint& point, const std::map<int, SJPoint>& labels,
                      double tol = 1e-9);

/// Map h: identity leaves on X; exterior points go through the anchored
/// exterior cover's partition of unity and the radial decomposition with
/// vertex labels Leaf(anchor(U)). support(h(y)) is contained in u(y).
std::map<std::string, SJPoint> borges_map_h(const AmbientSpace& space,
                                            const Cover& exterior_cover);

}  // namespace sjext
