#include "sjext/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "sjext/errors.hpp"

namespace sjext {

namespace {

FunctionTable make_normalized_metric(std::vector<std::string> ids,
                                     std::vector<double> values, double tol,
                                     double* scale_out) {
    FunctionTable raw(GroundSpace(std::move(ids)), std::move(values));
    if (raw.max_asymmetry() > tol)
        throw validation_error("metric is not symmetric (worst defect " +
                               std::to_string(raw.max_asymmetry()) + ")");
    if (raw.max_diagonal() > tol)
        throw validation_error("metric has a nonzero diagonal");
    if (raw.min_value() < -tol)
        throw validation_error("metric has a negative value");
    if (raw.worst_triangle_defect() > tol)
        throw validation_error("metric violates the triangle inequality (worst defect " +
                               std::to_string(raw.worst_triangle_defect()) + ")");
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (raw(i, j) <= tol)
                throw validation_error("metric does not separate points " +
                                       raw.ground().id(i) + ", " + raw.ground().id(j));
    const double norm = raw.sup_norm();
    const double scale = std::max(1.0, norm);
    *scale_out = scale;
    if (scale == 1.0) return raw;
    std::vector<double> scaled = raw.values();
    for (double& v : scaled) v /= scale;
    return FunctionTable(raw.ground(), std::move(scaled));
}

}  // namespace

AmbientSpace::AmbientSpace(std::vector<std::string> ids, std::vector<double> metric_values,
                           std::vector<std::string> subset, double tol)
    : metric_(make_normalized_metric(std::move(ids), std::move(metric_values), tol, &scale_)),
      subset_(std::move(subset)),
      subset_mask_(metric_.size(), false),
      subset_metric_(FunctionTable::zero(GroundSpace{})) {
    if (subset_.empty()) throw validation_error("subset X must be nonempty");
    std::set<std::string> seen;
    for (const auto& x : subset_) {
        if (!metric_.ground().contains(x))
            throw validation_error("subset id not in ambient space: " + x);
        if (!seen.insert(x).second)
            throw validation_error("duplicate subset id: " + x);
        subset_mask_[metric_.ground().index(x)] = true;
    }
    subset_metric_ = metric_.restricted(subset_);
}

bool AmbientSpace::in_subset(const std::string& id) const {
    return subset_mask_[metric_.ground().index(id)];
}

std::vector<std::string> AmbientSpace::exterior() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < metric_.size(); ++i)
        if (!subset_mask_[i]) out.push_back(metric_.ground().id(i));
    return out;
}

double AmbientSpace::distance_to_subset(const std::string& y) const {
    const std::size_t yi = metric_.ground().index(y);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : subset_)
        best = std::min(best, metric_(yi, metric_.ground().index(x)));
    return best;
}

double AmbientSpace::min_positive_distance() const {
    const std::size_t n = metric_.size();
    double best = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = metric_(i, j);
            if (d > 0.0 && (!found || d < best)) {
                best = d;
                found = true;
            }
        }
    return found ? best : 0.0;
}

Cover::Cover(std::vector<CoverSet> sets, std::vector<std::string> region,
             double diameter_bound)
    : sets_(std::move(sets)), region_(std::move(region)), diameter_bound_(diameter_bound) {
    for (const auto& s : sets_)
        for (const auto& m : s.members) membership_[m].push_back(s.id);
}

std::vector<int> Cover::sets_containing(const std::string& y) const {
    auto it = membership_.find(y);
    return it == membership_.end() ? std::vector<int>{} : it->second;
}

const std::string& Cover::anchor(int set_id) const {
    auto it = anchors_.find(set_id);
    if (it == anchors_.end())
        throw std::out_of_range("cover has no anchor for set " + std::to_string(set_id));
    return it->second;
}

void Cover::set_anchors(std::map<int, std::string> anchors) {
    anchors_ = std::move(anchors);
}

Cover build_cover(const AmbientSpace& space, const std::vector<std::string>& region,
                  double radius) {
    if (region.empty()) throw validation_error("build_cover: empty region");
    if (radius <= 0.0) throw std::domain_error("build_cover: radius must be positive");
    std::vector<CoverSet> sets;
    sets.reserve(region.size());
    int next_id = 0;
    for (const auto& c : region) {
        CoverSet s;
        s.id = next_id++;
        s.center = c;
        s.radius = radius;
        for (const auto& y : region)
            if (space.distance(c, y) < radius) s.members.push_back(y);
        sets.push_back(std::move(s));
    }
    return Cover(std::move(sets), region, 2.0 * radius);
}

Cover anchor_cover(const AmbientSpace& space, Cover cover) {
    if (space.subset().empty()) throw validation_error("anchor_cover: X is empty");
    std::map<int, std::string> anchors;
    for (const auto& s : cover.sets()) {
        // Nearest X-point to the center; ties resolved by Y-ordering, which the
        // subset list inherits (AmbientSpace validates membership, and iteration
        // below respects the subset's declared order).
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_pos = std::numeric_limits<std::size_t>::max();
        const auto& yground = space.points();
        for (const auto& x : space.subset()) {
            const double d = space.distance(s.center, x);
            const std::size_t pos = yground.index(x);
            if (d < best || (d == best && pos < best_pos)) {
                best = d;
                best_pos = pos;
            }
        }
        anchors[s.id] = yground.id(best_pos);
    }
    cover.set_anchors(std::move(anchors));
    return cover;
}

std::vector<std::string> anchor_set(const AmbientSpace& space, const Cover& cover,
                                    const std::string& y) {
    if (space.in_subset(y)) return {y};
    std::set<std::string> out;
    for (int sid : cover.sets_containing(y)) out.insert(cover.anchor(sid));
    return {out.begin(), out.end()};
}

PartitionOfUnity::PartitionOfUnity(const Cover* cover, std::map<std::string, NervePoint> weights)
    : cover_(cover), weights_(std::move(weights)) {}

double PartitionOfUnity::weight(const std::string& y, int set_id) const {
    const auto& np = coords(y);
    auto it = np.coords.find(set_id);
    return it == np.coords.end() ? 0.0 : it->second;
}

const NervePoint& PartitionOfUnity::coords(const std::string& y) const {
    auto it = weights_.find(y);
    if (it == weights_.end())
        throw std::out_of_range("partition of unity has no weights for " + y);
    return it->second;
}

PartitionOfUnity partition_of_unity(const AmbientSpace& space, const Cover& cover) {
    std::map<std::string, NervePoint> weights;
    for (const auto& y : cover.region()) {
        NervePoint np;
        double total = 0.0;
        for (const auto& s : cover.sets()) {
            const double raw = std::max(0.0, 1.0 - space.distance(y, s.center) / s.radius);
            if (raw > 0.0) {
                np.coords[s.id] = raw;
                total += raw;
            }
        }
        if (total <= 0.0)
            throw validation_error("partition_of_unity: point not covered: " + y);
        for (auto& [sid, w] : np.coords) w /= total;
        weights[y] = std::move(np);
    }
    return PartitionOfUnity(&cover, std::move(weights));
}

namespace {

SJPoint radial_decompose(const std::map<int, double>& coords,
                         const std::map<int, SJPoint>& labels) {
    if (coords.size() == 1) return labels.at(coords.begin()->first);

    const std::size_t k1 = coords.size();
    double min_w = std::numeric_limits<double>::infinity();
    for (const auto& [v, w] : coords) min_w = std::min(min_w, w);
    const double t = static_cast<double>(k1) * min_w;
    const SJPoint& bary_label = labels.at(coords.begin()->first);  // smallest vertex id
    if (1.0 - t < 1e-15) return bary_label;

    std::map<int, double> boundary;
    for (const auto& [v, w] : coords) {
        const double excess = w - min_w;
        if (excess > 0.0) boundary[v] = excess / (1.0 - t);
    }
    if (boundary.empty()) return bary_label;  // numerically at the barycenter
    return canonicalize(
        SJPoint::join(radial_decompose(boundary, labels), bary_label, t));
}

}  // namespace

SJPoint simplex_to_sj(const NervePoint& point, const std::map<int, SJPoint>& labels,
                      double tol) {
    if (point.coords.empty())
        throw std::domain_error("simplex_to_sj: empty coordinate set");
    double total = 0.0;
    for (const auto& [v, w] : point.coords) {
        if (w <= 0.0)
            throw std::domain_error("simplex_to_sj: nonpositive barycentric coordinate");
        if (labels.find(v) == labels.end())
            throw std::domain_error("simplex_to_sj: missing label for vertex " +
                                    std::to_string(v));
        total += w;
    }
    if (std::fabs(total - 1.0) > tol)
        throw std::domain_error("simplex_to_sj: coordinates do not sum to 1");
    return radial_decompose(point.coords, labels);
}

std::map<std::string, SJPoint> borges_map_h(const AmbientSpace& space,
                                            const Cover& exterior_cover) {
    if (!exterior_cover.anchored())
        throw validation_error("borges_map_h: exterior cover is not anchored");
    std::map<std::string, SJPoint> h;
    for (const auto& x : space.subset()) h.emplace(x, SJPoint::leaf(x));
    const auto exterior = space.exterior();
    if (exterior.empty()) return h;

    const auto pou = partition_of_unity(space, exterior_cover);
    std::map<int, SJPoint> labels;
    for (const auto& s : exterior_cover.sets())
        labels.emplace(s.id, SJPoint::leaf(exterior_cover.anchor(s.id)));
    for (const auto& y : exterior)
        h.emplace(y, simplex_to_sj(pou.coords(y), labels));
    return h;
}

}  // namespace sjext
