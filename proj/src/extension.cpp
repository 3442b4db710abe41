#include "sjext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sjext/errors.hpp"
#include "sjext/sjeval.hpp"

namespace sjext {

namespace {

constexpr int kMaxLevels = 512;

double default_radius(int n) { return std::ldexp(1.0, -n - 1); }  // 2^{-n-1}

/// Pair of distinct X-points at maximal p-distance, first-in-order on ties.
std::pair<std::string, std::string> select_base_points(const FunctionTable& p) {
    const auto& g = p.ground();
    if (g.size() < 2)
        throw validation_error("base-point selection needs at least two points in X");
    std::size_t bi = 0, bj = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (p(i, j) > best) {
                best = p(i, j);
                bi = i;
                bj = j;
            }
    return {g.id(bi), g.id(bj)};
}

}  // namespace

ExtensionPipeline::ExtensionPipeline(const AmbientSpace& space, ExtensionConfig config)
    : space_(&space), config_(std::move(config)), levels_(0) {
    const auto& Y = space.points();
    if (space.subset().size() < 2)
        throw validation_error("extension requires at least two points in X");
    if (config_.a.empty() || config_.b.empty())
        throw validation_error("pipeline requires resolved base points a, b");
    if (config_.a == config_.b)
        throw validation_error("base points a and b must be distinct");
    if (!space.in_subset(config_.a) || !space.in_subset(config_.b))
        throw validation_error("base points must belong to X");
    if (config_.tolerance <= 0.0)
        throw validation_error("tolerance must be positive");
    if (!config_.radius_schedule) config_.radius_schedule = default_radius;

    // Exterior cover and the map h.
    const auto exterior = space.exterior();
    if (!exterior.empty()) {
        exterior_cover_ =
            anchor_cover(space, build_cover(space, exterior, config_.exterior_radius));
        h_ = borges_map_h(space, *exterior_cover_);
    } else {
        for (const auto& x : space.subset()) h_.emplace(x, SJPoint::leaf(x));
    }

    // chi(y) = min over x in X of d(y,x) + sj(d_X)(h(y), x).
    {
        SjEvaluator dx_eval(space.subset_metric());
        std::vector<SJPoint> x_leaves;
        x_leaves.reserve(space.subset().size());
        for (const auto& x : space.subset()) x_leaves.push_back(SJPoint::leaf(x));
        for (const auto& y : Y.ids()) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < x_leaves.size(); ++k)
                best = std::min(best, space.distance(y, space.subset()[k]) +
                                          dx_eval.eval(h_.at(y), x_leaves[k]));
            chi_[y] = best;
        }
    }

    // Truncation depth: explicit, or the smallest level with (i) all distinct
    // pairs farther apart than 2^{-n+1} and (ii) n * chi >= 1 on the exterior.
    if (config_.truncation_depth > 0) {
        levels_ = config_.truncation_depth;
    } else {
        const double minpd = space.min_positive_distance();
        int n1 = 1;
        while (n1 < kMaxLevels && std::ldexp(1.0, -n1 + 1) >= minpd) ++n1;
        double min_chi = std::numeric_limits<double>::infinity();
        for (const auto& y : exterior) min_chi = std::min(min_chi, chi_.at(y));
        int n2 = 1;
        if (!exterior.empty()) {
            if (min_chi <= 0.0)
                throw validation_error("exterior point with chi = 0; d does not separate it from X");
            n2 = static_cast<int>(std::ceil(1.0 / min_chi));
        }
        levels_ = std::max({n1, n2, 1});
        if (levels_ > kMaxLevels)
            throw validation_error("default truncation depth exceeds " +
                                   std::to_string(kMaxLevels) + " levels");
    }
    config_.truncation_depth = levels_;

    // Truncation weights.
    const double total = 1.0 - std::ldexp(1.0, -levels_);
    weights_.resize(static_cast<std::size_t>(levels_));
    for (int n = 1; n <= levels_; ++n) {
        const double raw = std::ldexp(1.0, -n);
        weights_[static_cast<std::size_t>(n - 1)] =
            config_.normalize_weights ? raw / total : raw;
    }

    // Metric-floor applicability: a level n <= N with n*chi(y) >= 1 for every
    // exterior y, and with d(y,y') > 2^{-n+1} for every distinct exterior pair.
    for (const auto& y : exterior) {
        if (levels_ * chi_.at(y) < 1.0) {
            metric_floor_ok_ = false;
            metric_floor_defect_ = "no level n <= N with n*chi >= 1 for point " + y;
            break;
        }
    }
    if (metric_floor_ok_) {
        const double top_scale = std::ldexp(1.0, -levels_ + 1);
        for (std::size_t i = 0; i < exterior.size() && metric_floor_ok_; ++i)
            for (std::size_t j = i + 1; j < exterior.size(); ++j)
                if (space.distance(exterior[i], exterior[j]) <= top_scale) {
                    metric_floor_ok_ = false;
                    metric_floor_defect_ = "no level n <= N with d > 2^{-n+1} for pair (" +
                                           exterior[i] + ", " + exterior[j] + ")";
                    break;
                }
    }

    // h relabeled into the X⊔Uₙ tag alphabet (the same for every level).
    for (const auto& [y, hy] : h_)
        h_tagged_.emplace(y, relabel(hy, [](const std::string& x) { return tag_subset(x); }));

    // Per-level artifacts.
    level_.reserve(static_cast<std::size_t>(levels_));
    for (int n = 1; n <= levels_; ++n) {
        const double radius = config_.radius_schedule(n);
        if (radius <= 0.0)
            throw validation_error("radius schedule must be positive");
        Cover cover = build_cover(space, Y.ids(), radius);
        const auto pou = partition_of_unity(space, cover);

        std::vector<std::string> ids;
        ids.reserve(space.subset().size() + cover.sets().size());
        for (const auto& x : space.subset()) ids.push_back(tag_subset(x));
        for (const auto& s : cover.sets()) ids.push_back(tag_cover(s.id));
        GroundSpace ground(std::move(ids));

        std::map<int, SJPoint> labels;
        for (const auto& s : cover.sets())
            labels.emplace(s.id, SJPoint::leaf(tag_cover(s.id)));

        Level lvl{std::move(cover), std::move(ground), {}, {}};
        for (const auto& y : Y.ids()) {
            SJPoint qy = simplex_to_sj(pou.coords(y), labels);
            SJPoint fy = canonicalize(
                SJPoint::join(h_tagged_.at(y), qy, chi_n(n, y)));
            lvl.q.emplace(y, std::move(qy));
            lvl.f.emplace(y, std::move(fy));
        }
        level_.push_back(std::move(lvl));
    }
}

std::vector<std::string> ExtensionPipeline::h_support(const std::string& y) const {
    return support(h_.at(y));
}

std::vector<std::string> ExtensionPipeline::u(const std::string& y) const {
    if (space_->in_subset(y)) return {y};
    return anchor_set(*space_, *exterior_cover_, y);
}

double ExtensionPipeline::chi_n(int n, const std::string& y) const {
    return std::min(1.0, static_cast<double>(n) * chi_.at(y));
}

const GroundSpace& ExtensionPipeline::level_ground(int n) const {
    return level_.at(static_cast<std::size_t>(n - 1)).ground;
}

const Cover& ExtensionPipeline::level_cover(int n) const {
    return level_.at(static_cast<std::size_t>(n - 1)).cover;
}

const SJPoint& ExtensionPipeline::f_n(int n, const std::string& y) const {
    return level_.at(static_cast<std::size_t>(n - 1)).f.at(y);
}

const SJPoint& ExtensionPipeline::q_n(int n, const std::string& y) const {
    return level_.at(static_cast<std::size_t>(n - 1)).q.at(y);
}

void ExtensionPipeline::check_function(const FunctionTable& p) const {
    if (p.ground().ids() != space_->subset())
        throw validation_error("function table ground must be X (same ids, same order)");
}

FunctionTable ExtensionPipeline::e_n(int n, const FunctionTable& p) const {
    check_function(p);
    const Level& lvl = level_.at(static_cast<std::size_t>(n - 1));
    const std::size_t nx = space_->subset().size();
    const std::size_t total = lvl.ground.size();
    const std::size_t ia = p.ground().index(config_.a);
    const std::size_t ib = p.ground().index(config_.b);
    const double p_ab = p(ia, ib);
    const double p_aa = p(ia, ia);

    FunctionTable table = FunctionTable::zero(lvl.ground);
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            double v;
            if (i < nx && j < nx) {
                v = p(i, j);
            } else if (i < nx) {
                v = 0.5 * p(i, ia) + 0.5 * p(i, ib);
            } else if (j < nx) {
                v = 0.5 * p(j, ia) + 0.5 * p(j, ib);
            } else if (i != j) {
                v = p_ab;
            } else {
                v = p_aa;
            }
            table.at(i, j) = v;
        }
    }
    return table;
}

double ExtensionPipeline::t_n(int n, const FunctionTable& p, const std::string& y,
                              const std::string& y2) const {
    const FunctionTable table = e_n(n, p);
    return sj_eval(table, f_n(n, y), f_n(n, y2));
}

FunctionTable ExtensionPipeline::apply(const FunctionTable& p) const {
    check_function(p);
    if (config_.enforce_metric_floor && !metric_floor_ok_ &&
        p.is_metric(config_.tolerance))
        throw validation_error("truncation depth too small for the metric positivity floor: " +
                               metric_floor_defect_);

    const auto& Y = space_->points();
    const std::size_t n_pts = Y.size();
    FunctionTable acc = FunctionTable::zero(Y);

    for (int n = 1; n <= levels_; ++n) {
        const double w = weights_[static_cast<std::size_t>(n - 1)];
        const FunctionTable table = e_n(n, p);
        const bool symmetric = table.max_asymmetry() == 0.0;
        SjEvaluator ev(table);
        const Level& lvl = level_.at(static_cast<std::size_t>(n - 1));
        for (std::size_t i = 0; i < n_pts; ++i) {
            const SJPoint& fi = lvl.f.at(Y.id(i));
            for (std::size_t j = symmetric ? i : 0; j < n_pts; ++j) {
                const double v = ev.eval(fi, lvl.f.at(Y.id(j)));
                acc.at(i, j) += w * v;
                if (symmetric && j > i) acc.at(j, i) += w * v;
            }
        }
    }
    return acc;
}

ExtendedTable extend(const FunctionTable& p, const AmbientSpace& space,
                     ExtensionConfig config) {
    if (config.a.empty() || config.b.empty()) {
        auto [a, b] = select_base_points(p);
        config.a = a;
        config.b = b;
    }
    ExtensionPipeline pipeline(space, std::move(config));
    FunctionTable values = pipeline.apply(p);
    Provenance prov;
    prov.a = pipeline.base_a();
    prov.b = pipeline.base_b();
    prov.levels = pipeline.levels();
    prov.weights = pipeline.weights();
    prov.normalized_weights = pipeline.config().normalize_weights;
    prov.tail_bound = std::ldexp(1.0, -pipeline.levels()) * p.sup_norm();
    prov.metric_scale = space.scale();
    return ExtendedTable{std::move(values), std::move(prov)};
}

ExtendedTable equivariant_extend(const FunctionTable& p, const AmbientSpace& space,
                                 const GroupAction& group, ExtensionConfig config) {
    if (!(group.points() == space.points()))
        throw validation_error("group acts on a different point set than Y");
    if (!group.preserves(space.subset()))
        throw validation_error("group does not map X onto X");
    const double tol = config.tolerance > 0.0 ? config.tolerance : 1e-9;
    const double defect = group.invariance_defect_on(p, space.subset());
    if (defect > tol)
        throw validation_error("p is not G-invariant (worst defect " +
                               std::to_string(defect) + ")");

    ExtendedTable base = extend(p, space, std::move(config));
    const std::size_t n = space.points().size();
    FunctionTable avg = FunctionTable::zero(space.points());
    for (std::size_t g = 0; g < group.size(); ++g)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                avg.at(i, j) += base.values(group.apply_index(g, i),
                                            group.apply_index(g, j));
    const double inv_order = 1.0 / static_cast<double>(group.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) avg.at(i, j) *= inv_order;
    base.values = std::move(avg);
    return base;
}

ExtendedTable near_isometric_extend(const FunctionTable& p, const AmbientSpace& space,
                                    const GroupAction& group, double eps,
                                    ExtensionConfig config) {
    if (eps <= 0.0) throw validation_error("near_isometric_extend requires eps > 0");
    const double tol = config.tolerance > 0.0 ? config.tolerance : 1e-9;
    const double d_defect = group.invariance_defect(space.metric());
    if (d_defect > tol)
        throw validation_error("d is not G-invariant (worst defect " +
                               std::to_string(d_defect) + ")");

    if (config.a.empty() || config.b.empty()) {
        auto [a, b] = select_base_points(p);
        config.a = a;
        config.b = b;
    }
    // A metric needs a strictly positive additive coefficient; re-select the
    // base pair at maximal p-distance if the configured one degenerates.
    double p_ab = p.value(config.a, config.b);
    if (p_ab <= 0.0 && p.is_metric(tol)) {
        auto [a, b] = select_base_points(p);
        config.a = a;
        config.b = b;
        p_ab = p.value(config.a, config.b);
    }

    ExtendedTable result = equivariant_extend(p, space, group, config);

    const double d_norm = space.metric().sup_norm();
    const double scale =
        (d_norm > 0.0 && d_norm >= eps) ? eps * (1.0 - 1e-9) / d_norm : 1.0;
    const std::size_t n = space.points().size();
    std::vector<double> to_subset(n);
    for (std::size_t i = 0; i < n; ++i)
        to_subset[i] = scale * space.distance_to_subset(space.points().id(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double via_subset = to_subset[i] + to_subset[j];
            const double direct = scale * space.metric()(i, j);
            result.values.at(i, j) += p_ab * std::min(direct, via_subset);
        }
    result.provenance.eps = eps;
    return result;
}

}  // namespace sjext
