#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sjext/ground.hpp"
#include "sjext/group.hpp"
#include "sjext/nerve.hpp"
#include "sjext/sjpoint.hpp"

namespace sjext {

/// Configuration of the truncated extension operator. Empty base points and a
/// zero truncation depth mean "resolve defaults from the data": (a,b) is the
/// X-pair of maximal p-distance, and the depth is the smallest level at which
/// the positivity-floor levels exist for every pair.
struct ExtensionConfig {
    std::string a;
    std::string b;
    int truncation_depth = 0;
    double tolerance = 1e-9;
    double exterior_radius = 0.25;
    std::function<double(int)> radius_schedule;  // default n -> 2^{-n-1}
    bool normalize_weights = true;
    /// Validate, when p is a metric, that the truncation depth is large enough
    /// for the positivity-floor levels to exist for every pair.
    bool enforce_metric_floor = true;
};

struct Provenance {
    std::string a;
    std::string b;
    int levels = 0;
    std::vector<double> weights;
    bool normalized_weights = true;
    double tail_bound = 0.0;  // 2^{-N} * sup|p| against the untruncated series
    double metric_scale = 1.0;
    double eps = 0.0;  // near-isometric mode only
};

struct ExtendedTable {
    FunctionTable values;
    Provenance provenance;
};

/// Per-space pipeline artifacts: the exterior anchored cover and map h, the
/// gauge chi, and for each level n the ball cover of Y at radius 2^{-n-1}, its
/// partition of unity, the tagged ground X⊔Uₙ, and the points f_n(y).
/// Everything here depends on (Y, d, X) and the config only, not on p; built
/// once, immutable afterwards, safe for concurrent reads.
class ExtensionPipeline {
  public:
    ExtensionPipeline(const AmbientSpace& space, ExtensionConfig config);

    const AmbientSpace& space() const { return *space_; }
    int levels() const { return levels_; }
    const std::string& base_a() const { return config_.a; }
    const std::string& base_b() const { return config_.b; }
    const ExtensionConfig& config() const { return config_; }

    const SJPoint& h(const std::string& y) const { return h_.at(y); }
    std::vector<std::string> h_support(const std::string& y) const;
    /// Anchors of the exterior-cover sets containing y ({y} itself on X).
    std::vector<std::string> u(const std::string& y) const;

    double chi(const std::string& y) const { return chi_.at(y); }
    double chi_n(int n, const std::string& y) const;

    const GroundSpace& level_ground(int n) const;
    const Cover& level_cover(int n) const;
    const SJPoint& f_n(int n, const std::string& y) const;
    const SJPoint& q_n(int n, const std::string& y) const;

    /// The four-case table on X⊔Uₙ (X-block p; mixed block the (a,b)-average;
    /// distinct Uₙ pairs p(a,b); the Uₙ diagonal p(a,a)).
    FunctionTable e_n(int n, const FunctionTable& p) const;

    /// Level contribution before weighting: sj-lift of e_n at (f_n(y), f_n(y')).
    double t_n(int n, const FunctionTable& p, const std::string& y,
               const std::string& y2) const;

    /// Truncation weights (normalized to sum 1 unless raw mode).
    const std::vector<double>& weights() const { return weights_; }

    /// Full weighted sum over all levels and pairs.
    FunctionTable apply(const FunctionTable& p) const;

    /// Tag helpers for the X⊔Uₙ ground.
    static std::string tag_subset(const std::string& x) { return "X:" + x; }
    static std::string tag_cover(int set_id) { return "U:" + std::to_string(set_id); }

  private:
    struct Level {
        Cover cover;
        GroundSpace ground;                 // X⊔Uₙ
        std::map<std::string, SJPoint> q;   // over Uₙ tags
        std::map<std::string, SJPoint> f;   // over X⊔Uₙ tags
    };

    void check_function(const FunctionTable& p) const;

    const AmbientSpace* space_;
    ExtensionConfig config_;
    int levels_;
    std::vector<double> weights_;
    std::optional<Cover> exterior_cover_;  // absent when Y = X
    bool metric_floor_ok_ = true;
    std::string metric_floor_defect_;
    std::map<std::string, SJPoint> h_;        // over X ids
    std::map<std::string, SJPoint> h_tagged_; // over X⊔Uₙ tags (level independent)
    std::map<std::string, double> chi_;
    std::vector<Level> level_;
};

/// Truncated extension operator of p from X to Y.
ExtendedTable extend(const FunctionTable& p, const AmbientSpace& space,
                     ExtensionConfig config = {});

/// Uniform group average of the extension; requires p invariant and X
/// G-invariant.
ExtendedTable equivariant_extend(const FunctionTable& p, const AmbientSpace& space,
                                 const GroupAction& group, ExtensionConfig config = {});

/// Equivariant extension plus the vanishing-on-X invariant pseudometric term
/// p(a,b)·min{d, d(·,X)+d(·,X)} with d rescaled below eps; operator norm is at
/// most 1+eps and metrics stay strictly positive off the diagonal.
ExtendedTable near_isometric_extend(const FunctionTable& p, const AmbientSpace& space,
                                    const GroupAction& group, double eps,
                                    ExtensionConfig config = {});

}  // namespace sjext
