#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sjext/extension.hpp"
#include "sjext/ground.hpp"
#include "sjext/group.hpp"
#include "sjext/nerve.hpp"
#include "sjext/sjpoint.hpp"

namespace testsupport {

using namespace sjext;

inline std::vector<std::string> make_ids(std::size_t n, const std::string& prefix = "x") {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
    return ids;
}

/// Min-plus closure; turns any symmetric nonnegative zero-diagonal table into a
/// pseudometric without shrinking any entry below the smallest input entry.
inline FunctionTable floyd_warshall(const FunctionTable& m) {
    const std::size_t n = m.size();
    std::vector<double> d(m.values());
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    return FunctionTable(m.ground(), std::move(d));
}

/// Random symmetric table with zero diagonal and off-diagonal entries in
/// [lo, hi], repaired into a pseudometric. With lo > 0 the result is a metric
/// whose smallest distance is at least lo.
inline FunctionTable random_pseudometric(const GroundSpace& g, std::mt19937_64& rng,
                                         double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    const std::size_t n = g.size();
    std::vector<double> vals(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) vals[i * n + j] = vals[j * n + i] = dist(rng);
    return floyd_warshall(FunctionTable(g, std::move(vals)));
}

inline FunctionTable random_metric(const GroundSpace& g, std::mt19937_64& rng,
                                   double lo = 0.3) {
    return random_pseudometric(g, rng, lo, 1.0);
}

/// Random squeezed-join tree, not necessarily canonical.
inline SJPoint random_point(const GroundSpace& g, std::mt19937_64& rng, int max_depth) {
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (max_depth == 0 || unit(rng) < 0.35) return SJPoint::leaf(g.id(pick(rng)));
    return SJPoint::join(random_point(g, rng, max_depth - 1),
                         random_point(g, rng, max_depth - 1), unit(rng));
}

/// All distinct canonical points of depth <= max_depth whose join parameters
/// come from the given grid.
inline std::vector<SJPoint> enumerate_canonical(const GroundSpace& g,
                                                const std::vector<double>& t_grid,
                                                int max_depth) {
    std::vector<SJPoint> pool;
    std::set<std::string> seen;
    auto push = [&](const SJPoint& u) {
        if (seen.insert(u.to_string()).second) pool.push_back(u);
    };
    for (const auto& id : g.ids()) push(SJPoint::leaf(id));
    for (int d = 1; d <= max_depth; ++d) {
        const std::vector<SJPoint> prev = pool;
        for (const auto& u : prev)
            for (const auto& v : prev)
                for (double t : t_grid) push(canonicalize(SJPoint::join(u, v, t)));
    }
    return pool;
}

/// Ambient instance for the main pipeline tests: |Y| ids, the first nx as X,
/// random metric distances bounded below by `lo` so the default truncation
/// depth stays small.
struct Instance {
    AmbientSpace space;
    FunctionTable p_metric;
    FunctionTable p_pseudo;
};

inline Instance random_instance(std::size_t ny, std::size_t nx, std::mt19937_64& rng,
                                double lo = 0.3) {
    const GroundSpace yg(make_ids(ny, "y"));
    const FunctionTable d = random_metric(yg, rng, lo);
    std::vector<std::string> subset(yg.ids().begin(), yg.ids().begin() + nx);
    AmbientSpace space(yg.ids(), d.values(), subset);
    const GroundSpace xg(subset);
    return Instance{std::move(space), random_metric(xg, rng, 0.3),
                    random_pseudometric(xg, rng, 0.0, 1.0)};
}

struct GroupInstance {
    AmbientSpace space;
    GroupAction group;
    FunctionTable p;  // invariant metric on X
};

/// Two concentric m-cycles: inner ring is X, the outer ring is the exterior,
/// rotations act on both rings at once. All data is rotation invariant.
inline GroupInstance cyclic_instance(std::size_t m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.3, 1.0);
    const std::size_t hmax = m / 2;
    std::vector<double> ring(hmax + 1, 0.0);
    for (std::size_t h = 1; h <= hmax; ++h)
        ring[h] = 0.4 + 0.2 * static_cast<double>(h) / static_cast<double>(hmax);
    std::vector<double> prof(hmax + 1, 0.0);
    for (std::size_t h = 1; h <= hmax; ++h) prof[h] = dist(rng);

    std::vector<std::string> ids;
    for (std::size_t k = 0; k < m; ++k) ids.push_back("a" + std::to_string(k));
    for (std::size_t k = 0; k < m; ++k) ids.push_back("b" + std::to_string(k));
    const std::size_t n = 2 * m;
    auto hop = [&](std::size_t i, std::size_t j) {
        const std::size_t d0 = i > j ? i - j : j - i;
        return std::min(d0, m - d0);
    };
    std::vector<double> dvals(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::size_t ki = i % m, kj = j % m;
            const bool cross = (i < m) != (j < m);
            dvals[i * n + j] = ring[hop(ki, kj)] + (cross ? 0.3 : 0.0);
        }
    std::vector<std::string> subset(ids.begin(), ids.begin() + m);
    AmbientSpace space(ids, dvals, subset);

    const GroundSpace xg(subset);
    std::vector<double> pvals(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) pvals[i * m + j] = prof[hop(i, j)];
    FunctionTable p = floyd_warshall(FunctionTable(xg, std::move(pvals)));

    std::vector<std::vector<std::string>> images;
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<std::string> img;
        for (std::size_t k = 0; k < m; ++k) img.push_back("a" + std::to_string((k + r) % m));
        for (std::size_t k = 0; k < m; ++k) img.push_back("b" + std::to_string((k + r) % m));
        images.push_back(std::move(img));
    }
    GroupAction group(space.points(), std::move(images));
    return GroupInstance{std::move(space), std::move(group), std::move(p)};
}

/// Two mirrored copies of a random instance; the order-2 group swaps the
/// copies. X is the union of both copies' subsets.
inline GroupInstance swap_instance(std::size_t base_ny, std::size_t base_nx,
                                   std::mt19937_64& rng) {
    const GroundSpace bg(make_ids(base_ny, "p"));
    const FunctionTable base_d = random_metric(bg, rng, 0.3);
    const GroundSpace bx(make_ids(base_nx, "p"));
    const FunctionTable base_p = random_metric(bx, rng, 0.3);

    std::vector<std::string> ids;
    for (const auto& id : bg.ids()) ids.push_back("L" + id);
    for (const auto& id : bg.ids()) ids.push_back("R" + id);
    const std::size_t n = 2 * base_ny;
    std::vector<double> dvals(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::size_t bi = i % base_ny, bj = j % base_ny;
            const bool cross = (i < base_ny) != (j < base_ny);
            dvals[i * n + j] = base_d(bi, bj) + (cross ? 0.3 : 0.0);
        }
    std::vector<std::string> subset;
    for (std::size_t k = 0; k < base_nx; ++k) subset.push_back("L" + bg.id(k));
    for (std::size_t k = 0; k < base_nx; ++k) subset.push_back("R" + bg.id(k));
    AmbientSpace space(ids, dvals, subset);

    const GroundSpace xg(subset);
    const std::size_t nx = 2 * base_nx;
    std::vector<double> pvals(nx * nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j) {
            if (i == j) continue;
            const std::size_t bi = i % base_nx, bj = j % base_nx;
            const bool cross = (i < base_nx) != (j < base_nx);
            pvals[i * nx + j] = base_p(bi, bj) + (cross ? 0.3 : 0.0);
        }
    FunctionTable p(xg, std::move(pvals));

    std::vector<std::vector<std::string>> images;
    images.push_back(ids);  // identity
    std::vector<std::string> sw;
    for (std::size_t i = 0; i < n; ++i)
        sw.push_back(i < base_ny ? ids[i + base_ny] : ids[i - base_ny]);
    images.push_back(std::move(sw));
    GroupAction group(space.points(), std::move(images));
    return GroupInstance{std::move(space), std::move(group), std::move(p)};
}

}  // namespace testsupport
