// Acceptance suite: one line per criterion, exit code = number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sjext/extension.hpp"
#include "sjext/ground.hpp"
#include "sjext/group.hpp"
#include "sjext/sjeval.hpp"
#include "sjext/sjpoint.hpp"
#include "sjext/verify.hpp"
#include "support.hpp"

using namespace sjext;
using namespace testsupport;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// 1. Magic-formula coefficients: nonnegative, sum exactly one (1e-12).
Outcome criterion1() {
    Outcome out;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 100000; ++s) {
        const double t = unit(rng), t2 = unit(rng);
        const double c[4] = {std::min(1.0 - t, 1.0 - t2), std::max(0.0, t2 - t),
                             std::max(0.0, t - t2), std::min(t, t2)};
        double sum = 0.0;
        for (double x : c) {
            if (x < 0.0) out.fail("negative coefficient");
            sum += x;
        }
        worst = std::max(worst, std::fabs(sum - 1.0));
        // the library evaluates the same combination
        if (std::fabs(magic_formula(1, 1, 1, 1, t, t2) - 1.0) > 1e-12)
            out.fail("library lift of the unit drifts");
    }
    if (worst > 1e-12) out.fail("coefficient sum defect " + std::to_string(worst));
    return out;
}

// 2. The lift of a pseudometric is a pseudometric: exhaustive triangle check
// over all canonical depth<=2 points on a 5-value t-grid (slack 1e-9).
Outcome criterion2() {
    Outcome out;
    std::mt19937_64 rng(102);
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t ground_size = inst < 18 ? 2 : 3;
        GroundSpace g(make_ids(ground_size));
        FunctionTable p = random_pseudometric(g, rng, inst % 3 ? 0.2 : 0.0, 1.0);
        const auto pts = enumerate_canonical(g, grid, 2);
        const std::size_t m = pts.size();
        std::vector<double> D(m * m);
        SjEvaluator ev(p);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) D[i * m + j] = ev.eval(pts[i], pts[j]);

        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                worst = std::max(worst, std::fabs(D[i * m + j] - D[j * m + i]));
                worst = std::max(worst, -D[i * m + j]);
            }
        if (worst > 1e-9) out.fail("symmetry/nonnegativity defect in instance " +
                                   std::to_string(inst));
        double tri = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double* Dj = &D[j * m];
            for (std::size_t i = 0; i < m; ++i) {
                const double dij = D[i * m + j];
                const double* Di = &D[i * m];
                for (std::size_t k = 0; k < m; ++k)
                    tri = std::max(tri, Di[k] - dij - Dj[k]);
            }
        }
        if (tri > 1e-9)
            out.fail("triangle defect " + std::to_string(tri) + " in instance " +
                     std::to_string(inst));
    }
    return out;
}

// 3. Norm bound over sampled depth<=3 points; locality of the lift in p.
Outcome criterion3() {
    Outcome out;
    std::mt19937_64 rng(103);
    GroundSpace g(make_ids(5));
    FunctionTable p = random_pseudometric(g, rng);
    const double norm = p.sup_norm();
    SjEvaluator ev(p);
    for (int s = 0; s < 10000; ++s) {
        const double v = ev.eval(random_point(g, rng, 3), random_point(g, rng, 3));
        if (std::fabs(v) > norm + 1e-12) out.fail("norm bound exceeded");
    }

    GroundSpace g6(make_ids(6));
    std::uniform_real_distribution<double> wild(0.0, 10.0);
    for (int s = 0; s < 100; ++s) {
        SJPoint u = random_point(g6, rng, 3);
        SJPoint v = random_point(g6, rng, 3);
        std::set<std::string> mask;
        for (const auto& id : support(u)) mask.insert(id);
        for (const auto& id : support(v)) mask.insert(id);
        FunctionTable base = random_pseudometric(g6, rng);
        std::vector<double> other(base.values());
        for (std::size_t i = 0; i < g6.size(); ++i)
            for (std::size_t j = 0; j < g6.size(); ++j)
                if (!mask.count(g6.id(i)) || !mask.count(g6.id(j)))
                    other[i * g6.size() + j] = wild(rng);
        const double d = std::fabs(sj_eval(base, u, v) -
                                   sj_eval(FunctionTable(g6, std::move(other)), u, v));
        if (d > 1e-12) out.fail("masked pair disagreement " + std::to_string(d));
    }
    return out;
}

// 4. Base-weight oracle against the recursive evaluation.
Outcome criterion4() {
    Outcome out;
    std::mt19937_64 rng(104);
    GroundSpace g(make_ids(5));
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (int s = 0; s < 1000; ++s) {
        FunctionTable p = random_pseudometric(g, rng);
        SJPoint u = random_point(g, rng, 3);
        const std::string z = g.id(pick(rng));
        double expect = 0.0;
        for (const auto& [id, w] : base_weights(u)) expect += w * p.value(id, z);
        const double got = sj_eval(p, u, SJPoint::leaf(z));
        if (std::fabs(got - expect) > 1e-12)
            out.fail("weight sum mismatch " + std::to_string(std::fabs(got - expect)));
    }
    return out;
}

// 5. eps-net coverage at eps in {0.5, 0.25} of the norm.
Outcome criterion5() {
    Outcome out;
    std::mt19937_64 rng(105);
    for (int inst = 0; inst < 5; ++inst) {
        GroundSpace g(make_ids(4 + inst % 2));
        FunctionTable p = random_pseudometric(g, rng, 0.1, 1.0);
        for (double frac : {0.5, 0.25}) {
            const double eps = frac * p.sup_norm();
            const auto net = epsilon_net(p, eps);
            const VerificationReport rep =
                check_net(net, p, eps, 10000, 105 + static_cast<std::uint64_t>(inst));
            if (!rep.all_pass())
                out.fail("uncovered sample at eps fraction " + std::to_string(frac) +
                         ", worst " + std::to_string(rep.checks.front().worst));
        }
    }
    return out;
}

// 6. End-to-end extension on 50 random instances.
Outcome criterion6() {
    Outcome out;
    std::mt19937_64 rng(106);
    std::uniform_int_distribution<std::size_t> small(6, 16), large(17, 30);
    for (int inst = 0; inst < 50; ++inst) {
        const std::size_t ny = inst < 40 ? small(rng) : large(rng);
        std::uniform_int_distribution<std::size_t> nx_pick(2, ny - 1);
        const std::size_t nx = nx_pick(rng);
        Instance data = random_instance(ny, nx, rng, inst % 2 ? 0.3 : 0.15);
        const bool metric_case = inst % 2 == 0;
        const FunctionTable& p = metric_case ? data.p_metric : data.p_pseudo;

        ExtendedTable result = extend(p, data.space);

        // (a) exactness on X
        for (const auto& x : data.space.subset())
            for (const auto& x2 : data.space.subset())
                if (std::fabs(result.values.value(x, x2) - p.value(x, x2)) > 1e-9)
                    out.fail("instance " + std::to_string(inst) + ": not exact on X");

        // (b) the output satisfies the pseudometric axioms
        const VerificationReport axioms = check_pseudometric(result.values, 1e-9);
        if (!axioms.all_pass())
            out.fail("instance " + std::to_string(inst) + ": output axioms fail");

        // (c) regularity of the operator with the instance's pipeline fixed
        ExtensionConfig config;
        config.a = result.provenance.a;
        config.b = result.provenance.b;
        config.truncation_depth = result.provenance.levels;
        ExtensionPipeline pipe(data.space, config);
        const GroundSpace xg(data.space.subset());
        const TableOperator op = [&](const FunctionTable& q) { return pipe.apply(q); };
        const VerificationReport reg =
            check_regular_operator(op, xg, 6, 1e-9, 1060 + static_cast<std::uint64_t>(inst));
        if (!reg.all_pass())
            out.fail("instance " + std::to_string(inst) + ": regularity fails");

        // (d) strict positivity and the mixed-pair floor for metric p
        if (metric_case) {
            const auto& Y = data.space.points();
            for (std::size_t i = 0; i < Y.size(); ++i)
                for (std::size_t j = 0; j < Y.size(); ++j)
                    if (i != j && !(result.values(i, j) > 0.0))
                        out.fail("instance " + std::to_string(inst) +
                                 ": zero off-diagonal value");
            const double p_ab = p.value(result.provenance.a, result.provenance.b);
            for (const auto& x : data.space.subset())
                for (const auto& y : data.space.exterior()) {
                    int n = 1;
                    while (n <= pipe.levels() && pipe.chi_n(n, y) < 1.0) ++n;
                    if (n > pipe.levels()) {
                        out.fail("instance " + std::to_string(inst) +
                                 ": no saturated level for " + y);
                        continue;
                    }
                    const double floor = pipe.weights()[n - 1] * 0.5 * p_ab;
                    if (result.values.value(x, y) < floor - 1e-9)
                        out.fail("instance " + std::to_string(inst) +
                                 ": mixed pair below the floor");
                }
        }
    }
    return out;
}

// 7. Locality of the operator: values at (y, y') depend on p only through
// {a, b} and the supports of h(y), h(y').
Outcome criterion7() {
    Outcome out;
    std::mt19937_64 rng(107);
    for (int inst = 0; inst < 10; ++inst) {
        Instance data = random_instance(10 + inst % 5, 4, rng, inst % 2 ? 0.3 : 0.15);
        ExtendedTable seed = extend(data.p_pseudo, data.space);
        ExtensionConfig config;
        config.a = seed.provenance.a;
        config.b = seed.provenance.b;
        config.truncation_depth = seed.provenance.levels;
        ExtensionPipeline pipe(data.space, config);
        const GroundSpace xg(data.space.subset());

        const auto exterior = data.space.exterior();
        const std::string y = exterior.front();
        const std::string y2 = exterior.back();
        std::set<std::string> mask{config.a, config.b};
        for (const auto& id : pipe.h_support(y)) mask.insert(id);
        for (const auto& id : pipe.h_support(y2)) mask.insert(id);
        const std::vector<std::string> mask_v(mask.begin(), mask.end());

        const TableOperator op = [&](const FunctionTable& q) { return pipe.apply(q); };
        const VerificationReport rep =
            check_locality(op, xg, y, y2, mask_v, mask_v, 20, 1e-12,
                           1070 + static_cast<std::uint64_t>(inst));
        if (!rep.all_pass())
            out.fail("instance " + std::to_string(inst) + ": worst " +
                     std::to_string(rep.checks.front().worst));
    }
    return out;
}

// 8. Finite-group equivariance; the identity group reproduces plain extension.
Outcome criterion8() {
    Outcome out;
    std::mt19937_64 rng(108);
    for (int inst = 0; inst < 10; ++inst) {
        GroupInstance gi = inst % 2 ? swap_instance(4 + inst % 3, 2 + inst % 2, rng)
                                    : cyclic_instance(4 + 2 * (inst % 3), rng);
        ExtendedTable eq = equivariant_extend(gi.p, gi.space, gi.group);
        if (gi.group.invariance_defect(eq.values) > 1e-9)
            out.fail("instance " + std::to_string(inst) + ": output not invariant");
        for (const auto& x : gi.space.subset())
            for (const auto& x2 : gi.space.subset())
                if (std::fabs(eq.values.value(x, x2) - gi.p.value(x, x2)) > 1e-9)
                    out.fail("instance " + std::to_string(inst) + ": not exact on X");

        ExtendedTable plain = extend(gi.p, gi.space);
        ExtendedTable via_identity =
            equivariant_extend(gi.p, gi.space, GroupAction::identity(gi.space.points()));
        if (plain.values.values() != via_identity.values.values())
            out.fail("instance " + std::to_string(inst) +
                     ": identity group is not bit-identical");
    }
    return out;
}

// 9. Near-isometric equivariant extension: norm 1+eps, exact on X, strictly
// positive for metric p.
Outcome criterion9() {
    Outcome out;
    std::mt19937_64 rng(109);
    for (int inst = 0; inst < 10; ++inst) {
        GroupInstance gi = inst % 2 ? swap_instance(4 + inst % 3, 2, rng)
                                    : cyclic_instance(4 + 2 * (inst % 3), rng);
        for (double eps : {0.5, 0.1}) {
            ExtendedTable result = near_isometric_extend(gi.p, gi.space, gi.group, eps);
            if (result.values.sup_norm() > (1.0 + eps) * gi.p.sup_norm() + 1e-9)
                out.fail("instance " + std::to_string(inst) + ": norm above 1+eps");
            for (const auto& x : gi.space.subset())
                for (const auto& x2 : gi.space.subset())
                    if (std::fabs(result.values.value(x, x2) - gi.p.value(x, x2)) > 1e-9)
                        out.fail("instance " + std::to_string(inst) + ": not exact on X");
            const auto& Y = gi.space.points();
            for (std::size_t i = 0; i < Y.size(); ++i)
                for (std::size_t j = 0; j < Y.size(); ++j)
                    if (i != j && !(result.values(i, j) > 0.0))
                        out.fail("instance " + std::to_string(inst) +
                                 ": zero off-diagonal value");
        }
    }
    return out;
}

// 10. Golden 3-point instance against the committed hand-computed matrix.
Outcome criterion10() {
    Outcome out;
    std::ifstream in(std::string(GOLDEN_DIR) + "/demo3.json");
    if (!in) {
        out.fail("golden file missing");
        return out;
    }
    nlohmann::json j;
    in >> j;
    std::vector<std::string> ids = j.at("ids").get<std::vector<std::string>>();
    std::vector<std::string> subset = j.at("subset").get<std::vector<std::string>>();
    std::vector<double> dvals;
    for (const auto& row : j.at("d")) for (const auto& v : row) dvals.push_back(v);
    AmbientSpace space(ids, dvals, subset);

    std::vector<std::string> pids =
        j.at("p").at("ids").get<std::vector<std::string>>();
    std::vector<double> pvals;
    for (const auto& row : j.at("p").at("matrix"))
        for (const auto& v : row) pvals.push_back(v);
    FunctionTable p(GroundSpace(pids), std::move(pvals));

    ExtensionConfig config;
    config.a = j.at("config").at("a").get<std::string>();
    config.b = j.at("config").at("b").get<std::string>();
    config.truncation_depth = j.at("config").at("truncation_depth").get<int>();
    ExtendedTable result = extend(p, space, config);

    const auto& expected = j.at("expected");
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const double want = expected.at(i).at(k).get<double>();
            const double got = result.values.value(ids[i], ids[k]);
            if (std::fabs(got - want) > 1e-9)
                out.fail("mismatch at (" + ids[i] + "," + ids[k] + "): got " +
                         std::to_string(got) + ", want " + std::to_string(want));
        }
    return out;
}

}  // namespace

int main() {
    const struct {
        const char* name;
        Outcome (*run)();
    } criteria[] = {
        {"magic-formula coefficients are a partition of unity", criterion1},
        {"lifted pseudometric satisfies all axioms on depth-2 enumerations", criterion2},
        {"lift is norm-bounded and local in p", criterion3},
        {"base-weight oracle matches recursive evaluation", criterion4},
        {"constructed eps-nets cover sampled points", criterion5},
        {"end-to-end extension: exactness, axioms, regularity, positivity floor",
         criterion6},
        {"operator locality in p", criterion7},
        {"finite-group equivariance with identity-group agreement", criterion8},
        {"near-isometric equivariant extension", criterion9},
        {"golden 3-point instance", criterion10},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::printf("criterion %2d: %s  [%s, %lld ms]%s%s\n", index,
                    out.pass ? "PASS" : "FAIL", c.name, static_cast<long long>(ms),
                    out.pass ? "" : " -- ", out.pass ? "" : out.detail.c_str());
        if (!out.pass) ++failures;
    }
    return failures;
}
