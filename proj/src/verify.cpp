#include "sjext/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sjext/errors.hpp"
#include "sjext/sjeval.hpp"

namespace sjext {

namespace {

FunctionTable random_table(const GroundSpace& g, std::mt19937_64& rng, double lo,
                           double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> vals(g.size() * g.size());
    for (auto& v : vals) v = dist(rng);
    return FunctionTable(g, std::move(vals));
}

void record(VerificationReport& report, std::string name, bool pass, double worst,
            std::vector<std::string> witness) {
    report.checks.push_back(
        {std::move(name), pass, worst, pass ? std::vector<std::string>{} : std::move(witness)});
}

}  // namespace

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["tolerance"] = tolerance;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back(
            {{"name", c.name}, {"pass", c.pass}, {"worst", c.worst}, {"witness", c.witness}});
    return j.dump(2);
}

VerificationReport check_pseudometric(const FunctionTable& m, double tol) {
    VerificationReport report;
    report.tolerance = tol;
    const auto& g = m.ground();
    const std::size_t n = g.size();

    double worst = 0.0;
    std::vector<std::string> wit;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = std::fabs(m(i, j) - m(j, i));
            if (d > worst) worst = d, wit = {g.id(i), g.id(j)};
        }
    record(report, "symmetry", worst == 0.0, worst, std::move(wit));

    worst = 0.0;
    wit.clear();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::fabs(m(i, i));
        if (d > worst) worst = d, wit = {g.id(i)};
    }
    record(report, "zero_diagonal", worst <= tol, worst, std::move(wit));

    worst = 0.0;
    wit.clear();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (-m(i, j) > worst) worst = -m(i, j), wit = {g.id(i), g.id(j)};
    record(report, "nonnegativity", worst <= tol, worst, std::move(wit));

    worst = 0.0;
    wit.clear();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const double d = m(i, k) - m(i, j) - m(j, k);
                if (d > worst) worst = d, wit = {g.id(i), g.id(j), g.id(k)};
            }
    record(report, "triangle", worst <= tol, worst, std::move(wit));
    return report;
}

VerificationReport check_regular_operator(const TableOperator& op,
                                          const GroundSpace& domain,
                                          std::size_t sample_count, double tol,
                                          std::uint64_t seed) {
    VerificationReport report;
    report.tolerance = tol;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);

    double lin_worst = 0.0, pos_worst = 0.0, norm_worst = 0.0;
    std::vector<std::string> lin_wit, pos_wit, norm_wit;
    for (std::size_t s = 0; s < sample_count; ++s) {
        const FunctionTable p = random_table(domain, rng, 0.0, 1.0);
        const FunctionTable q = random_table(domain, rng, 0.0, 1.0);
        const double alpha = coeff(rng), beta = coeff(rng);
        std::vector<double> combo(p.values());
        for (std::size_t k = 0; k < combo.size(); ++k)
            combo[k] = alpha * p.values()[k] + beta * q.values()[k];

        const FunctionTable tp = op(p);
        const FunctionTable tq = op(q);
        const FunctionTable tc = op(FunctionTable(domain, std::move(combo)));
        const auto& out = tp.ground();
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = 0; j < out.size(); ++j) {
                const double r =
                    std::fabs(tc(i, j) - alpha * tp(i, j) - beta * tq(i, j));
                if (r > lin_worst) lin_worst = r, lin_wit = {out.id(i), out.id(j)};
                if (-tp(i, j) > pos_worst)
                    pos_worst = -tp(i, j), pos_wit = {out.id(i), out.id(j)};
            }
        const double excess = tp.sup_norm() - p.sup_norm();
        if (excess > norm_worst) norm_worst = excess, norm_wit = {};
    }
    record(report, "linearity", lin_worst <= tol, lin_worst, std::move(lin_wit));
    record(report, "positivity", pos_worst <= tol, pos_worst, std::move(pos_wit));
    record(report, "norm_nonexpansive", norm_worst <= tol, norm_worst,
           std::move(norm_wit));

    const FunctionTable unit_out = op(FunctionTable::constant(domain, 1.0));
    double unit_worst = 0.0;
    std::vector<std::string> unit_wit;
    const auto& out = unit_out.ground();
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) {
            const double d = std::fabs(unit_out(i, j) - 1.0);
            if (d > unit_worst) unit_worst = d, unit_wit = {out.id(i), out.id(j)};
        }
    record(report, "unit_preservation", unit_worst <= tol, unit_worst,
           std::move(unit_wit));
    return report;
}

VerificationReport check_locality(const TableOperator& op, const GroundSpace& domain,
                                  const std::string& y, const std::string& y2,
                                  const std::vector<std::string>& mask,
                                  const std::vector<std::string>& required,
                                  std::size_t trials, double tol,
                                  std::uint64_t seed) {
    for (const auto& r : required)
        if (std::find(mask.begin(), mask.end(), r) == mask.end())
            throw validation_error("locality mask is missing required id " + r);
    std::vector<bool> in_mask(domain.size(), false);
    for (const auto& id : mask) in_mask[domain.index(id)] = true;

    VerificationReport report;
    report.tolerance = tol;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> wild(0.0, 10.0);

    double worst = 0.0;
    for (std::size_t s = 0; s < trials; ++s) {
        const FunctionTable p = random_table(domain, rng, 0.0, 1.0);
        std::vector<double> other(p.values());
        for (std::size_t i = 0; i < domain.size(); ++i)
            for (std::size_t j = 0; j < domain.size(); ++j)
                if (!in_mask[i] || !in_mask[j])
                    other[i * domain.size() + j] = wild(rng);
        const FunctionTable tp = op(p);
        const FunctionTable tq = op(FunctionTable(domain, std::move(other)));
        worst = std::max(worst, std::fabs(tp.value(y, y2) - tq.value(y, y2)));
    }
    record(report, "locality", worst <= tol, worst, {y, y2});
    return report;
}

VerificationReport check_net(const std::vector<SJPoint>& points, const FunctionTable& p,
                             double eps, std::size_t samples, std::uint64_t seed) {
    VerificationReport report;
    report.tolerance = eps;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, p.ground().size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst = 0.0;
    std::vector<std::string> wit;
    for (std::size_t s = 0; s < samples; ++s) {
        const SJPoint sample = SJPoint::join(SJPoint::leaf(p.ground().id(pick(rng))),
                                             SJPoint::leaf(p.ground().id(pick(rng))),
                                             unit(rng));
        // A fresh evaluator per sample keeps the memo small; a shared one would
        // retain every sample/net pair for the whole run.
        SjEvaluator ev(p);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& net_point : points) {
            best = std::min(best, ev.eval(sample, net_point));
            if (best <= worst) break;
        }
        if (points.empty()) best = std::numeric_limits<double>::infinity();
        if (best > worst) worst = best, wit = {sample.to_string()};
    }
    record(report, "net_coverage", worst <= eps, worst, std::move(wit));
    return report;
}

}  // namespace sjext
