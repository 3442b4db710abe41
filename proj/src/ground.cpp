#include "sjext/ground.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sjext/errors.hpp"

namespace sjext {

GroundSpace::GroundSpace(std::vector<std::string> ids, std::vector<std::string> labels)
    : ids_(std::move(ids)), labels_(std::move(labels)) {
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        auto [it, inserted] = index_.emplace(ids_[i], i);
        if (!inserted) throw validation_error("duplicate ground id: " + ids_[i]);
    }
    if (!labels_.empty() && labels_.size() != ids_.size())
        throw validation_error("label list size does not match id list size");
}

std::size_t GroundSpace::index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown ground id: " + id);
    return it->second;
}

bool GroundSpace::contains(const std::string& id) const {
    return index_.count(id) != 0;
}

FunctionTable::FunctionTable(GroundSpace ground, std::vector<double> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
    const std::size_t n = ground_.size();
    if (values_.size() != n * n)
        throw validation_error("table size does not match ground size");
    for (double v : values_)
        if (!std::isfinite(v)) throw validation_error("table contains a non-finite value");
}

FunctionTable FunctionTable::zero(GroundSpace ground) {
    const std::size_t n = ground.size();
    return FunctionTable(std::move(ground), std::vector<double>(n * n, 0.0));
}

FunctionTable FunctionTable::constant(GroundSpace ground, double c) {
    const std::size_t n = ground.size();
    return FunctionTable(std::move(ground), std::vector<double>(n * n, c));
}

double FunctionTable::value(const std::string& x, const std::string& y) const {
    return (*this)(ground_.index(x), ground_.index(y));
}

double FunctionTable::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
}

double FunctionTable::max_asymmetry() const {
    const std::size_t n = ground_.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            worst = std::max(worst, std::fabs((*this)(i, j) - (*this)(j, i)));
    return worst;
}

double FunctionTable::max_diagonal() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < ground_.size(); ++i)
        worst = std::max(worst, std::fabs((*this)(i, i)));
    return worst;
}

double FunctionTable::min_value() const {
    double m = values_.empty() ? 0.0 : values_[0];
    for (double v : values_) m = std::min(m, v);
    return m;
}

double FunctionTable::worst_triangle_defect() const {
    const std::size_t n = ground_.size();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double pik = (*this)(i, k);
            for (std::size_t j = 0; j < n; ++j)
                worst = std::max(worst, pik - (*this)(i, j) - (*this)(j, k));
        }
    return worst;
}

bool FunctionTable::is_pseudometric(double tol) const {
    return max_asymmetry() <= tol && max_diagonal() <= tol &&
           min_value() >= -tol && worst_triangle_defect() <= tol;
}

bool FunctionTable::is_metric(double tol) const {
    if (!is_pseudometric(tol)) return false;
    const std::size_t n = ground_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((*this)(i, j) <= tol) return false;
    return true;
}

FunctionTable FunctionTable::restricted(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> idx;
    idx.reserve(subset.size());
    for (const auto& id : subset) idx.push_back(ground_.index(id));
    const std::size_t m = subset.size();
    std::vector<double> vals(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            vals[i * m + j] = (*this)(idx[i], idx[j]);
    return FunctionTable(GroundSpace(subset), std::move(vals));
}

}  // namespace sjext
