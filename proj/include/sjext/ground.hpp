#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace sjext {

/// Finite ordered set of ground-point identifiers. Ordering is the order of
/// construction and is stable; every deterministic tie-break in the library
/// refers to this ordering.
class GroundSpace {
  public:
    GroundSpace() = default;
    explicit GroundSpace(std::vector<std::string> ids,
                         std::vector<std::string> labels = {});

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(std::size_t i) const { return ids_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Position of `id` in the ordering; throws std::out_of_range for unknown ids.
    std::size_t index(const std::string& id) const;
    bool contains(const std::string& id) const;

    bool operator==(const GroundSpace& other) const { return ids_ == other.ids_; }

  private:
    std::vector<std::string> ids_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Dense real-valued function on ground x ground. Structural properties
/// (symmetry, zero diagonal, ...) are queried, never assumed.
class FunctionTable {
  public:
    FunctionTable(GroundSpace ground, std::vector<double> values);

    static FunctionTable zero(GroundSpace ground);
    static FunctionTable constant(GroundSpace ground, double c);

    const GroundSpace& ground() const { return ground_; }
    std::size_t size() const { return ground_.size(); }

    double operator()(std::size_t i, std::size_t j) const {
        return values_[i * ground_.size() + j];
    }
    double& at(std::size_t i, std::size_t j) {
        return values_[i * ground_.size() + j];
    }
    /// Lookup by id; throws std::out_of_range for unknown ids.
    double value(const std::string& x, const std::string& y) const;

    const std::vector<double>& values() const { return values_; }

    double sup_norm() const;

    // Structure probes (worst defect, >= 0 means a violation for the
    // inequality-style ones).
    double max_asymmetry() const;        // max |p(i,j) - p(j,i)|
    double max_diagonal() const;         // max |p(i,i)|
    double min_value() const;            // min p(i,j)
    double worst_triangle_defect() const;  // max p(i,k) - p(i,j) - p(j,k)

    bool is_pseudometric(double tol) const;
    bool is_metric(double tol) const;

    /// Table restricted to a subset of the ground (ids keep the given order).
    FunctionTable restricted(const std::vector<std::string>& subset) const;

  private:
    GroundSpace ground_;
    std::vector<double> values_;  // row-major, size n*n
};

}  // namespace sjext
