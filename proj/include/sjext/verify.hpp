#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sjext/ground.hpp"
#include "sjext/sjpoint.hpp"

namespace sjext {

struct CheckResult {
    std::string name;
    bool pass = true;
    double worst = 0.0;
    std::vector<std::string> witness;  // ids of the worst violating tuple
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    double tolerance = 0.0;

    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
    std::string to_json() const;
};

/// Black-box operator on function tables, checked without inspecting its code.
using TableOperator = std::function<FunctionTable(const FunctionTable&)>;

/// Symmetry (exact), diagonal and nonnegativity within tol, and every ordered
/// triangle inequality with slack tol. Failures carry the worst witness tuple.
VerificationReport check_pseudometric(const FunctionTable& m, double tol);

/// Samples random tables on `domain` and checks linearity, positivity, unit
/// preservation and sup-norm nonexpansiveness of `op`.
VerificationReport check_regular_operator(const TableOperator& op,
                                          const GroundSpace& domain,
                                          std::size_t sample_count, double tol,
                                          std::uint64_t seed = 20240901);

/// Locality at the pair (y, y2): random table pairs agreeing on mask x mask and
/// differing wildly elsewhere must give equal op values at (y, y2). `required`
/// lists the ids the mask must contain for the check to be meaningful; a mask
/// missing one of them throws validation_error (precondition, not a finding).
VerificationReport check_locality(const TableOperator& op, const GroundSpace& domain,
                                  const std::string& y, const std::string& y2,
                                  const std::vector<std::string>& mask,
                                  const std::vector<std::string>& required,
                                  std::size_t trials, double tol,
                                  std::uint64_t seed = 20240902);

/// Samples random depth-1 joins over p's ground and checks each is within eps
/// of some listed point in the lifted pseudometric.
VerificationReport check_net(const std::vector<SJPoint>& points, const FunctionTable& p,
                             double eps, std::size_t samples,
                             std::uint64_t seed = 20240903);

}  // namespace sjext
