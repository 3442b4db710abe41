#pragma once

#include <stdexcept>
#include <string>

namespace sjext {

/// Invalid or inconsistent input data / configuration (bad metric, degenerate
/// subset, non-invariant function under a group, ...).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sjext
