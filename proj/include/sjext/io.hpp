#pragma once

#include <string>
#include <vector>

#include "sjext/ground.hpp"
#include "sjext/group.hpp"

namespace sjext {

/// Square matrix file: CSV (header row of ids, then one row of values per id)
/// or JSON ({"ids": [...], "matrix": [[...]]}), dispatched on the extension.
/// Values round-trip exactly (17 significant digits). Malformed content throws
/// validation_error; unreadable or unwritable paths throw std::ios_base::failure.
FunctionTable read_table(const std::string& path);
void write_table(const std::string& path, const FunctionTable& table);

std::string table_to_csv(const FunctionTable& table);
std::string table_to_json(const FunctionTable& table);
FunctionTable table_from_csv(const std::string& text);
FunctionTable table_from_json(const std::string& text);

/// Group file: JSON list of permutations, each an array of image ids aligned
/// with the point ordering.
GroupAction read_group(const std::string& path, const GroundSpace& points);

}  // namespace sjext
