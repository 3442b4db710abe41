#include "sjext/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sjext/errors.hpp"

namespace sjext {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::ios_base::failure("write failed on " + path);
}

std::string format_value(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_value(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw validation_error("trailing junk in number: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw validation_error("not a number: " + s);
    } catch (const std::out_of_range&) {
        throw validation_error("number out of range: " + s);
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return cells;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string table_to_csv(const FunctionTable& table) {
    const auto& g = table.ground();
    std::ostringstream out;
    for (std::size_t j = 0; j < g.size(); ++j) out << (j ? "," : "") << g.id(j);
    out << "\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j)
            out << (j ? "," : "") << format_value(table(i, j));
        out << "\n";
    }
    return out.str();
}

FunctionTable table_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw validation_error("empty CSV table");
    const std::vector<std::string>& ids = rows.front();
    const std::size_t n = ids.size();
    if (rows.size() != n + 1)
        throw validation_error("CSV table is not square: " + std::to_string(n) +
                               " ids, " + std::to_string(rows.size() - 1) + " rows");
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 1; i <= n; ++i) {
        if (rows[i].size() != n)
            throw validation_error("CSV row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) + " cells, expected " +
                                   std::to_string(n));
        for (const auto& cell : rows[i]) values.push_back(parse_value(cell));
    }
    return FunctionTable(GroundSpace(ids), std::move(values));
}

std::string table_to_json(const FunctionTable& table) {
    const auto& g = table.ground();
    std::ostringstream out;
    out << "{\n  \"ids\": [";
    for (std::size_t j = 0; j < g.size(); ++j)
        out << (j ? ", " : "") << nlohmann::json(g.id(j)).dump();
    out << "],\n  \"matrix\": [\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << "    [";
        for (std::size_t j = 0; j < g.size(); ++j)
            out << (j ? ", " : "") << format_value(table(i, j));
        out << (i + 1 < g.size() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

FunctionTable table_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("ids") || !j.contains("matrix"))
        throw validation_error("JSON table must be {\"ids\": [...], \"matrix\": [[...]]}");
    std::vector<std::string> ids;
    for (const auto& v : j.at("ids")) {
        if (!v.is_string()) throw validation_error("ids must be strings");
        ids.push_back(v.get<std::string>());
    }
    const std::size_t n = ids.size();
    const auto& matrix = j.at("matrix");
    if (!matrix.is_array() || matrix.size() != n)
        throw validation_error("matrix must have one row per id");
    std::vector<double> values;
    values.reserve(n * n);
    for (const auto& row : matrix) {
        if (!row.is_array() || row.size() != n)
            throw validation_error("matrix rows must have one value per id");
        for (const auto& v : row) {
            if (!v.is_number()) throw validation_error("matrix entries must be numbers");
            values.push_back(v.get<double>());
        }
    }
    return FunctionTable(GroundSpace(std::move(ids)), std::move(values));
}

FunctionTable read_table(const std::string& path) {
    const std::string text = read_file(path);
    return has_suffix(path, ".json") ? table_from_json(text) : table_from_csv(text);
}

void write_table(const std::string& path, const FunctionTable& table) {
    write_file(path, has_suffix(path, ".json") ? table_to_json(table)
                                               : table_to_csv(table));
}

GroupAction read_group(const std::string& path, const GroundSpace& points) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("bad group JSON: ") + e.what());
    }
    if (!j.is_array()) throw validation_error("group file must be a JSON list of permutations");
    std::vector<std::vector<std::string>> images;
    for (const auto& perm : j) {
        if (!perm.is_array())
            throw validation_error("each permutation must be an array of image ids");
        std::vector<std::string> img;
        for (const auto& v : perm) {
            if (!v.is_string()) throw validation_error("image ids must be strings");
            img.push_back(v.get<std::string>());
        }
        images.push_back(std::move(img));
    }
    return GroupAction(points, std::move(images));
}

}  // namespace sjext
