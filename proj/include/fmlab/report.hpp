#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fmlab {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// A flat result table. Every row is emitted together with the meta pairs
/// (weight, p, grid, schedule, ...) so numbers never lose their provenance.
struct Table {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// First line `schema=1`, then the header, then one line per row; meta pairs are trailing columns.
std::string to_csv(const Table& t);
/// {"schema":1,"kind":..,"meta":{..},"rows":[{col: value, ..}, ..]}; non-finite numbers become strings.
std::string to_json(const Table& t);

struct ScenarioRow {
    std::string label;
    double measured;
    double predicted;
    std::string relation;  ///< "<=", ">=", "==", "in", or "info"
    bool pass;
    std::string provenance;
};

struct ScenarioReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ScenarioRow> rows;
    std::vector<std::string> notes;

    bool overall_pass() const noexcept;
    bool operator==(const ScenarioReport&) const;
};

std::string report_to_json(const ScenarioReport& r);
/// Inverse of report_to_json; throws ParseError on malformed input.
ScenarioReport report_from_json(std::string_view text);
Table report_table(const ScenarioReport& r);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace fmlab
