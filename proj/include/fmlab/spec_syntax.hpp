#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmlab {

/// One `key=number` pair and the byte offset of its key.
struct SpecParam {
    std::string key;
    double value;
    std::size_t offset;
};

/// Result of parsing `name(":" key "=" number ("," key "=" number)*)?`.
struct ParsedSpec {
    std::string text;
    std::string name;
    std::vector<SpecParam> params;

    std::optional<double> get(std::string_view key) const;
    /// Value for `key`; throws ParseError pointing at the end of input when absent.
    double require(std::string_view key) const;
    /// Throws ParseError if a key outside `allowed` (or a duplicate) is present.
    void restrict_keys(const std::vector<std::string>& allowed) const;
};

/// Parses the whitespace-free spec grammar; `names` lists the admissible names.
ParsedSpec parse_spec_syntax(std::string_view text, const std::vector<std::string>& names);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

}  // namespace fmlab
