#include "fmlab/report.hpp"

#include "fmlab/errors.hpp"
#include "fmlab/spec_syntax.hpp"

#include <cmath>
#include <fstream>
#include "json.hpp"
#include <sstream>
#include <unistd.h>

namespace fmlab {

using json = nlohmann::ordered_json;

namespace {

json number_to_json(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ParseError(0, {"number", "\"inf\"", "\"-inf\"", "\"nan\""}, j.dump());
}

json cell_to_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return number_to_json(v);
            else
                return v;
        },
        c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string cell_to_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (std::isnan(v)) return "nan";
                if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
                return format_number(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return csv_escape(v);
            }
        },
        c);
}

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream os;
    os << "schema=1\n";
    bool first = true;
    for (const auto& c : t.columns) {
        os << (first ? "" : ",") << csv_escape(c);
        first = false;
    }
    for (const auto& [k, v] : t.meta) os << ',' << csv_escape(k);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_to_text(row[i]);
        for (const auto& [k, v] : t.meta) os << ',' << csv_escape(v);
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& t) {
    json meta = json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = cell_to_json(row[i]);
        rows.push_back(std::move(r));
    }
    json doc = {{"schema", 1}, {"kind", t.kind}, {"meta", meta}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

bool ScenarioReport::overall_pass() const noexcept {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

namespace {
bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }
}  // namespace

bool ScenarioReport::operator==(const ScenarioReport& o) const {
    if (name != o.name || params != o.params || notes != o.notes || rows.size() != o.rows.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &a = rows[i], &b = o.rows[i];
        if (a.label != b.label || !same_number(a.measured, b.measured) || !same_number(a.predicted, b.predicted) ||
            a.relation != b.relation || a.pass != b.pass || a.provenance != b.provenance)
            return false;
    }
    return true;
}

std::string report_to_json(const ScenarioReport& r) {
    json meta = json::object();
    for (const auto& [k, v] : r.params) meta[k] = v;
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"label", row.label},
                        {"measured", number_to_json(row.measured)},
                        {"predicted", number_to_json(row.predicted)},
                        {"relation", row.relation},
                        {"pass", row.pass},
                        {"provenance", row.provenance}});
    json doc = {{"schema", 1},   {"kind", "scenario"}, {"scenario", r.name},        {"meta", meta},
                {"rows", rows},  {"notes", r.notes},   {"overall_pass", r.overall_pass()}};
    return doc.dump(2) + "\n";
}

ScenarioReport report_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, {"JSON document"}, std::string(text.substr(0, 64)));
    }
    try {
        ScenarioReport r;
        r.name = doc.at("scenario").get<std::string>();
        for (const auto& [k, v] : doc.at("meta").items()) r.params.emplace_back(k, v.get<std::string>());
        for (const auto& row : doc.at("rows"))
            r.rows.push_back({row.at("label").get<std::string>(), number_from_json(row.at("measured")),
                              number_from_json(row.at("predicted")), row.at("relation").get<std::string>(),
                              row.at("pass").get<bool>(), row.at("provenance").get<std::string>()});
        r.notes = doc.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(0, {"scenario report fields"}, e.what());
    }
}

Table report_table(const ScenarioReport& r) {
    Table t{"scenario:" + r.name, r.params, {"label", "measured", "predicted", "relation", "pass", "provenance"}, {}};
    t.meta.insert(t.meta.begin(), {"scenario", r.name});
    for (const auto& row : r.rows)
        t.rows.push_back({row.label, row.measured, row.predicted, row.relation, row.pass, row.provenance});
    return t;
}

void write_atomically(const std::filesystem::path& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / (path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot rename into " + path.string());
    }
}

}  // namespace fmlab
