#include "lamplight/cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace lamplight::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_number(v);
            else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return csv_field(v);
        },
        c);
}

nlohmann::json rounded(double v) {
    if (!std::isfinite(v)) return format_number(v);
    return std::strtod(format_number(v).c_str(), nullptr);
}

nlohmann::json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return rounded(v);
            else return v;
        },
        c);
}

void round_numbers(nlohmann::json& j) {
    if (j.is_number_float()) j = rounded(j.get<double>());
    else if (j.is_structured())
        for (auto& child : j) round_numbers(child);
}

}  // namespace

void emit_report(const Report& report, Format format, const nlohmann::json& manifest, std::ostream& out) {
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_field(report.columns[i]);
        out << '\n';
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
            out << '\n';
        }
        return;
    }
    nlohmann::json j;
    j["manifest"] = manifest;
    j["columns"] = report.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) r[report.columns[i]] = cell_json(row[i]);
        j["rows"].push_back(std::move(r));
    }
    nlohmann::json summary = report.summary;
    round_numbers(summary);
    j["summary"] = std::move(summary);
    out << j.dump(2) << '\n';
}

}  // namespace lamplight::cli
