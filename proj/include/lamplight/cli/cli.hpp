#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace lamplight::cli {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// Tabular result of a subcommand plus free-form summary fields.
struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json summary = nlohmann::json::object();
};

enum class Format { Csv, Json };

/// 12 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

/// CSV: header row then data rows (RFC 4180 quoting). JSON: {"manifest",
/// "columns", "rows" (objects), "summary"} with every number rounded to 12
/// significant digits.
void emit_report(const Report& report, Format format, const nlohmann::json& manifest, std::ostream& out);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitParameter = 2;

/// Runs one subcommand. `args` excludes the program name. Data goes to --out
/// (relative paths resolve against $LAMPLIGHT_OUT_DIR), else to
/// $LAMPLIGHT_OUT_DIR/<subcommand>.<ext> when that is set, else to `out`.
/// File outputs get a sidecar <path>.run.json with the manifest and wall-clock.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace lamplight::cli
