#include <doctest.h>

#include "lamplight/cli/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lamplight;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
    auto d = fs::temp_directory_path() / ("lamplight_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("report emission") {
    cli::Report empty{{"a", "b"}, {}, {}};
    std::ostringstream csv;
    cli::emit_report(empty, cli::Format::Csv, {}, csv);
    CHECK(csv.str() == "a,b\n");

    cli::Report r{{"name", "x"}, {{std::string("p, q"), 1.0 / 3.0}}, {{"v", 2.0 / 3.0}}};
    std::ostringstream c2;
    cli::emit_report(r, cli::Format::Csv, {}, c2);
    CHECK(c2.str() == "name,x\n\"p, q\",0.333333333333\n");
    std::ostringstream js;
    cli::emit_report(r, cli::Format::Json, {{"subcommand", "t"}}, js);
    const auto j = nlohmann::json::parse(js.str());
    CHECK(j["rows"][0]["x"].get<double>() == 0.333333333333);
    CHECK(j["summary"]["v"].get<double>() == 0.666666666667);
    CHECK(j["manifest"]["subcommand"] == "t");
    CHECK(cli::format_number(-0.0) == "0");
    CHECK(cli::format_number(1.0 / 0.0) == "inf");
}

TEST_CASE("kernel subcommand") {
    const auto r = call({"kernel", "--radius", "5"});
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 122);
    CHECK(r.out.rfind("x,y,value\n", 0) == 0);
    const auto j = call({"kernel", "--radius", "5", "--format", "json"});
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["rows"].size() == 121);
    CHECK(parsed["manifest"]["parameters"]["radius"] == 5);
}

TEST_CASE("every subcommand runs at reduced size") {
    const std::vector<std::vector<std::string>> runs{
        {"coupling", "--radius", "4", "--trials", "2000"},
        {"kernel", "--radius", "3"},
        {"harmonic-check", "--radius", "10"},
        {"harmonic-check", "--group", "C2 wr Z", "--radius", "4"},
        {"growth-profile", "--radius", "20"},
        {"growth-profile", "--group", "C2 wr Z", "--radii", "1", "5", "9"},
        {"entropy-exact", "--steps", "5"},
        {"audit-inequalities", "--trials", "500", "--steps", "4"},
        {"visit-profile", "--steps", "100", "--trials", "10"},
        {"entropy-growth", "--n-min", "6", "--n-max", "8", "--trials", "20"},
        {"entropy-growth", "--group", "C2 wr Z", "--n-min", "6", "--n-max", "8", "--trials", "20"},
        {"expansion-check", "--steps", "10", "--states", "16"},
        {"binomial-bound", "--steps", "20", "--m", "3"},
    };
    for (const auto& args : runs) {
        INFO(args.front());
        for (const char* fmt : {"csv", "json"}) {
            auto a = args;
            a.insert(a.end(), {"--format", fmt});
            const auto r = call(a);
            CHECK(r.code == 0);
            CHECK(r.err.empty());
            if (std::string(fmt) == "json") CHECK(nlohmann::json::accept(r.out));
        }
    }
    const auto h = call({"harmonic-check", "--radius", "30", "--tol", "1e-8", "--format", "json"});
    CHECK(nlohmann::json::parse(h.out)["summary"]["pass"] == true);
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"no-such-command"}).code == 2);
    CHECK(call({"entropy-exact", "--group", "C2 wr"}).code == 2);
    CHECK(call({"coupling", "--radius", "4", "--radii", "4", "8"}).code == 2);
    CHECK(call({"kernel", "--radius", "500"}).code == 2);
    CHECK(call({"kernel", "--tol", "1e-20"}).code == 2);
    CHECK(call({"kernel", "--format", "xml"}).code == 2);
    CHECK(call({"entropy-growth", "--depth", "4", "--n-min", "4", "--n-max", "4"}).code == 2);
    CHECK(call({"visit-profile", "--group", "C2"}).code == 2);
    CHECK(call({"kernel", "--out", "/proc/no/such/dir/x.csv"}).code == 2);
    CHECK(call({"kernel", "--out", "x.csv", "--format", "json"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("file outputs, sidecar and determinism") {
    const auto dir = scratch("files");
    const auto a = dir / "a.json", b = dir / "b.json";
    const std::vector<std::string> base{"audit-inequalities", "--trials", "300", "--seed", "4", "--steps", "3"};
    auto args = base;
    args.insert(args.end(), {"--out", a.string()});
    REQUIRE(call(args).code == 0);
    const auto first = slurp(a);
    REQUIRE(call(args).code == 0);
    CHECK(slurp(a) == first);
    // thread count does not change the data
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    REQUIRE(call(threaded).code == 0);
    CHECK(slurp(a) == first);

    const auto side = nlohmann::json::parse(slurp(a.string() + ".run.json"));
    CHECK(side.contains("wall_clock_seconds"));
    CHECK(side["subcommand"] == "audit-inequalities");
    CHECK(side["seed"] == 4);
    const auto data = nlohmann::json::parse(first);
    CHECK(data["manifest"]["outputs"][0] == a.string());
    CHECK_FALSE(data["manifest"].contains("wall_clock_seconds"));

    REQUIRE(call({"audit-inequalities", "--trials", "300", "--seed", "5", "--steps", "3", "--out", b.string()}).code == 0);
    CHECK(nlohmann::json::parse(slurp(b))["manifest"]["seed"] == 5);
}

TEST_CASE("output directory from the environment") {
    const auto dir = scratch("env");
    ::setenv("LAMPLIGHT_OUT_DIR", dir.c_str(), 1);
    const auto r = call({"binomial-bound", "--steps", "5", "--m", "2"});
    const auto rel = call({"entropy-exact", "--steps", "2", "--out", "sub/h.csv"});
    ::unsetenv("LAMPLIGHT_OUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(dir / "binomial-bound.csv"));
    CHECK(fs::exists(dir / "binomial-bound.csv.run.json"));
    CHECK(rel.code == 0);
    CHECK(slurp(dir / "sub" / "h.csv").rfind("n,entropy,increment,lower_curve\n", 0) == 0);
}
