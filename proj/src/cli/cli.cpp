#include "lamplight/cli/cli.hpp"

#include "lamplight/entropy/walk_entropy.hpp"
#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/group/word_length.hpp"
#include "lamplight/growth/entropy_growth.hpp"
#include "lamplight/harmonic/harmonic.hpp"
#include "lamplight/kernel/potential_kernel.hpp"
#include "lamplight/ops/operators.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/parallel.hpp"
#include "lamplight/util/rng.hpp"
#include "lamplight/walk/experiments.hpp"
#include "lamplight/walk/measure.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#ifndef LAMPLIGHT_VERSION
#define LAMPLIGHT_VERSION "0.0.0"
#endif

namespace lamplight::cli {

namespace {

namespace fs = std::filesystem;
using group::GroupSpec;
using nlohmann::json;

/// Output file problems are reported like bad arguments.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Params {
    std::string group;
    std::int64_t steps = 0;
    std::size_t trials = 0;
    std::int64_t radius = 0;
    std::vector<std::int64_t> radii;
    std::uint64_t seed = 1;
    double tol = 0.0;
    std::string out;
    std::string format;
    unsigned threads = 0;
    // subcommand specific
    std::string normalization = "standard";
    std::string function = "auto";
    bool exact = false;
    int depth = 1;
    int n_min = 10, n_max = 16;
    int m = 3;
    double alpha = 0.5;
    std::size_t states = 64;
    std::vector<double> p;
};

struct Command {
    CLI::App* app = nullptr;
    Params params;
    /// Parameters recorded in the manifest, in registration order.
    std::vector<std::pair<std::string, std::function<json()>>> fields;
    std::function<Report(const Params&)> handler;
};

template <class T>
void add(Command& c, const std::string& flag, T& value, const std::string& help) {
    c.app->add_option(flag, value, help)->capture_default_str();
    c.fields.emplace_back(flag.substr(2), [&value] { return json(value); });
}

json rounded_params(json j) {
    // doubles in the manifest use the same 12-digit rendering as the data
    if (j.is_number_float()) return std::strtod(format_number(j.get<double>()).c_str(), nullptr);
    if (j.is_array())
        for (auto& v : j) v = rounded_params(v);
    return j;
}

walk::StepMeasure default_measure(const GroupSpec& spec) {
    if (spec.is_wreath()) return walk::move_or_switch(default_measure(spec.lamp()), default_measure(spec.base()));
    return walk::uniform_measure(spec);
}

const GroupSpec& lamplighter_grid() {
    static const GroupSpec s = group::parse_group_spec("C2 wr Z2");
    return s;
}

std::shared_ptr<const kernel::KernelTable> paper_table(std::int64_t radius) {
    return std::make_shared<const kernel::KernelTable>(
        kernel::build_kernel_table(radius, 1e-12, kernel::Normalization::Paper));
}

void require_positive(std::int64_t v, const char* name) {
    if (v < 1) throw ParameterError(std::string(name) + " must be >= 1");
}

// ---- subcommands -----------------------------------------------------------

Report coupling(const Params& p) {
    std::vector<std::int64_t> radii = p.radius > 0 ? std::vector<std::int64_t>{p.radius} : p.radii;
    if (radii.empty()) throw ParameterError("no radii given");
    for (auto r : radii) require_positive(r, "radius");
    if (p.trials < 2) throw ParameterError("--trials must be >= 2");
    const auto fit = walk::gluing_scaling(radii, p.trials, p.seed);
    Report rep{{"r", "estimate", "stderr"}, {}, json::object()};
    for (std::size_t i = 0; i < radii.size(); ++i)
        rep.rows.push_back({radii[i], fit.estimates[i].value, fit.estimates[i].std_error});
    if (radii.size() >= 2 && std::all_of(fit.estimates.begin(), fit.estimates.end(), [](auto& e) { return e.value > 0; }))
        rep.summary = {{"loglog_slope", fit.fit.slope}, {"intercept", fit.fit.intercept}, {"r_squared", fit.fit.r_squared}};
    return rep;
}

Report kernel_cmd(const Params& p) {
    kernel::Normalization norm;
    if (p.normalization == "standard") norm = kernel::Normalization::Standard;
    else if (p.normalization == "paper") norm = kernel::Normalization::Paper;
    else throw ParameterError("--normalization must be standard or paper");
    const auto t = kernel::build_kernel_table(p.radius, p.tol, norm);
    Report rep{{"x", "y", "value"}, {}, json::object()};
    for (std::int64_t y = -t.radius; y <= t.radius; ++y)
        for (std::int64_t x = -t.radius; x <= t.radius; ++x) rep.rows.push_back({x, y, t.at(x, y)});
    const auto inv = kernel::scan_invariants(t);
    rep.summary = {{"radius", t.radius},
                   {"normalization", p.normalization},
                   {"offset", t.offset},
                   {"accuracy", t.accuracy},
                   {"kappa", kernel::kappa()},
                   {"max_off_origin_residual", inv.max_off_origin_residual},
                   {"origin_defect", inv.origin_defect},
                   {"max_symmetry_gap", inv.max_symmetry_gap}};
    if (t.radius >= 25) rep.summary["asymptotic_deviation"] = kernel::asymptotic_deviation(t);
    return rep;
}

Report harmonic_check(const Params& p) {
    const auto spec = group::parse_group_spec(p.group);
    if (p.radius < 0) throw ParameterError("--radius must be >= 0");
    double worst = 0.0;
    std::string function;
    std::size_t points = 0;
    if (spec == lamplighter_grid()) {
        const auto h = harmonic::HarmonicFunction::lamp_sign_times_kernel(paper_table(p.radius + 1));
        worst = harmonic::max_lamp_kernel_residual(h, p.radius);
        function = "lamp-sign-kernel";
        points = static_cast<std::size_t>(2 * (2 * p.radius * (p.radius + 1) + 1));
    } else {
        if (!spec.is_wreath()) throw SpecMismatch("harmonic-check needs a wreath product group");
        const auto h = harmonic::HarmonicFunction::base_coordinate(spec, 0);
        const auto measure = default_measure(spec);
        const auto ball = group::bfs_ball(spec, static_cast<int>(p.radius));
        for (const auto& [x, d] : ball) worst = std::max(worst, harmonic::harmonicity_residual(h, measure, x));
        function = "base-coordinate";
        points = ball.size();
    }
    Report rep{{"group", "function", "radius", "points", "max_residual", "threshold", "pass"}, {}, json::object()};
    rep.rows.push_back({spec.to_string(), function, p.radius, static_cast<std::int64_t>(points), worst, p.tol, worst <= p.tol});
    rep.summary = {{"max_residual", worst}, {"pass", worst <= p.tol}};
    return rep;
}

Report growth_profile_cmd(const Params& p) {
    const auto spec = group::parse_group_spec(p.group);
    std::vector<std::int64_t> radii = p.radii;
    if (radii.empty()) {
        require_positive(p.radius, "radius");
        for (std::int64_t r = 1; r <= p.radius; ++r) radii.push_back(r);
    }
    std::string fn = p.function;
    if (fn == "auto") fn = spec == lamplighter_grid() ? "log" : "coordinate";
    std::optional<harmonic::HarmonicFunction> h;
    if (fn == "log") {
        if (!(spec == lamplighter_grid())) throw SpecMismatch("the log-growth function lives on C2 wr Z2");
        h = harmonic::HarmonicFunction::lamp_sign_times_kernel(paper_table(*std::max_element(radii.begin(), radii.end()) + 1));
    } else if (fn == "coordinate") {
        h = harmonic::HarmonicFunction::base_coordinate(spec, 0);
    } else {
        throw ParameterError("--function must be auto, log or coordinate");
    }
    const auto mode = p.exact ? harmonic::GrowthMode::Exact : harmonic::GrowthMode::Certified;
    const auto prof = harmonic::growth_profile(*h, radii, mode);
    Report rep{{"r", "lower", "upper", "upper_over_log_r"}, {}, json::object()};
    double max_gap = 0.0, sum_ratio = 0.0;
    std::size_t window = 0;
    std::vector<double> lx, ly;
    for (const auto& g : prof) {
        const double lr = g.r >= 2 ? std::log(static_cast<double>(g.r)) : 0.0;
        rep.rows.push_back({g.r, g.lower, g.upper, lr > 0 ? g.upper / lr : std::nan("")});
        if (fn == "log" && g.r >= 30 && g.r <= 100) {
            const double ratio = g.upper / lr;
            sum_ratio += ratio;
            max_gap = std::max(max_gap, std::abs(ratio / (2.0 / std::numbers::pi) - 1.0));
            ++window;
            lx.push_back(lr);
            ly.push_back(g.upper);
        }
    }
    rep.summary = {{"function", fn}, {"mode", p.exact ? "exact" : "certified"}};
    if (window > 0) {
        rep.summary["window_mean_ratio"] = sum_ratio / static_cast<double>(window);
        rep.summary["target_ratio"] = 2.0 / std::numbers::pi;
        rep.summary["window_max_relative_gap"] = max_gap;
        if (lx.size() >= 2) rep.summary["slope_against_log_r"] = stats::fit_line(lx, ly).slope;
    }
    return rep;
}

Report entropy_exact(const Params& p) {
    const auto spec = group::parse_group_spec(p.group);
    if (p.steps < 0) throw ParameterError("--steps must be >= 0");
    const auto s = entropy::entropy_sequence(default_measure(spec), static_cast<std::size_t>(p.steps));
    Report rep{{"n", "entropy", "increment", "lower_curve"}, {}, json::object()};
    for (std::size_t n = 0; n < s.H.size(); ++n)
        rep.rows.push_back({static_cast<std::int64_t>(n), s.H[n], s.delta[n],
                            n == 0 ? std::nan("") : std::sqrt(static_cast<double>(n) / s.H[n])});
    rep.summary = {{"increments_nonincreasing", s.increments_nonincreasing},
                   {"scaled_increment_bound", s.scaled_increment_bound}};
    return rep;
}

Report audit(const Params& p) {
    entropy::AuditConfig cfg;
    cfg.fuzz_trials = p.trials;
    cfg.seed = p.seed;
    cfg.walk_group = p.group;
    if (p.steps < 1) throw ParameterError("--steps must be >= 1");
    cfg.walk_n_max = static_cast<std::size_t>(p.steps);
    const auto results = entropy::check_inequality_suite(cfg);
    Report rep{{"inequality", "trials", "violations", "max_ratio", "seed"}, {}, json::object()};
    json audits = json::array();
    for (const auto& r : results) {
        rep.rows.push_back({r.inequality, static_cast<std::int64_t>(r.trials), static_cast<std::int64_t>(r.violations),
                            r.max_ratio, std::to_string(r.seed)});
        audits.push_back(entropy::to_json(r));
    }
    rep.summary = {{"audits", audits}};
    return rep;
}

Report visit_profile(const Params& p) {
    auto spec = group::parse_group_spec(p.group);
    if (spec.is_wreath()) spec = spec.base();
    if (p.steps < 0) throw ParameterError("--steps must be >= 0");
    const auto prof = growth::visit_count_profile(spec, p.steps, p.seed);
    std::vector<std::pair<group::Element, std::int64_t>> sorted(prof.counts.begin(), prof.counts.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::pair(a.first.y(), a.first.x()) < std::pair(b.first.y(), b.first.x());
    });
    Report rep{{"x", "y", "count"}, {}, json::object()};
    for (const auto& [z, k] : sorted) rep.rows.push_back({z.x(), z.y(), k});
    const double ln_n = p.steps > 0 ? std::log(static_cast<double>(p.steps)) : 0.0;
    rep.summary = {{"n", p.steps}, {"distinct", prof.distinct()}, {"total", prof.total()}, {"thick", prof.at_least(ln_n)}};
    if (p.trials >= 2) {
        const auto s = growth::visit_summary(spec, p.steps, p.trials, p.seed);
        rep.summary["mean_distinct"] = s.distinct.value;
        rep.summary["mean_distinct_stderr"] = s.distinct.std_error;
        rep.summary["mean_thick"] = s.thick.value;
        rep.summary["mean_thick_stderr"] = s.thick.std_error;
    }
    return rep;
}

Report entropy_growth_cmd(const Params& p) {
    const auto spec = group::parse_group_spec(p.group);
    if (!spec.is_wreath()) throw SpecMismatch("entropy-growth needs a wreath product group");
    if (p.n_min < 1 || p.n_max < p.n_min || p.n_max > 24) throw ParameterError("need 1 <= n-min <= n-max <= 24");
    std::vector<std::int64_t> ns;
    for (int e = p.n_min; e <= p.n_max; ++e) ns.push_back(std::int64_t{1} << e);
    std::vector<growth::GrowthRow> rows;
    if (spec == lamplighter_grid()) {
        rows = growth::iterated_growth_experiment(p.depth, ns, p.trials, p.seed);
    } else {
        if (p.depth != 1) throw ParameterError("depth > 1 is defined for C2 wr Z2 only");
        const bool grid = spec.base().kind() == GroupSpec::Kind::IntegerGrid;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto e = growth::conditional_entropy_lower_bound(spec.lamp(), spec.base(), ns[i], p.trials,
                                                                   splitmix64(p.seed + i));
            const double nd = static_cast<double>(ns[i]);
            const double ref = grid ? nd / std::log(nd) : std::sqrt(nd);
            rows.push_back({ns[i], e.value, e.std_error, ref, e.value / ref});
        }
    }
    Report rep{{"n", "estimate", "stderr", "reference", "ratio"}, {}, json::object()};
    double lo = INFINITY, hi = 0.0;
    for (const auto& r : rows) {
        rep.rows.push_back({r.n, r.estimate, r.std_error, r.reference, r.ratio});
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    rep.summary = {{"depth", p.depth}, {"nondecreasing", growth::nondecreasing_within_error(rows)}};
    if (rows.size() >= 2) {
        rep.summary["exponent"] = growth::exponent_fit(rows).slope;
        if (lo > 0) rep.summary["ratio_drift"] = hi / lo - 1.0;
    }
    return rep;
}

Report expansion_check(const Params& p) {
    const auto P = ops::FiniteMarkovOperator::cycle(p.states);
    const auto r = ops::lazy_power_expansion_check(P, p.alpha, p.steps, p.m);
    Report rep{{"identity", "size", "k", "m", "alpha", "max_discrepancy", "expansion_discrepancy",
                "difference_discrepancy", "coefficient_sup", "coefficient_bound"},
               {},
               json::object()};
    rep.rows.push_back({std::string("lazy-power-expansion"), static_cast<std::int64_t>(r.size), r.k,
                        static_cast<std::int64_t>(r.m), r.alpha, r.max_discrepancy(), r.expansion_discrepancy,
                        r.difference_discrepancy, r.coefficient_sup, r.coefficient_bound});
    rep.summary = ops::to_json(r);
    return rep;
}

Report binomial_bound(const Params& p) {
    require_positive(p.steps, "steps");
    if (p.m < 1) throw ParameterError("--m must be >= 1");
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1; n <= p.steps; ++n) ns.push_back(n);
    std::vector<double> ps = p.p;
    if (ps.empty())
        for (int i = 1; i <= 9; ++i) ps.push_back(i / 10.0);
    Report rep{{"m", "cases", "violations", "max_ratio", "worst_n", "worst_p"}, {}, json::object()};
    std::size_t cases = 0, violations = 0;
    double max_ratio = 0.0;
    for (int m = 1; m <= p.m; ++m) {
        const int ms[] = {m};
        const auto a = ops::verify_derivative_bound(ns, ms, ps);
        rep.rows.push_back({static_cast<std::int64_t>(m), static_cast<std::int64_t>(a.cases),
                            static_cast<std::int64_t>(a.violations), a.max_ratio, a.worst_n, a.worst_p});
        cases += a.cases;
        violations += a.violations;
        max_ratio = std::max(max_ratio, a.max_ratio);
    }
    rep.summary = {{"cases", cases}, {"violations", violations}, {"max_ratio", max_ratio}};
    return rep;
}

// ---- driver ----------------------------------------------------------------

void common(Command& c, bool group, bool steps, bool trials, bool radius, bool seed, bool tol) {
    if (group) add(c, "--group", c.params.group, "group expression");
    if (steps) add(c, "--steps", c.params.steps, "number of steps");
    if (trials) add(c, "--trials", c.params.trials, "Monte Carlo trials");
    if (radius) add(c, "--radius", c.params.radius, "radius");
    if (seed) add(c, "--seed", c.params.seed, "base seed");
    if (tol) add(c, "--tol", c.params.tol, "tolerance");
    c.app->add_option("--out", c.params.out, "output path");
    c.app->add_option("--format", c.params.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c.app->add_option("--threads", c.params.threads, "worker threads (0 = all cores)");
}

struct Registry {
    CLI::App app{"Lamplighter harmonic-function experiments", "lamplight"};
    std::vector<std::unique_ptr<Command>> commands;

    Command& make(const std::string& name, const std::string& desc, std::function<Report(const Params&)> fn) {
        auto c = std::make_unique<Command>();
        c->app = app.add_subcommand(name, desc);
        c->handler = std::move(fn);
        commands.push_back(std::move(c));
        return *commands.back();
    }

    Registry() {
        app.require_subcommand(1);
        app.set_version_flag("--version", LAMPLIGHT_VERSION);
        {
            auto& c = make("coupling", "coupled gluing probability against radius", coupling);
            c.params.radius = 0;
            c.params.radii = {8, 16, 32, 64, 128};
            c.params.trials = 100'000;
            common(c, false, false, true, false, true, false);
            auto* r = c.app->add_option("--radius", c.params.radius, "single radius");
            auto* rs = c.app->add_option("--radii", c.params.radii, "radius list")->capture_default_str();
            r->excludes(rs);
            c.fields.emplace_back("radius", [&c] { return json(c.params.radius); });
            c.fields.emplace_back("radii", [&c] { return json(c.params.radii); });
        }
        {
            auto& c = make("kernel", "potential kernel table of the simple walk on Z^2", kernel_cmd);
            c.params.radius = 10;
            c.params.tol = 1e-12;
            common(c, false, false, false, true, false, true);
            add(c, "--normalization", c.params.normalization, "standard or paper");
        }
        {
            auto& c = make("harmonic-check", "harmonicity residual scan", harmonic_check);
            c.params.group = "C2 wr Z2";
            c.params.radius = 30;
            c.params.tol = 1e-8;
            common(c, true, false, false, true, false, true);
        }
        {
            auto& c = make("growth-profile", "M_h(r) for a known harmonic function", growth_profile_cmd);
            c.params.group = "C2 wr Z2";
            c.params.radius = 100;
            common(c, true, false, false, false, false, false);
            auto* r = c.app->add_option("--radius", c.params.radius, "largest radius (all of 1..radius)")
                          ->capture_default_str();
            auto* rs = c.app->add_option("--radii", c.params.radii, "explicit radius list");
            r->excludes(rs);
            c.fields.emplace_back("radius", [&c] { return json(c.params.radius); });
            c.fields.emplace_back("radii", [&c] { return json(c.params.radii); });
            add(c, "--function", c.params.function, "auto, log or coordinate");
            c.app->add_flag("--exact", c.params.exact, "enumerate the Cayley ball (small radii)");
            c.fields.emplace_back("exact", [&c] { return json(c.params.exact); });
        }
        {
            auto& c = make("entropy-exact", "exact H(X_n) by convolution", entropy_exact);
            c.params.group = "C2 wr Z";
            c.params.steps = 10;
            common(c, true, true, false, false, false, false);
        }
        {
            auto& c = make("audit-inequalities", "fuzz and exact audits of the entropy inequalities", audit);
            c.params.group = "C2 wr Z";
            c.params.steps = 10;
            c.params.trials = 10'000;
            common(c, true, true, true, false, true, false);
        }
        {
            auto& c = make("visit-profile", "visit counts of the base walk", visit_profile);
            c.params.group = "Z2";
            c.params.steps = 4096;
            c.params.trials = 1;
            common(c, true, true, true, false, true, false);
        }
        {
            auto& c = make("entropy-growth", "conditional-entropy lower bound curves", entropy_growth_cmd);
            c.params.group = "C2 wr Z2";
            c.params.trials = 200;
            common(c, true, false, true, false, true, false);
            add(c, "--depth", c.params.depth, "iterated wreath depth (C2 wr Z2 only for depth > 1)");
            add(c, "--n-min", c.params.n_min, "smallest n = 2^n-min");
            add(c, "--n-max", c.params.n_max, "largest n = 2^n-max");
        }
        {
            auto& c = make("expansion-check", "lazy power expansion identities on a cycle", expansion_check);
            c.params.steps = 40;
            common(c, false, true, false, false, false, false);
            add(c, "--m", c.params.m, "difference order");
            add(c, "--alpha", c.params.alpha, "laziness");
            add(c, "--states", c.params.states, "cycle order");
        }
        {
            auto& c = make("binomial-bound", "binomial finite-difference bound audit", binomial_bound);
            c.params.steps = 200;
            c.params.m = 10;
            common(c, false, true, false, false, false, false);
            add(c, "--m", c.params.m, "largest difference order");
            c.params.p = {};
            c.app->add_option("--p", c.params.p, "success probabilities (default 0.1..0.9)");
            c.fields.emplace_back("p", [&c] { return json(c.params.p); });
        }
    }
};

Format resolve_format(const Params& p, const std::string& path) {
    std::string ext = path.empty() ? "" : fs::path(path).extension().string();
    const std::string implied = ext == ".json" ? "json" : ext == ".csv" ? "csv" : "";
    if (!p.format.empty() && !implied.empty() && p.format != implied)
        throw ParameterError("--format " + p.format + " conflicts with --out extension " + ext);
    const std::string f = !p.format.empty() ? p.format : !implied.empty() ? implied : "csv";
    return f == "json" ? Format::Json : Format::Csv;
}

void write_file(const fs::path& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError("cannot open " + path.string() + " for writing");
    f << data;
    if (!f.flush()) throw OutputError("failed writing " + path.string());
}

int execute(Command& c, const std::string& name, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const Params& p = c.params;
    const char* env_dir = std::getenv("LAMPLIGHT_OUT_DIR");
    fs::path path;
    if (!p.out.empty()) {
        path = p.out;
        if (path.is_relative() && env_dir && *env_dir) path = fs::path(env_dir) / path;
    } else if (env_dir && *env_dir) {
        path = fs::path(env_dir) / (name + (p.format == "json" ? ".json" : ".csv"));
    }
    const Format format = resolve_format(p, path.string());

    json params = json::object();
    for (const auto& [k, v] : c.fields) params[k] = rounded_params(v());
    json manifest = {{"tool", "lamplight"},
                     {"version", LAMPLIGHT_VERSION},
                     {"subcommand", name},
                     {"parameters", params},
                     {"format", format == Format::Json ? "json" : "csv"},
                     {"outputs", path.empty() ? json::array() : json::array({path.string()})}};
    if (params.contains("seed")) manifest["seed"] = params["seed"];

    const Report report = c.handler(p);
    std::ostringstream data;
    emit_report(report, format, manifest, data);

    if (path.empty()) {
        out << data.str();
        return kExitOk;
    }
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    write_file(path, data.str());
    json sidecar = manifest;
    sidecar["threads"] = thread_count();
    sidecar["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(fs::path(path.string() + ".run.json"), sidecar.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Registry reg;
    std::vector<const char*> argv{"lamplight"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        reg.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << reg.app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << LAMPLIGHT_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << reg.app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitParameter;
    }
    for (auto& c : reg.commands) {
        if (!c->app->parsed()) continue;
        const unsigned saved = thread_count();
        struct Restore {
            unsigned n;
            ~Restore() { set_thread_count(n); }
        } restore{saved};
        if (c->params.threads) set_thread_count(c->params.threads);
        try {
            return execute(*c, c->app->get_name(), out);
        } catch (const ParseError& e) {
            err << "error: bad group expression: " << e.what() << '\n';
            return kExitParameter;
        } catch (const ParameterError& e) {
            err << "error: " << e.what() << '\n';
            return kExitParameter;
        } catch (const SpecMismatch& e) {
            err << "error: " << e.what() << '\n';
            return kExitParameter;
        } catch (const CapExceeded& e) {
            err << "error: " << e.what() << '\n';
            return kExitParameter;
        } catch (const ToleranceUnachievable& e) {
            err << "error: " << e.what() << '\n';
            return kExitParameter;
        } catch (const OutputError& e) {
            err << "error: " << e.what() << '\n';
            return kExitParameter;
        } catch (const std::exception& e) {
            err << "internal error: " << e.what() << '\n';
            return kExitInternal;
        }
    }
    err << "error: no subcommand\n";
    return kExitParameter;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace lamplight::cli
