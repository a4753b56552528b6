#include "lamplight/kernel/potential_kernel.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/parallel.hpp"
#include "lamplight/walk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace lamplight::walk {

namespace {

inline void srw_step(Rng& rng, std::int64_t& x, std::int64_t& y) {
    switch (rng.below(4)) {
        case 0: ++x; break;
        case 1: --x; break;
        case 2: ++y; break;
        default: --y; break;
    }
}

}  // namespace

HittingResult hitting_probability(std::int64_t gx, std::int64_t gy, std::int64_t r, std::size_t trials,
                                  std::uint64_t seed) {
    const std::int64_t g = std::llabs(gx) + std::llabs(gy);
    if (g == 0) throw ParameterError("start must differ from the origin");
    if (r <= g) throw ParameterError("need |g| < r");
    if (trials == 0) throw ParameterError("trials must be > 0");
    auto escaped = run_trials<char>(trials, [&](std::size_t t) -> char {
        Rng rng(trial_seed(seed, t));
        std::int64_t x = gx, y = gy;
        for (;;) {
            srw_step(rng, x, y);
            if (x == 0 && y == 0) return 0;
            if (std::llabs(x) + std::llabs(y) >= r) return 1;
        }
    });
    std::size_t hits = 0;
    for (char e : escaped) hits += static_cast<std::size_t>(e);
    HittingResult out;
    out.estimate.trials = trials;
    out.estimate.value = static_cast<double>(hits) / static_cast<double>(trials);
    out.estimate.std_error = stats::proportion_std_error(out.estimate.value, trials);
    const double level = 2.0 / std::numbers::pi * std::log(static_cast<double>(r)) + kernel::kappa();
    out.predicted = kernel::potential_kernel(gx, gy) / level;
    return out;
}

std::vector<std::int64_t> default_exit_grid(std::int64_t r) {
    std::vector<std::int64_t> grid;
    for (int i = 1; i <= 12; ++i) grid.push_back(std::max<std::int64_t>(1, i * r * r / 4));
    return grid;
}

ExitTail exit_time_tail(std::int64_t r, std::span<const std::int64_t> M_grid, std::size_t trials, std::uint64_t seed) {
    if (r < 1) throw ParameterError("exit radius must be >= 1");
    if (trials == 0) throw ParameterError("trials must be > 0");
    auto exits = run_trials<std::int64_t>(trials, [&](std::size_t t) {
        Rng rng(trial_seed(seed, t));
        std::int64_t x = 0, y = 0, time = 0;
        while (std::llabs(x) + std::llabs(y) <= r) {
            srw_step(rng, x, y);
            ++time;
        }
        return time;
    });
    std::sort(exits.begin(), exits.end());
    ExitTail out;
    out.r = r;
    std::vector<double> fx, fy;
    for (auto M : M_grid) {
        TailPoint p;
        p.M = M;
        p.count = static_cast<std::size_t>(exits.end() - std::upper_bound(exits.begin(), exits.end(), M));
        p.tail = static_cast<double>(p.count) / static_cast<double>(trials);
        p.std_error = stats::proportion_std_error(p.tail, trials);
        out.points.push_back(p);
        if (p.count >= 10) {
            fx.push_back(static_cast<double>(M));
            fy.push_back(std::log(p.tail));
        }
    }
    out.fitted_points = fx.size();
    if (fx.size() >= 2) out.fit = stats::fit_line(fx, fy);
    return out;
}

}  // namespace lamplight::walk
