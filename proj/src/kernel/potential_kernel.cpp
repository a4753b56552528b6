#include "lamplight/kernel/potential_kernel.hpp"

#include "lamplight/simd/kernels.hpp"
#include "lamplight/util/errors.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>

namespace lamplight::kernel {

namespace {

// a = rational + irrational / pi, both exact.
struct Exact {
    mpq_class rational;
    mpq_class irrational;
};

Exact combine(const Exact& a, long ca, const Exact& b, long cb) {
    Exact r;
    r.rational = ca * a.rational + cb * b.rational;
    r.irrational = ca * a.irrational + cb * b.irrational;
    return r;
}

Exact minus(Exact a, const Exact& b) {
    a.rational -= b.rational;
    a.irrational -= b.irrational;
    return a;
}

long magnitude_bits(const mpq_class& q) {
    if (q == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 1;
}

class Evaluator {
public:
    Evaluator() { mpfr_inits2(64, pi_, a_, b_, static_cast<mpfr_ptr>(nullptr)); }
    ~Evaluator() { mpfr_clears(pi_, a_, b_, static_cast<mpfr_ptr>(nullptr)); }
    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    double operator()(const Exact& v) {
        long bits = std::max(magnitude_bits(v.rational), magnitude_bits(v.irrational));
        auto prec = static_cast<mpfr_prec_t>(std::max(bits, 0L) + 128);
        if (prec > mpfr_get_prec(pi_)) {
            mpfr_set_prec(pi_, 2 * prec);
            mpfr_const_pi(pi_, MPFR_RNDN);
        }
        mpfr_set_prec(a_, prec);
        mpfr_set_prec(b_, prec);
        mpfr_set_q(a_, v.rational.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(b_, v.irrational.get_mpq_t(), MPFR_RNDN);
        mpfr_div(b_, b_, pi_, MPFR_RNDN);
        mpfr_add(a_, a_, b_, MPFR_RNDN);
        return mpfr_get_d(a_, MPFR_RNDN);
    }

private:
    mpfr_t pi_, a_, b_;
};

// Octant 0 <= y <= x <= n in double precision, index x(x+1)/2 + y.
std::vector<double> build_octant(std::int64_t n) {
    std::vector<double> octant(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
    auto slot = [](std::int64_t x, std::int64_t y) { return static_cast<std::size_t>(x * (x + 1) / 2 + y); };
    Evaluator eval;

    // diagonal: a(k, k) = (4/pi) sum_{j=1}^k 1/(2j - 1)
    mpq_class odd_sum = 0;
    auto diagonal = [&] {
        Exact d;
        d.irrational = 4 * odd_sum;
        return d;
    };

    std::vector<Exact> prev(1);  // column 0: a(0, 0) = 0
    octant[0] = 0.0;
    if (n == 0) return octant;
    odd_sum += mpq_class(1, 1);
    std::vector<Exact> cur(2);
    cur[0].rational = 1;
    cur[1] = diagonal();
    octant[slot(1, 0)] = 1.0;
    octant[slot(1, 1)] = eval(cur[1]);

    for (std::int64_t k = 1; k < n; ++k) {
        std::vector<Exact> next(static_cast<std::size_t>(k + 2));
        // harmonicity at (k, 0), using a(k, -1) = a(k, 1)
        next[0] = minus(combine(cur[0], 4, prev[0], -1), combine(cur[1], 2, cur[1], 0));
        for (std::int64_t y = 1; y < k; ++y) {
            auto uy = static_cast<std::size_t>(y);
            Exact v = combine(cur[uy], 4, prev[uy], -1);
            v = minus(std::move(v), combine(cur[uy + 1], 1, cur[uy - 1], 1));
            next[uy] = std::move(v);
        }
        // harmonicity at (k, k), using a(k - 1, k) = a(k, k - 1) and a(k, k + 1) = a(k + 1, k)
        auto uk = static_cast<std::size_t>(k);
        next[uk] = combine(cur[uk], 2, cur[uk - 1], -1);
        odd_sum += mpq_class(1, 2 * (k + 1) - 1);
        next[uk + 1] = diagonal();
        for (std::int64_t y = 0; y <= k + 1; ++y) octant[slot(k + 1, y)] = eval(next[static_cast<std::size_t>(y)]);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return octant;
}

struct Cache {
    std::mutex mutex;
    std::int64_t extent = -1;
    std::vector<double> octant;
};

Cache& cache() {
    static Cache c;
    return c;
}

// Octant values up to at least `extent`, built once and shared.
double octant_value(std::int64_t x, std::int64_t y, std::int64_t extent_hint) {
    x = std::abs(x);
    y = std::abs(y);
    if (y > x) std::swap(x, y);
    auto& c = cache();
    std::lock_guard lock(c.mutex);
    if (c.extent < x) {
        c.extent = std::max(x, extent_hint);
        c.octant = build_octant(c.extent);
    }
    return c.octant[static_cast<std::size_t>(x * (x + 1) / 2 + y)];
}

// Values are correctly rounded doubles (error ~1e-16); stated accuracies below
// this leave no room for the double arithmetic done on the table.
constexpr double kRoundingFloor = 1e-13;

}  // namespace

double kappa() noexcept {
    return (2.0 * std::numbers::egamma + std::log(8.0)) / std::numbers::pi;
}

bool KernelTable::contains(std::int64_t x, std::int64_t y) const noexcept {
    return std::abs(x) <= radius && std::abs(y) <= radius;
}

double KernelTable::standard_at(std::int64_t x, std::int64_t y) const {
    if (!contains(x, y))
        throw ParameterError("point (" + std::to_string(x) + ", " + std::to_string(y) + ") outside kernel table of radius " +
                             std::to_string(radius));
    return values[index(x, y)];
}

double KernelTable::at(std::int64_t x, std::int64_t y) const { return standard_at(x, y) + offset; }

double potential_kernel(std::int64_t x, std::int64_t y, double tol) {
    if (!(tol >= 1e-12)) throw ParameterError("tol must be >= 1e-12");
    if (std::max(std::abs(x), std::abs(y)) > kRadiusCap)
        throw ToleranceUnachievable("point (" + std::to_string(x) + ", " + std::to_string(y) +
                                    ") lies beyond the exact recurrence cap " + std::to_string(kRadiusCap));
    return octant_value(x, y, 0);
}

KernelTable build_kernel_table(std::int64_t radius, double tol, Normalization normalization) {
    if (radius < 1) throw ParameterError("kernel table radius must be >= 1");
    if (radius > kRadiusCap)
        throw CapExceeded("kernel table radius " + std::to_string(radius) + " exceeds cap " + std::to_string(kRadiusCap));
    if (!(tol >= kRoundingFloor)) throw ParameterError("table tolerance must be >= 1e-13");

    KernelTable t;
    t.radius = radius;
    t.offset = normalization == Normalization::Paper ? 0.5 : 0.0;
    t.accuracy = tol;
    t.values.resize(t.side() * t.side());
    octant_value(radius, 0, radius);
    for (std::int64_t y = -radius; y <= radius; ++y)
        for (std::int64_t x = -radius; x <= radius; ++x) t.values[t.index(x, y)] = octant_value(x, y, radius);
    return t;
}

KernelInvariants scan_invariants(const KernelTable& table) {
    KernelInvariants inv;
    const auto r = table.radius;
    inv.max_off_origin_residual = simd::max_laplacian_defect(table.values, table.side(), table.index(0, 0));
    double around = table.values[table.index(1, 0)] + table.values[table.index(-1, 0)] + table.values[table.index(0, 1)] +
                    table.values[table.index(0, -1)];
    inv.origin_defect = 0.25 * around - table.values[table.index(0, 0)];
    for (std::int64_t y = -r; y <= r; ++y) {
        for (std::int64_t x = -r; x <= r; ++x) {
            double v = table.values[table.index(x, y)];
            for (auto [u, w] : {std::pair{-x, y}, {x, -y}, {y, x}, {-y, -x}})
                inv.max_symmetry_gap = std::max(inv.max_symmetry_gap, std::abs(v - table.values[table.index(u, w)]));
        }
    }
    return inv;
}

double asymptotic_deviation(const KernelTable& table, double inner_cutoff, double kappa_value) {
    if (table.radius < 25) throw ParameterError("asymptotic deviation needs radius >= 25");
    if (!(inner_cutoff >= 1.0) || inner_cutoff >= static_cast<double>(table.radius))
        throw ParameterError("inner cutoff must lie in [1, radius)");
    const double c = 2.0 / std::numbers::pi;
    const auto r = table.radius;
    double worst = 0.0;
    for (std::int64_t y = -r; y <= r; ++y) {
        for (std::int64_t x = -r; x <= r; ++x) {
            double norm = std::hypot(static_cast<double>(x), static_cast<double>(y));
            if (norm < inner_cutoff || norm > static_cast<double>(r)) continue;
            worst = std::max(worst, std::abs(table.values[table.index(x, y)] - (c * std::log(norm) + kappa_value)));
        }
    }
    return worst;
}

void write_csv(std::ostream& out, const KernelTable& table) {
    auto old = out.precision(17);
    out << "x,y,value\n";
    for (std::int64_t y = -table.radius; y <= table.radius; ++y)
        for (std::int64_t x = -table.radius; x <= table.radius; ++x) out << x << ',' << y << ',' << table.at(x, y) << '\n';
    out.precision(old);
}

nlohmann::json to_json(const KernelTable& table) {
    nlohmann::json grid = nlohmann::json::array();
    for (std::int64_t y = -table.radius; y <= table.radius; ++y) {
        nlohmann::json row = nlohmann::json::array();
        for (std::int64_t x = -table.radius; x <= table.radius; ++x) row.push_back(table.at(x, y));
        grid.push_back(std::move(row));
    }
    return {{"header",
             {{"radius", table.radius},
              {"normalization", table.offset == 0.0 ? "standard" : "paper"},
              {"offset", table.offset},
              {"accuracy", table.accuracy},
              {"layout", "rows y = -radius..radius, columns x = -radius..radius"}}},
            {"grid", std::move(grid)}};
}

}  // namespace lamplight::kernel
