#include "tausum/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "tausum/arcs.hpp"
#include "tausum/expsum.hpp"
#include "tausum/moments.hpp"
#include "tausum/parallel.hpp"

namespace tausum {

namespace {

i64 next_pow2_at_least(i64 v) {
    i64 n = 1;
    while (n < v) n <<= 1;
    return n;
}

}  // namespace

PointwiseSup pointwise_bound_scan(i64 x, double nu, i64 n) {
    if (!(nu > 0.0 && nu <= 0.25))
        throw ParameterError("nu must lie in (0, 1/4], got " + std::to_string(nu));
    if (x < 16) throw ParameterError("scan needs X >= 16, got " + std::to_string(x));
    if (n < 4 * x)
        throw ParameterError("scan grid must have N >= 4X, got N = " + std::to_string(n));
    const ArithmeticTable table = sieve_divisor(x);
    const GridEvaluation grid = grid_eval(table, n);
    const double xd = static_cast<double>(x);
    const double p_cap = std::pow(xd, nu);
    const ArcParams params{x, nu, p_cap};
    const i64 witness_cap = std::max<i64>(1, static_cast<i64>(std::floor(xd / p_cap)));
    const double sqrt_x = std::sqrt(xd);
    const double major_denom = std::pow(xd, 0.5 + nu) * std::log(xd);
    const double nd = static_cast<double>(n);

    auto block = [&](std::size_t lo, std::size_t hi) {
        PointwiseSup sup;
        for (std::size_t k = lo; k < hi; ++k) {
            const double alpha = static_cast<double>(k) / nd;
            const double amp = std::abs(grid.values[k]);
            Fraction frac;
            double delta = 0.0;
            if (detail::major_hit(params, alpha, frac, delta)) {
                const double qd = static_cast<double>(frac.den);
                const double beta = alpha - frac.value();
                const cd main = (1.0 / qd) *
                                (std::log(xd / (qd * qd)) + 2.0 * kEulerGamma - 1.0) *
                                kernel_eval(x, beta);
                const double resid = std::abs(grid.values[k] - main) / major_denom;
                sup.sup_major_resid = std::max(sup.sup_major_resid, resid);
            } else {
                const RationalApprox w = best_rational_approx(alpha, witness_cap);
                const double qd = static_cast<double>(w.frac.den);
                const double rhs =
                    xd * std::log(2.0 * xd * qd) * (1.0 / qd + 1.0 / sqrt_x + qd / xd);
                sup.sup_minor = std::max(sup.sup_minor, amp / rhs);
            }
        }
        return sup;
    };
    return parallel_range_reduce<PointwiseSup>(
        grid.values.size(), PointwiseSup{}, block, [](PointwiseSup a, PointwiseSup b) {
            return PointwiseSup{std::max(a.sup_minor, b.sup_minor),
                                std::max(a.sup_major_resid, b.sup_major_resid)};
        });
}

VerificationReport theorem_ratio_table(double p, std::vector<i64> xs, double nu, double tol) {
    if (!(p > 2.0)) throw ParameterError("ratio table needs p > 2");
    if (!(nu > 0.0 && nu <= 0.25))
        throw ParameterError("nu must lie in (0, 1/4], got " + std::to_string(nu));
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    if (xs.empty()) throw ParameterError("X list is empty");
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.front() < 64) throw ParameterError("every X must be >= 64");

    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.meta.tol = tol;
    report.meta.threads = thread_count();
    for (const i64 x : xs) {
        const ArithmeticTable table = sieve_divisor(x);
        const GridEvaluation base = grid_eval(table, next_pow2_at_least(8 * x));
        GridEvaluation final_grid;
        const MomentEstimate total = moment_quadrature(base, p, tol, &final_grid);
        const ArcFamily family = build_arc_family(x, nu);
        const ArcMoments split = moment_on_arcs(final_grid, family, p);
        const PointwiseSup sups = pointwise_bound_scan(x, nu, next_pow2_at_least(4 * x));

        const double xd = static_cast<double>(x);
        const double lx = std::log(xd);
        RatioRow row;
        row.x = x;
        row.p = p;
        row.nu = nu;
        row.i_total = total.value;
        row.i_major = split.major.value;
        row.i_minor = split.minor.value;
        row.r = total.value / (std::pow(xd, p - 1.0) * std::pow(lx, p));
        row.minor_ratio =
            split.minor.value / (std::pow(xd, p - 1.0 - 0.5 * nu) * std::pow(lx, 4.0));
        row.sup_minor = sups.sup_minor;
        row.sup_major_resid = sups.sup_major_resid;
        report.rows.push_back(row);
        report.meta.grid_sizes.push_back(total.n);
        report.meta.predictions.push_back(major_arc_prediction(x, nu, p, tol).value);
    }
    const auto stop = std::chrono::steady_clock::now();
    report.meta.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
}

}  // namespace tausum
