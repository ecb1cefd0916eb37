#include "tausum/moments.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "tausum/detail/convolve.hpp"
#include "tausum/parallel.hpp"

namespace tausum {

namespace {

double pow_norm(double sq, double p) {
    if (p == 2.0) return sq;
    if (p == 4.0) return sq * sq;
    return std::pow(sq, 0.5 * p);
}

// (1/N) sum_k |values[k]|^p, fixed reduction tree.
double grid_power_mean(const GridEvaluation& grid, double p) {
    const double sum = parallel_sum<double>(grid.values.size(), [&](std::size_t k) {
        return pow_norm(std::norm(grid.values[k]), p);
    });
    return sum / static_cast<double>(grid.n);
}

double rel_change(double next, double cur) {
    const double scale = std::max(std::fabs(next), std::numeric_limits<double>::min());
    return std::fabs(next - cur) / scale;
}

// Per-side accumulator for the arc split; addition is componentwise so the
// pairwise tree applies unchanged.
struct SplitSum {
    double major = 0.0;
    double minor = 0.0;

    SplitSum& operator+=(const SplitSum& o) {
        major += o.major;
        minor += o.minor;
        return *this;
    }
    friend SplitSum operator+(SplitSum a, const SplitSum& b) { return a += b; }
};

std::vector<u64> to_u64(const std::vector<mpz_class>& v, bool& ok) {
    std::vector<u64> out(v.size());
    ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].fits_ulong_p()) {
            ok = false;
            return {};
        }
        out[i] = static_cast<u64>(v[i].get_ui());
    }
    return out;
}

}  // namespace

ConvolutionTable convolve_counts(const ArithmeticTable& table, int s) {
    const i64 x = table.length();
    if (s < 1) throw ParameterError("convolution order must be >= 1");
    if (static_cast<i64>(s) * x > kConvolutionBudget)
        throw SizeError("s*X = " + std::to_string(static_cast<i64>(s) * x) +
                        " exceeds the exact convolution budget " +
                        std::to_string(kConvolutionBudget));
    std::vector<u64> f(static_cast<std::size_t>(x));  // f[i] = f(i+1)
    for (i64 m = 1; m <= x; ++m) f[static_cast<std::size_t>(m - 1)] = table[m];
    std::vector<mpz_class> cur(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) cur[i] = static_cast<unsigned long>(f[i]);
    for (int k = 2; k <= s; ++k) {
        bool fits = false;
        const std::vector<u64> cur_u = to_u64(cur, fits);
        if (fits) {
            cur = detail::convolve_exact(cur_u, f);
        } else {
            // A previous fold outgrew u64 coefficients; fall back to direct
            // mpz accumulation, still guarded by the size budget.
            if (static_cast<double>(cur.size()) * static_cast<double>(f.size()) > 1.0e8)
                throw SizeError("convolution exceeds the exact-arithmetic budget");
            std::vector<mpz_class> next(cur.size() + f.size() - 1, mpz_class(0));
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (cur[i] == 0) continue;
                for (std::size_t j = 0; j < f.size(); ++j) {
                    if (f[j] == 0) continue;
                    mpz_addmul_ui(next[i + j].get_mpz_t(), cur[i].get_mpz_t(),
                                  static_cast<unsigned long>(f[j]));
                }
            }
            cur = std::move(next);
        }
    }
    return ConvolutionTable{s, x, s, std::move(cur)};
}

MomentEstimate moment_even_exact(const ArithmeticTable& table, int s) {
    const ConvolutionTable conv = convolve_counts(table, s);
    mpz_class total = 0;
    for (const mpz_class& c : conv.counts) total += c * c;
    return MomentEstimate{total.get_d(), 2.0 * s, MomentMethod::exact_integer, 0, 0.0};
}

MomentEstimate moment_quadrature(const GridEvaluation& grid, double p, double tol,
                                 GridEvaluation* final_grid) {
    if (!(p >= 1.0)) throw ParameterError("moment exponent must be >= 1");
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    double cur = grid_power_mean(grid, p);
    i64 n = grid.n;
    double rel = std::numeric_limits<double>::infinity();
    GridEvaluation work;
    bool refined = false;
    while (n < kGridCap) {
        GridEvaluation finer = regrid(refined ? work : grid, n * 2);
        const double next = grid_power_mean(finer, p);
        rel = rel_change(next, cur);
        cur = next;
        n *= 2;
        work = std::move(finer);
        refined = true;
        if (rel < tol) break;
    }
    if (final_grid) *final_grid = refined ? std::move(work) : grid;
    return MomentEstimate{cur, p, MomentMethod::quadrature, n, rel};
}

ArcMoments moment_on_arcs(const GridEvaluation& grid, const ArcFamily& family, double p) {
    if (grid.x != family.params.x)
        throw ParameterError("grid is over X = " + std::to_string(grid.x) +
                             " but the arc family over X = " + std::to_string(family.params.x));
    if (!(p >= 1.0)) throw ParameterError("moment exponent must be >= 1");
    const double nd = static_cast<double>(grid.n);
    const SplitSum split = parallel_sum<SplitSum>(grid.values.size(), [&](std::size_t k) {
        const double alpha = static_cast<double>(k) / nd;
        const double term = pow_norm(std::norm(grid.values[k]), p);
        Fraction frac;
        double delta = 0.0;
        SplitSum out;
        if (detail::major_hit(family.params, alpha, frac, delta))
            out.major = term;
        else
            out.minor = term;
        return out;
    });
    const double boundary_rel =
        2.0 * static_cast<double>(family.arcs.size()) / static_cast<double>(grid.n);
    MomentEstimate major{split.major / nd, p, MomentMethod::quadrature, grid.n, boundary_rel};
    MomentEstimate minor{split.minor / nd, p, MomentMethod::quadrature, grid.n, boundary_rel};
    return ArcMoments{major, minor};
}

MomentEstimate kernel_moment_even_exact(i64 x, int s) {
    if (s < 1 || s > kKernelMomentMaxS)
        throw ParameterError("kernel moment order must be in 1..=" +
                             std::to_string(kKernelMomentMaxS));
    if (x < 1) throw ParameterError("kernel length must be >= 1");
    if (x > kKernelMomentMaxX)
        throw SizeError("kernel moment length exceeds the budget " +
                        std::to_string(kKernelMomentMaxX));
    mpz_class total = 0;
    for (i64 n = s; n <= static_cast<i64>(s) * x; ++n) {
        const mpz_class c = restricted_compositions(n, s, x);
        total += c * c;
    }
    return MomentEstimate{total.get_d(), 2.0 * s, MomentMethod::exact_integer, 0, 0.0};
}

SingularSeriesValue singular_series(i64 x, double pcap, double p) {
    if (x < 1) throw ParameterError("X must be >= 1");
    if (!(pcap >= 1.0)) throw ParameterError("denominator cap must be >= 1");
    if (!(p > 0.0)) throw ParameterError("exponent must be positive");
    const i64 qmax = static_cast<i64>(std::floor(pcap));
    const ArithmeticTable phi = sieve_totient(qmax);
    const double lx = std::log(static_cast<double>(x));
    double value = 0.0;
    for (i64 q = 1; q <= qmax; ++q) {
        const double base = lx - 2.0 * std::log(static_cast<double>(q)) + 2.0 * kEulerGamma - 1.0;
        if (base <= 0.0)
            throw DomainError("singular series base nonpositive at q = " + std::to_string(q) +
                              " (cap too large for X = " + std::to_string(x) + ")");
        value += static_cast<double>(phi[q]) * std::pow(static_cast<double>(q), -p) *
                 std::pow(base, p);
    }
    return SingularSeriesValue{value, x, pcap, p};
}

MomentEstimate kernel_lp_on_interval(i64 x, double half_width, double p, double tol) {
    if (x < 1) throw ParameterError("kernel length must be >= 1");
    if (!(half_width > 0.0 && half_width <= 0.5))
        throw ParameterError("interval half-width must lie in (0, 1/2]");
    if (!(p >= 1.0)) throw ParameterError("moment exponent must be >= 1");
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    const double l = half_width;
    auto estimate = [&](i64 n) {
        const double h = 2.0 * l / static_cast<double>(n);
        const double interior =
            parallel_sum<double>(static_cast<std::size_t>(n - 1), [&](std::size_t i) {
                const double beta = -l + h * static_cast<double>(i + 1);
                return pow_norm(std::norm(kernel_eval(x, beta)), p);
            });
        const double ends = 0.5 * (pow_norm(std::norm(kernel_eval(x, -l)), p) +
                                   pow_norm(std::norm(kernel_eval(x, l)), p));
        return h * (interior + ends);
    };
    i64 n = 1024;
    double cur = estimate(n);
    double rel = std::numeric_limits<double>::infinity();
    while (n < (i64{1} << 22)) {
        n *= 2;
        const double next = estimate(n);
        rel = rel_change(next, cur);
        cur = next;
        if (rel < tol) break;
    }
    return MomentEstimate{cur, p, MomentMethod::quadrature, n, rel};
}

MomentEstimate major_arc_prediction(i64 x, double nu, double p, double tol) {
    if (!(nu > 0.0 && nu <= 0.25))
        throw ParameterError("nu must lie in (0, 1/4], got " + std::to_string(nu));
    if (!(p > 2.0)) throw ParameterError("prediction needs p > 2");
    const double cap = std::pow(static_cast<double>(x), nu);
    const SingularSeriesValue sing = singular_series(x, cap, p);
    const MomentEstimate kernel =
        kernel_lp_on_interval(x, cap / static_cast<double>(x), p, tol);
    return MomentEstimate{sing.value * kernel.value, p, MomentMethod::quadrature, kernel.n,
                          kernel.rel_error_est};
}

}  // namespace tausum
