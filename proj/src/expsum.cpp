#include "tausum/expsum.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "tausum/parallel.hpp"

namespace tausum {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi t) with t reduced mod 2 first, so large arguments keep full
// precision relative to t's own rounding.
double sinpi(double t) {
    const double s = t - 2.0 * std::round(t * 0.5);
    return std::sin(kPi * s);
}

// sum_{v=a}^{b} e(v theta). Geometric closed form; a run of equal terms when
// theta is resonant.
cd geometric_block(double theta, i64 a, i64 b) {
    if (b < a) return {0.0, 0.0};
    const double len = static_cast<double>(b - a + 1);
    const double tr = theta - std::round(theta);
    if (std::fabs(tr) < kResonantEps) return {len, 0.0};
    const double ratio = sinpi(tr * len) / sinpi(tr);
    return unit_phase(tr * (static_cast<double>(a + b) * 0.5)) * ratio;
}

bool is_pow2(i64 n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

// In-place radix-2 transform with the positive-exponent convention:
// out[k] = sum_n in[n] e(+nk/N). Twiddles are resynced from cos/sin every 32
// steps, which pins the rounding pattern independent of anything external.
void fft_pos(std::vector<cd>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                if (j % 32 == 0) {
                    const double a_j = ang * static_cast<double>(j);
                    w = cd(std::cos(a_j), std::sin(a_j));
                }
                const cd u = a[i + j];
                const cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

GridEvaluation grid_from_coeffs(std::vector<double> coeffs, i64 x, i64 n) {
    if (!is_pow2(n)) throw ParameterError("grid size must be a power of two, got " + std::to_string(n));
    if (n < x + 1) {
        throw ParameterError("grid size " + std::to_string(n) + " aliases the sum of length " +
                             std::to_string(x) + " (need N >= X+1)");
    }
    std::vector<cd> a(static_cast<std::size_t>(n), cd{0.0, 0.0});
    for (i64 m = 1; m <= x; ++m)
        a[static_cast<std::size_t>(m)] = cd{coeffs[static_cast<std::size_t>(m)], 0.0};
    fft_pos(a);
    return GridEvaluation{n, x, std::move(a), std::move(coeffs)};
}

}  // namespace

cd unit_phase(double t) {
    const double r = t - std::round(t);
    const double a = 2.0 * kPi * r;
    return {std::cos(a), std::sin(a)};
}

cd eval_direct(const ArithmeticTable& table, PhasePoint alpha) {
    const i64 x = table.length();
    const double a = alpha.alpha;
    return parallel_sum<cd>(static_cast<std::size_t>(x), [&](std::size_t i) {
        const i64 m = static_cast<i64>(i) + 1;
        return static_cast<double>(table[m]) * unit_phase(a * static_cast<double>(m));
    });
}

HyperbolaParts eval_hyperbola(i64 x, PhasePoint alpha) {
    if (x < 1) throw ParameterError("sum length must be >= 1");
    const double a = alpha.alpha;
    const i64 r = isqrt(x);
    const cd t = parallel_sum<cd>(static_cast<std::size_t>(r), [&](std::size_t i) {
        const i64 u = static_cast<i64>(i) + 1;
        return geometric_block(a * static_cast<double>(u), u + 1, x / u);
    });
    const cd e = parallel_sum<cd>(static_cast<std::size_t>(r), [&](std::size_t i) {
        const i64 u = static_cast<i64>(i) + 1;
        return unit_phase(a * static_cast<double>(u * u));
    });
    return HyperbolaParts{t, e, 2.0 * t + e};
}

cd kernel_eval(i64 x, double beta) {
    if (x < 1) throw ParameterError("kernel length must be >= 1");
    return geometric_block(beta, 1, x);
}

double kernel_envelope(i64 x, double beta) {
    const double d = circle_norm(beta);
    if (d < kResonantEps) return static_cast<double>(x);
    return std::min(static_cast<double>(x), 1.0 / d);
}

GridEvaluation grid_eval(const ArithmeticTable& table, i64 n) {
    const i64 x = table.length();
    std::vector<double> coeffs(static_cast<std::size_t>(x) + 1, 0.0);
    for (i64 m = 1; m <= x; ++m)
        coeffs[static_cast<std::size_t>(m)] = static_cast<double>(table[m]);
    return grid_from_coeffs(std::move(coeffs), x, n);
}

GridEvaluation regrid(const GridEvaluation& grid, i64 n) {
    return grid_from_coeffs(grid.coeffs, grid.x, n);
}

MinSumBound minsum_bound(i64 x, const RationalApprox& approx) {
    if (x < 1) throw ParameterError("sum length must be >= 1");
    const double alpha = approx.alpha;
    const i64 r = isqrt(x);
    const double minsum =
        parallel_sum<double>(static_cast<std::size_t>(r), [&](std::size_t i) {
            const i64 u = static_cast<i64>(i) + 1;
            const double cap = static_cast<double>(x) / static_cast<double>(u);
            const double d = circle_norm(alpha * static_cast<double>(u));
            if (d < kResonantEps) return cap;
            return std::min(cap, 1.0 / d);
        });
    const double q = static_cast<double>(approx.frac.den);
    const double xd = static_cast<double>(x);
    const double rhs = xd * std::log(2.0 * xd * q) * (1.0 / q + 1.0 / std::sqrt(xd) + q / xd);
    return MinSumBound{minsum, rhs};
}

RationalTauSum rational_tau_sum(const ArithmeticTable& table, const Fraction& frac) {
    const i64 x = table.length();
    const i64 q = frac.den;
    const i64 a = frac.num % q;  // the 1/1 convention lands on phase 0
    cd exact;
    if (q <= (1 << 20)) {
        std::vector<cd> roots(static_cast<std::size_t>(q));
        for (i64 s = 0; s < q; ++s)
            roots[static_cast<std::size_t>(s)] =
                unit_phase(static_cast<double>(s) / static_cast<double>(q));
        exact = parallel_sum<cd>(static_cast<std::size_t>(x), [&](std::size_t i) {
            const i64 m = static_cast<i64>(i) + 1;
            return static_cast<double>(table[m]) * roots[static_cast<std::size_t>((a * m) % q)];
        });
    } else {
        exact = parallel_sum<cd>(static_cast<std::size_t>(x), [&](std::size_t i) {
            const i64 m = static_cast<i64>(i) + 1;
            const i64 am = static_cast<i64>(static_cast<unsigned __int128>(a) *
                                            static_cast<unsigned __int128>(m) %
                                            static_cast<unsigned __int128>(q));
            const double t = static_cast<double>(am) / static_cast<double>(q);
            return static_cast<double>(table[m]) * unit_phase(t);
        });
    }
    const double xd = static_cast<double>(x);
    const double qd = static_cast<double>(q);
    const double main = (xd / qd) * (std::log(xd / (qd * qd)) + 2.0 * kEulerGamma - 1.0);
    return RationalTauSum{exact, main, exact - main};
}

}  // namespace tausum
