#include "tausum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tausum {

namespace {

// Two deltas closer than this are treated as equal so the smaller q wins.
constexpr double kTieEps = 1e-12;

void check_table_size(i64 x) {
    if (x < 1) throw SizeError("table length must be >= 1, got " + std::to_string(x));
    if (x > kTableCeiling) {
        throw SizeError("table length " + std::to_string(x) + " exceeds ceiling " +
                        std::to_string(kTableCeiling));
    }
}

// Nearest-integer numerator for q*alpha, mapped onto the fraction convention:
// a = 0 and a = q both name the circle point 0, i.e. the fraction 1/1.
Fraction canonical_fraction(i64 a_raw, i64 q) {
    if (a_raw <= 0 || a_raw >= q) return Fraction{1, 1};
    const i64 g = std::gcd(a_raw, q);
    return Fraction{a_raw / g, q / g};
}

RationalApprox approx_exhaustive(double alpha, i64 max_den) {
    i64 best_q = 1;
    double best_d = std::numeric_limits<double>::infinity();
    for (i64 q = 1; q <= max_den; ++q) {
        const double t = static_cast<double>(q) * alpha;
        const double d = std::fabs(t - std::round(t));
        if (d < best_d - kTieEps) {
            best_d = d;
            best_q = q;
        }
    }
    const double t = static_cast<double>(best_q) * alpha;
    const i64 a_raw = static_cast<i64>(std::llround(t));
    return RationalApprox{canonical_fraction(a_raw, best_q), alpha, best_d};
}

// Largest continued-fraction convergent denominator <= max_den. Lagrange:
// every q below the next convergent denominator has ||q alpha|| at least as
// large, so this is the global minimizer (smallest such q on exact ties).
RationalApprox approx_convergents(double alpha, i64 max_den) {
    i64 p_mm = 0, p_m = 1;  // p_{-2}, p_{-1}
    i64 q_mm = 1, q_m = 0;
    i64 best_p = 0, best_q = 1;
    double y = alpha;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(y);
        if (!(fl >= 0.0) || fl > 9.2e18) break;  // NaN or past any useful term
        const i64 a = static_cast<i64>(fl);
        if (q_m > 0 && a > (std::numeric_limits<i64>::max() - q_mm) / q_m) break;
        const i64 p = a * p_m + p_mm;
        const i64 q = a * q_m + q_mm;
        if (q > max_den) break;
        p_mm = p_m;
        p_m = p;
        q_mm = q_m;
        q_m = q;
        if (q >= 1) {
            best_p = p;
            best_q = q;
        }
        const double frac = y - fl;
        if (frac < 1e-15) break;  // alpha is (numerically) rational: exact hit
        y = 1.0 / frac;
    }
    const double t = static_cast<double>(best_q) * alpha;
    const double d = std::fabs(t - std::round(t));
    return RationalApprox{canonical_fraction(best_p, best_q), alpha, d};
}

}  // namespace

double reduce_mod1(double a) {
    double r = a - std::floor(a);
    return (r >= 1.0 || r < 0.0) ? 0.0 : r;
}

double circle_norm(double t) {
    return std::fabs(t - std::round(t));
}

i64 isqrt(i64 n) {
    if (n < 0) throw ParameterError("isqrt of negative value");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    // Division forms avoid r*r overflow near the i64 boundary.
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

ArithmeticTable sieve_divisor(i64 x) {
    check_table_size(x);
    std::vector<std::uint32_t> v(static_cast<std::size_t>(x) + 1, 0);
    for (i64 d = 1; d <= x; ++d)
        for (i64 m = d; m <= x; m += d) ++v[static_cast<std::size_t>(m)];
    return ArithmeticTable{TableKind::divisor, std::move(v)};
}

ArithmeticTable sieve_totient(i64 q) {
    check_table_size(q);
    std::vector<std::uint32_t> v(static_cast<std::size_t>(q) + 1);
    for (i64 n = 0; n <= q; ++n) v[static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(n);
    for (i64 p = 2; p <= q; ++p) {
        if (v[static_cast<std::size_t>(p)] != static_cast<std::uint32_t>(p)) continue;  // composite
        for (i64 m = p; m <= q; m += p) {
            auto& t = v[static_cast<std::size_t>(m)];
            t -= t / static_cast<std::uint32_t>(p);
        }
    }
    v[0] = 0;
    return ArithmeticTable{TableKind::totient, std::move(v)};
}

std::vector<Fraction> farey(double order) {
    if (!(order >= 1.0)) throw ParameterError("Farey order must be >= 1 (family is empty below 1/1)");
    const i64 qmax = static_cast<i64>(std::floor(order));
    std::vector<Fraction> out;
    for (i64 q = 1; q <= qmax; ++q)
        for (i64 a = 1; a <= q; ++a)
            if (std::gcd(a, q) == 1) out.push_back(Fraction{a, q});
    std::sort(out.begin(), out.end());
    return out;
}

RationalApprox best_rational_approx(double alpha, i64 max_den) {
    if (max_den < 1) throw ParameterError("approximation bound must be >= 1");
    const double a = reduce_mod1(alpha);
    return max_den <= 64 ? approx_exhaustive(a, max_den) : approx_convergents(a, max_den);
}

mpz_class restricted_compositions(i64 n, int s, i64 x) {
    if (s < 1) throw ParameterError("composition length must be >= 1");
    if (x < 1) throw ParameterError("part bound must be >= 1");
    if (n < s || n > s * x) return 0;
    // Shift parts to [0, x-1]: count solutions of sum y_i = n - s, then strike
    // the parts exceeding x - 1 by inclusion-exclusion.
    mpz_class total = 0;
    mpz_class binom_sj, binom_top;
    for (i64 j = 0; j <= s && n - j * x >= s; ++j) {
        mpz_bin_uiui(binom_sj.get_mpz_t(), static_cast<unsigned long>(s),
                     static_cast<unsigned long>(j));
        mpz_bin_uiui(binom_top.get_mpz_t(), static_cast<unsigned long>(n - j * x - 1),
                     static_cast<unsigned long>(s - 1));
        if (j % 2 == 0)
            total += binom_sj * binom_top;
        else
            total -= binom_sj * binom_top;
    }
    return total;
}

}  // namespace tausum
