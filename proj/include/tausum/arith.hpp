#pragma once

// Integer-arithmetic substrate: divisor/totient sieves, reduced fractions,
// Farey enumeration, best rational approximation, and exact counts of
// compositions with bounded parts.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "tausum/errors.hpp"

namespace tausum {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// gamma = lim (H_n - ln n); enters every rational-sum main term.
inline constexpr double kEulerGamma = 0.5772156649015329;

// Largest table length we sieve (u32 values, ~800 MB at the ceiling).
inline constexpr i64 kTableCeiling = 200'000'000;

enum class TableKind { divisor, totient };

// Sieved values of tau(n) or phi(n) on 1..X. Immutable after construction;
// values[0] is unused and zero.
struct ArithmeticTable {
    TableKind kind;
    std::vector<std::uint32_t> values;  // 1-based

    i64 length() const { return static_cast<i64>(values.size()) - 1; }
    std::uint32_t operator[](i64 n) const { return values[static_cast<std::size_t>(n)]; }
};

// tau(n) = #{d : d | n} for n = 1..x, by the divisor-marking sieve
// (O(x log x) additions). Throws SizeError for x < 1 or x > kTableCeiling.
ArithmeticTable sieve_divisor(i64 x);

// phi(n) = #{1 <= a <= n : gcd(a, n) = 1} for n = 1..q.
ArithmeticTable sieve_totient(i64 q);

// Reduced fraction a/q with 1 <= a <= q and gcd(a, q) = 1. The point 0 of the
// unit circle is carried by 1/1; every other fraction lies in (0, 1).
struct Fraction {
    i64 num = 1;
    i64 den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Exact order: a/q < a'/q' iff a q' < a' q.
inline bool operator<(const Fraction& lhs, const Fraction& rhs) {
    return lhs.num * rhs.den < rhs.num * lhs.den;
}

// All reduced a/q with q <= floor(order), ascending. Size is sum of phi(q).
// Throws ParameterError for order < 1 (the family would be empty).
std::vector<Fraction> farey(double order);

// A rational approximation a/q to a phase: delta = ||q alpha|| = |q alpha - a|
// up to the circle identification 0 ~ 1. Dirichlet guarantees
// delta <= 1/max_den for the max_den used at construction.
struct RationalApprox {
    Fraction frac;
    double alpha = 0.0;  // the phase approximated, reduced to [0, 1)
    double delta = 0.0;
};

// The (a, q), q <= max_den, minimizing |q alpha - a|; ties go to the smaller
// q. Uses the continued-fraction convergents of alpha, with an exhaustive
// scan for max_den <= 64. alpha is reduced mod 1 first.
RationalApprox best_rational_approx(double alpha, i64 max_den);

// #{(x_1, ..., x_s) in [1, X]^s : x_1 + ... + x_s = n}, exact at any size
// (inclusion-exclusion over binomial coefficients in GMP integers).
mpz_class restricted_compositions(i64 n, int s, i64 x);

// floor(sqrt(n)) for n >= 0, exact.
i64 isqrt(i64 n);

// Fractional part in [0, 1).
double reduce_mod1(double a);

// ||t|| = distance from t to the nearest integer, in [0, 1/2].
double circle_norm(double t);

}  // namespace tausum
