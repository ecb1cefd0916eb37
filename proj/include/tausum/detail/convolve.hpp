#pragma once

// Exact convolution of nonnegative integer sequences. Route choice is by
// size and by the a-priori coefficient bound min(max(a) sum(b), sum(a) max(b)):
// schoolbook for small products, a three-prime CRT number-theoretic transform
// for large ones whose bound certifies against the CRT capacity. Both routes
// return the same exact integers; tests cross-check them.

#include <vector>

#include <gmpxx.h>

#include "tausum/arith.hpp"

namespace tausum::detail {

// Product of the three transform primes, the exactness capacity of the CRT
// route (about 1.59e26).
const mpz_class& crt_capacity();

// Largest per-coefficient value of a*b: min(max(a) sum(b), sum(a) max(b)).
mpz_class coefficient_bound(const std::vector<u64>& a, const std::vector<u64>& b);

std::vector<mpz_class> convolve_schoolbook(const std::vector<u64>& a, const std::vector<u64>& b);

// Throws SizeError when the coefficient bound reaches the CRT capacity or
// the result length exceeds the transform limit (2^25).
std::vector<mpz_class> convolve_ntt_crt(const std::vector<u64>& a, const std::vector<u64>& b);

// Dispatches between the two routes; throws SizeError when neither route
// can produce the exact result within budget.
std::vector<mpz_class> convolve_exact(const std::vector<u64>& a, const std::vector<u64>& b);

}  // namespace tausum::detail
