#include "tausum/detail/convolve.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>

namespace tausum::detail {

namespace {

using u128 = unsigned __int128;

// NTT-friendly primes: 5*2^25+1, 7*2^26+1, 15*2^27+1 with primitive roots
// 3, 3, 31. Transforms up to length 2^25 exist modulo each.
constexpr u64 kPrimes[3] = {167772161, 469762049, 2013265921};
constexpr u64 kRoots[3] = {3, 3, 31};
constexpr std::size_t kMaxTransform = std::size_t{1} << 25;

// Schoolbook is used below this many coefficient products.
constexpr double kSchoolbookOps = 1.6e7;
// Hard ceiling for the mpz schoolbook fallback (bound too large for CRT).
constexpr double kFallbackOps = 1.0e8;

u64 mod_pow(u64 base, u64 exp, u64 mod) {
    u64 r = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

u64 mod_inv(u64 a, u64 p) {
    return mod_pow(a, p - 2, p);
}

// In-place transform modulo p (p < 2^31, so products fit u64). invert = true
// applies the inverse transform including the 1/n scaling.
void ntt(std::vector<u64>& a, u64 p, u64 g, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 wlen = mod_pow(g, (p - 1) / len, p);
        if (invert) wlen = mod_inv(wlen, p);
        for (std::size_t i = 0; i < n; i += len) {
            u64 w = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const u64 u = a[i + j];
                const u64 v = (a[i + j + len / 2] * w) % p;
                a[i + j] = u + v < p ? u + v : u + v - p;
                a[i + j + len / 2] = u >= v ? u - v : u + p - v;
                w = (w * wlen) % p;
            }
        }
    }
    if (invert) {
        const u64 n_inv = mod_inv(static_cast<u64>(n), p);
        for (u64& v : a) v = (v * n_inv) % p;
    }
}

std::vector<u64> convolve_mod(const std::vector<u64>& a, const std::vector<u64>& b, u64 p,
                              u64 g, std::size_t result_len) {
    std::size_t n = 1;
    while (n < result_len) n <<= 1;
    std::vector<u64> fa(n, 0), fb(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % p;
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % p;
    ntt(fa, p, g, false);
    ntt(fb, p, g, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = (fa[i] * fb[i]) % p;
    ntt(fa, p, g, true);
    fa.resize(result_len);
    return fa;
}

mpz_class u128_to_mpz(u128 v) {
    mpz_class hi(static_cast<unsigned long>(v >> 64));
    mpz_class lo(static_cast<unsigned long>(v));
    return (hi << 64) + lo;
}

}  // namespace

const mpz_class& crt_capacity() {
    static const mpz_class cap = mpz_class(kPrimes[0]) * mpz_class(kPrimes[1]) * mpz_class(kPrimes[2]);
    return cap;
}

mpz_class coefficient_bound(const std::vector<u64>& a, const std::vector<u64>& b) {
    mpz_class sum_a = 0, sum_b = 0;
    u64 max_a = 0, max_b = 0;
    for (u64 v : a) {
        sum_a += mpz_class(static_cast<unsigned long>(v));
        max_a = std::max(max_a, v);
    }
    for (u64 v : b) {
        sum_b += mpz_class(static_cast<unsigned long>(v));
        max_b = std::max(max_b, v);
    }
    const mpz_class by_a = mpz_class(static_cast<unsigned long>(max_a)) * sum_b;
    const mpz_class by_b = sum_a * mpz_class(static_cast<unsigned long>(max_b));
    return std::min(by_a, by_b);
}

std::vector<mpz_class> convolve_schoolbook(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpz_class> out(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const mpz_class ai(static_cast<unsigned long>(a[i]));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            mpz_addmul_ui(out[i + j].get_mpz_t(), ai.get_mpz_t(),
                          static_cast<unsigned long>(b[j]));
        }
    }
    return out;
}

std::vector<mpz_class> convolve_ntt_crt(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t result_len = a.size() + b.size() - 1;
    if (result_len > kMaxTransform)
        throw SizeError("convolution length " + std::to_string(result_len) +
                        " exceeds the transform limit");
    if (coefficient_bound(a, b) >= crt_capacity())
        throw SizeError("convolution coefficients exceed the CRT capacity");
    const std::vector<u64> r0 = convolve_mod(a, b, kPrimes[0], kRoots[0], result_len);
    const std::vector<u64> r1 = convolve_mod(a, b, kPrimes[1], kRoots[1], result_len);
    const std::vector<u64> r2 = convolve_mod(a, b, kPrimes[2], kRoots[2], result_len);

    // Garner reconstruction: x = x01 + p0 p1 t2 with x01 = x mod p0 p1 < 2^57,
    // so the full value fits u128 (capacity < 2^87).
    const u64 p0 = kPrimes[0], p1 = kPrimes[1], p2 = kPrimes[2];
    const u64 inv_p0_mod_p1 = mod_inv(p0 % p1, p1);
    const u64 p0p1 = p0 * p1;
    const u64 inv_p0p1_mod_p2 = mod_inv(p0p1 % p2, p2);
    std::vector<mpz_class> out(result_len);
    for (std::size_t i = 0; i < result_len; ++i) {
        const u64 t1 = ((r1[i] + p1 - r0[i] % p1) % p1) * inv_p0_mod_p1 % p1;
        const u64 x01 = r0[i] + p0 * t1;
        const u64 t2 = ((r2[i] + p2 - x01 % p2) % p2) * inv_p0p1_mod_p2 % p2;
        const u128 x = static_cast<u128>(x01) + static_cast<u128>(p0p1) * t2;
        out[i] = u128_to_mpz(x);
    }
    return out;
}

std::vector<mpz_class> convolve_exact(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    const double ops = static_cast<double>(a.size()) * static_cast<double>(b.size());
    const std::size_t result_len = a.size() + b.size() - 1;
    if (ops <= kSchoolbookOps) return convolve_schoolbook(a, b);
    if (result_len <= kMaxTransform && coefficient_bound(a, b) < crt_capacity())
        return convolve_ntt_crt(a, b);
    if (ops <= kFallbackOps) return convolve_schoolbook(a, b);
    throw SizeError("convolution exceeds the exact-arithmetic budget");
}

}  // namespace tausum::detail
