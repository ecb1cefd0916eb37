#pragma once

// The integrals. I_f(p) = integral over one period of |M_f(alpha)|^p:
// exact even moments via s-fold integer convolution and Parseval
// (I_f(2s) = sum_n r_s(n)^2), general p by periodic-trapezoid grids with
// N-doubling refinement, the split of the same grid sum over major/minor
// arcs, the kernel's even moments as restricted-composition counts, the
// singular series sum_{q<=P} phi(q) q^{-p} (ln X - 2 ln q + 2 gamma - 1)^p,
// and the major-arc main-term prediction: singular series times the kernel
// integral over |beta| <= P/X.

#include <vector>

#include <gmpxx.h>

#include "tausum/arcs.hpp"
#include "tausum/arith.hpp"
#include "tausum/expsum.hpp"

namespace tausum {

// Refinement stops here; an estimate still moving at this size is returned
// with its last relative change flagged in rel_error_est.
inline constexpr i64 kGridCap = i64{1} << 26;

// Exact convolutions refuse beyond s*X of this (time and memory budget).
inline constexpr i64 kConvolutionBudget = 10'000'000;

// Kernel even moments: restricted-composition sums stay exact and fast here.
inline constexpr int kKernelMomentMaxS = 5;
inline constexpr i64 kKernelMomentMaxX = 1'000'000;

enum class MomentMethod { exact_integer, quadrature };

struct MomentEstimate {
    double value = 0.0;
    double p = 0.0;
    MomentMethod method = MomentMethod::quadrature;
    i64 n = 0;  // grid size used; 0 for exact evaluations
    double rel_error_est = 0.0;
};

// r_s(n) = sum over n_1 + ... + n_s = n of f(n_1)...f(n_s), exact integers,
// nonzero only for s <= n <= sX.
struct ConvolutionTable {
    int s = 1;
    i64 x = 0;
    i64 first = 0;  // counts[i] holds r_s(first + i); first = s
    std::vector<mpz_class> counts;

    const mpz_class& at(i64 n) const { return counts[static_cast<std::size_t>(n - first)]; }
    i64 last() const { return first + static_cast<i64>(counts.size()) - 1; }
};

struct SingularSeriesValue {
    double value = 0.0;
    i64 x = 0;
    double pcap = 0.0;  // denominator cap P
    double p = 0.0;
};

struct ArcMoments {
    MomentEstimate major;
    MomentEstimate minor;
};

// s-fold self-convolution of the table's f(1..X). Throws SizeError past the
// s*X budget.
ConvolutionTable convolve_counts(const ArithmeticTable& table, int s);

// I_f(2s) = sum_n r_s(n)^2, exact (method exact_integer, rel_error_est 0).
MomentEstimate moment_even_exact(const ArithmeticTable& table, int s);

// (1/N) sum_k |M(k/N)|^p, doubling N until the relative change drops below
// tol or N reaches kGridCap. final_grid (optional) receives the grid of the
// returned estimate, for follow-up arc splits at the same resolution.
MomentEstimate moment_quadrature(const GridEvaluation& grid, double p, double tol,
                                 GridEvaluation* final_grid = nullptr);

// The same grid sum split by node classification. Boundary nodes count
// wholly toward their side; rel_error_est records 2*(arc count)/N for that.
ArcMoments moment_on_arcs(const GridEvaluation& grid, const ArcFamily& family, double p);

// Integral over one period of |v|^{2s} = number of solutions of
// x_1 + ... + x_s = y_1 + ... + y_s in [1, X]^{2s}, exactly.
MomentEstimate kernel_moment_even_exact(i64 x, int s);

// sum_{q<=P} phi(q) q^{-p} (ln X - 2 ln q + 2 gamma - 1)^p. Throws
// DomainError if any base is nonpositive (P too large for this X).
SingularSeriesValue singular_series(i64 x, double pcap, double p);

// Trapezoid integral of |v(beta)|^p over |beta| <= half_width, refined by
// doubling until the relative change drops below tol.
MomentEstimate kernel_lp_on_interval(i64 x, double half_width, double p, double tol);

// singular_series(X, X^nu, p) times kernel_lp_on_interval over |beta| <= P/X.
MomentEstimate major_arc_prediction(i64 x, double nu, double p, double tol);

}  // namespace tausum
