#pragma once

// Exponential sums M_f(alpha) = sum_{n<=X} f(n) e(n alpha), e(t) = e^{2 pi i t}.
// Evaluation routes: direct summation, the hyperbola decomposition
// M = 2T + E over uv <= X, the geometric kernel v(beta) = sum_{n<=X} e(n beta),
// and whole grids M_f(k/N) via one radix-2 transform. Also the two explicit
// pointwise bounds tied to these sums: the min(X/u, ||alpha u||^{-1}) sum with
// its X log(2Xq)(q^{-1} + X^{-1/2} + q X^{-1}) envelope, and the rational-phase
// divisor sum against its (X/q)(log(X/q^2) + 2 gamma - 1) main term.

#include <complex>
#include <vector>

#include "tausum/arith.hpp"

namespace tausum {

using cd = std::complex<double>;

// Phases closer than this to an integer take the degenerate (count) branch
// instead of a near-zero denominator.
inline constexpr double kResonantEps = 1e-12;

// e(t) = exp(2 pi i t); t is reduced to [-1/2, 1/2] before the trig calls.
cd unit_phase(double t);

// A phase on the circle, reduced to [0, 1) at construction.
struct PhasePoint {
    double alpha = 0.0;

    PhasePoint() = default;
    explicit PhasePoint(double a) : alpha(reduce_mod1(a)) {}
};

// M = 2T + E: T over pairs u < v with uv <= X, E over the squares.
struct HyperbolaParts {
    cd t;
    cd e;
    cd m;
};

// M_f sampled at every k/N, plus the coefficient sequence that produced it
// (so a finer grid over the same sum can be built without the table).
struct GridEvaluation {
    i64 n = 0;                   // grid size N, a power of two, N >= X+1
    i64 x = 0;                   // sum length X
    std::vector<cd> values;      // values[k] = M_f(k/N)
    std::vector<double> coeffs;  // f(1..X); coeffs[0] unused and zero
};

// The proof-side bound pair at one phase: the kernel-envelope sum and the
// closed-form right-hand side it is dominated by.
struct MinSumBound {
    double minsum = 0.0;    // sum_{u <= sqrt(X)} min(X/u, ||alpha u||^{-1})
    double prop_rhs = 0.0;  // X ln(2Xq) (1/q + X^{-1/2} + q/X)
};

// Divisor sum at the rational phase a/q against its main term.
struct RationalTauSum {
    cd exact;             // sum_{n<=X} tau(n) e(a n / q)
    double main = 0.0;    // (X/q)(ln(X/q^2) + 2 gamma - 1)
    cd residual;          // exact - main
};

// sum_{n<=X} f(n) e(n alpha), pairwise-tree summation, |result| <= sum f(n).
cd eval_direct(const ArithmeticTable& table, PhasePoint alpha);

// T = sum_{u<=sqrt(X)} sum_{u<v<=X/u} e(alpha uv) by closed-form geometric
// inner sums (O(sqrt X) work), E = sum_{u^2<=X} e(alpha u^2), M = 2T + E.
HyperbolaParts eval_hyperbola(i64 x, PhasePoint alpha);

// v(beta) = sum_{n<=X} e(n beta), closed geometric form; exactly X when
// ||beta|| is resonant.
cd kernel_eval(i64 x, double beta);

// min(X, ||beta||^{-1}), with the integer-beta pole replaced by X.
double kernel_envelope(i64 x, double beta);

// One length-N transform of the zero-padded coefficients f(1..X);
// values[k] = M_f(k/N). Throws ParameterError unless N is a power of two
// with N >= X+1 (anything smaller aliases).
GridEvaluation grid_eval(const ArithmeticTable& table, i64 n);

// The same coefficients on a finer grid (for quadrature refinement).
GridEvaluation regrid(const GridEvaluation& grid, i64 n);

// minsum at approx.alpha plus the envelope at approx's denominator.
MinSumBound minsum_bound(i64 x, const RationalApprox& approx);

// Exact rational-phase divisor sum over the table (O(X)) with its main term.
RationalTauSum rational_tau_sum(const ArithmeticTable& table, const Fraction& frac);

}  // namespace tausum
