#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tausum/detail/convolve.hpp"
#include "tausum/moments.hpp"

using namespace tausum;

namespace {

// Fixed-N power mean straight from the grid, no refinement.
double grid_mean(const GridEvaluation& g, double p) {
    double sum = 0.0;
    for (const cd& v : g.values) sum += std::pow(std::norm(v), 0.5 * p);
    return sum / static_cast<double>(g.n);
}

i64 next_pow2(i64 v) {
    i64 n = 1;
    while (n < v) n <<= 1;
    return n;
}

// s = 2 kernel moment by direct enumeration of the Diophantine system.
i64 kernel_fourth_brute(i64 x) {
    std::vector<i64> r(static_cast<std::size_t>(2 * x + 1), 0);
    for (i64 a = 1; a <= x; ++a)
        for (i64 b = 1; b <= x; ++b) ++r[static_cast<std::size_t>(a + b)];
    i64 total = 0;
    for (i64 n = 2; n <= 2 * x; ++n)
        total += r[static_cast<std::size_t>(n)] * r[static_cast<std::size_t>(n)];
    return total;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("convolution counts: pinned examples") {
    const ArithmeticTable t2 = sieve_divisor(2);
    const ConvolutionTable c = convolve_counts(t2, 2);
    CHECK(c.first == 2);
    CHECK(c.last() == 4);
    CHECK(c.at(2) == 1);  // tau(1) tau(1)
    CHECK(c.at(3) == 4);  // 2 tau(1) tau(2)
    CHECK(c.at(4) == 4);  // tau(2)^2

    mpz_class total = 0;
    for (const mpz_class& v : c.counts) total += v;
    CHECK(total == 9);  // (tau(1)+tau(2))^2

    const ConvolutionTable c1 = convolve_counts(t2, 1);
    REQUIRE(c1.counts.size() == 2);
    CHECK(c1.at(1) == 1);
    CHECK(c1.at(2) == 2);
}

TEST_CASE("convolution mass identity for several orders") {
    const ArithmeticTable t = sieve_divisor(60);
    mpz_class mass = 0;
    for (i64 n = 1; n <= 60; ++n) mass += t[n];
    mpz_class power = 1;
    for (int s = 1; s <= 3; ++s) {
        power *= mass;
        const ConvolutionTable c = convolve_counts(t, s);
        mpz_class total = 0;
        for (const mpz_class& v : c.counts) total += v;
        REQUIRE(total == power);
    }
}

TEST_CASE("convolution budget is enforced") {
    const ArithmeticTable t = sieve_divisor(100'000);
    CHECK_THROWS_AS(convolve_counts(t, 101), SizeError);
    CHECK_THROWS_AS(convolve_counts(t, 0), ParameterError);
}

TEST_CASE("schoolbook and transform routes agree") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t na = 200 + rng() % 400;
        const std::size_t nb = 200 + rng() % 400;
        std::vector<u64> a(na), b(nb);
        for (u64& v : a) v = rng() % 1'000'000;
        for (u64& v : b) v = rng() % 1'000'000;
        const auto school = detail::convolve_schoolbook(a, b);
        const auto ntt = detail::convolve_ntt_crt(a, b);
        REQUIRE(school.size() == ntt.size());
        for (std::size_t i = 0; i < school.size(); ++i) REQUIRE(school[i] == ntt[i]);
    }
}

TEST_CASE("transform route rejects coefficients beyond its capacity") {
    std::vector<u64> a(4000, u64{1} << 62);
    std::vector<u64> b(4000, u64{1} << 62);
    CHECK(detail::coefficient_bound(a, b) >= detail::crt_capacity());
    CHECK_THROWS_AS(detail::convolve_ntt_crt(a, b), SizeError);
}

TEST_CASE("even moments: pinned examples") {
    CHECK(moment_even_exact(sieve_divisor(4), 1).value == doctest::Approx(18.0));  // 1+4+4+9
    CHECK(moment_even_exact(sieve_divisor(2), 2).value == doctest::Approx(33.0));  // 1+16+16
    CHECK(moment_even_exact(sieve_divisor(1), 1).value == doctest::Approx(1.0));
    CHECK(moment_even_exact(sieve_divisor(1), 3).value == doctest::Approx(1.0));
    const MomentEstimate est = moment_even_exact(sieve_divisor(4), 1);
    CHECK(est.method == MomentMethod::exact_integer);
    CHECK(est.n == 0);
    CHECK(est.rel_error_est == 0.0);
    CHECK(est.p == 2.0);
}

TEST_CASE("grid Parseval matches the exact even moments") {
    for (const i64 x : {1, 2, 3, 7, 16, 100, 257, 512}) {
        const ArithmeticTable t = sieve_divisor(x);
        for (int s = 1; s <= 2; ++s) {
            const GridEvaluation g = grid_eval(t, next_pow2(2 * s * x + 1));
            const double grid_val = grid_mean(g, 2.0 * s);
            const double exact_val = moment_even_exact(t, s).value;
            REQUIRE(grid_val == doctest::Approx(exact_val).epsilon(1e-6));
        }
    }
}

TEST_CASE("quadrature pinned examples") {
    const ArithmeticTable t2 = sieve_divisor(2);
    const MomentEstimate q4 = moment_quadrature(grid_eval(t2, 4), 4.0, 1e-3);
    CHECK(q4.value == doctest::Approx(33.0).epsilon(1e-9));
    CHECK(q4.method == MomentMethod::quadrature);

    const ArithmeticTable t4 = sieve_divisor(4);
    const MomentEstimate q2 = moment_quadrature(grid_eval(t4, 8), 2.0, 1e-3);
    CHECK(q2.value == doctest::Approx(18.0).epsilon(1e-9));

    const ArithmeticTable t1 = sieve_divisor(1);
    const MomentEstimate q3 = moment_quadrature(grid_eval(t1, 2), 3.0, 1e-3);
    CHECK(q3.value == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(moment_quadrature(grid_eval(t4, 8), 0.5, 1e-3), ParameterError);
    CHECK_THROWS_AS(moment_quadrature(grid_eval(t4, 8), 2.0, 0.0), ParameterError);
}

TEST_CASE("quadrature against the transform-free route at a larger size") {
    // The 4th moment by adaptive complex-transform quadrature vs the exact
    // integer convolution (schoolbook path): two fully independent pipelines.
    const ArithmeticTable t = sieve_divisor(300);
    const double exact_val = moment_even_exact(t, 2).value;
    const MomentEstimate est = moment_quadrature(grid_eval(t, 2048), 4.0, 1e-8);
    CHECK(est.value == doctest::Approx(exact_val).epsilon(1e-8));
}

TEST_CASE("quadrature reports its final grid") {
    const ArithmeticTable t = sieve_divisor(100);
    GridEvaluation final_grid;
    const MomentEstimate est = moment_quadrature(grid_eval(t, 256), 3.0, 1e-4, &final_grid);
    CHECK(final_grid.n == est.n);
    CHECK(final_grid.x == 100);
    CHECK(grid_mean(final_grid, 3.0) == doctest::Approx(est.value).epsilon(1e-12));
}

TEST_CASE("Holder monotonicity of the p-th root at fixed X") {
    const ArithmeticTable t = sieve_divisor(100);
    const GridEvaluation g = grid_eval(t, 1024);
    double prev = 0.0;
    for (const double p : {2.0, 2.5, 3.0, 4.0}) {
        const MomentEstimate est = moment_quadrature(g, p, 1e-5);
        const double root = std::pow(est.value, 1.0 / p);
        REQUIRE(root >= prev * (1.0 - 1e-3));
        prev = root;
    }
}

TEST_CASE("arc split partitions the quadrature sum") {
    const ArithmeticTable t = sieve_divisor(100);
    const GridEvaluation g = grid_eval(t, 1 << 14);
    const ArcFamily fam = build_arc_family(100, 0.2);
    const ArcMoments split = moment_on_arcs(g, fam, 3.0);
    const double total = grid_mean(g, 3.0);
    CHECK(split.major.value + split.minor.value ==
          doctest::Approx(total).epsilon(1e-12));
    CHECK(split.minor.value <= total);
    CHECK(split.major.value <= total);
    CHECK(split.major.n == g.n);
    CHECK(split.major.rel_error_est ==
          doctest::Approx(2.0 * static_cast<double>(fam.arcs.size()) / (1 << 14)));
}

TEST_CASE("arc split agrees with a per-node classification oracle") {
    const ArithmeticTable t = sieve_divisor(100);
    const GridEvaluation g = grid_eval(t, 1 << 14);
    const ArcFamily fam = build_arc_family(100, 0.2);
    const ArcMoments split = moment_on_arcs(g, fam, 3.0);
    double major = 0.0, minor = 0.0;
    for (i64 k = 0; k < g.n; ++k) {
        const double alpha = static_cast<double>(k) / static_cast<double>(g.n);
        const double term = std::pow(std::norm(g.values[static_cast<std::size_t>(k)]), 1.5);
        if (classify(fam, PhasePoint(alpha)).tag == ArcTag::major)
            major += term;
        else
            minor += term;
    }
    const double nd = static_cast<double>(g.n);
    CHECK(split.major.value == doctest::Approx(major / nd).epsilon(1e-11));
    CHECK(split.minor.value == doctest::Approx(minor / nd).epsilon(1e-11));
}

TEST_CASE("arc split rejects mismatched lengths") {
    const ArithmeticTable t = sieve_divisor(100);
    const GridEvaluation g = grid_eval(t, 1024);
    const ArcFamily fam = build_arc_family(128, 0.2);
    CHECK_THROWS_AS(moment_on_arcs(g, fam, 3.0), ParameterError);
}

TEST_CASE("kernel even moments: pinned examples and oracles") {
    CHECK(llround(kernel_moment_even_exact(2, 2).value) == 6);
    CHECK(llround(kernel_moment_even_exact(3, 2).value) == 19);
    CHECK(llround(kernel_moment_even_exact(1, 1).value) == 1);
    CHECK(llround(kernel_moment_even_exact(1, 5).value) == 1);

    for (i64 x = 1; x <= 50; ++x)
        REQUIRE(llround(kernel_moment_even_exact(x, 2).value) == kernel_fourth_brute(x));

    for (const i64 x : {1, 10, 100, 555, 1000})
        REQUIRE(llround(kernel_moment_even_exact(x, 2).value) == (2 * x * x * x + x) / 3);

    CHECK_THROWS_AS(kernel_moment_even_exact(10, 6), ParameterError);
    CHECK_THROWS_AS(kernel_moment_even_exact(2'000'000, 2), SizeError);
}

TEST_CASE("kernel moment growth rate is Cauchy-stable") {
    // k(X, s) / X^{2s-1} moves by < 5% from X = 200 to X = 400.
    for (int s = 2; s <= 3; ++s) {
        const double r200 = kernel_moment_even_exact(200, s).value /
                            std::pow(200.0, 2.0 * s - 1.0);
        const double r400 = kernel_moment_even_exact(400, s).value /
                            std::pow(400.0, 2.0 * s - 1.0);
        REQUIRE(std::fabs(r400 - r200) <= 0.05 * r200);
    }
}

TEST_CASE("kernel second moment equals floor(X) on the full period") {
    // Parseval: all Fourier coefficients of v are 1.
    for (const i64 x : {1, 2, 17, 300})
        CHECK(llround(kernel_moment_even_exact(x, 1).value) == x);
}

TEST_CASE("singular series: pinned examples") {
    for (const i64 x : {10, 100, 12345}) {
        const SingularSeriesValue s = singular_series(x, 1.0, 3.0);
        const double base = std::log(static_cast<double>(x)) + 2.0 * kEulerGamma - 1.0;
        CHECK(s.value == doctest::Approx(base * base * base).epsilon(1e-12));
    }

    // Two-term oracle at X=100, P=2, p=3.
    const double lx = std::log(100.0);
    const double q1 = std::pow(lx + 2.0 * kEulerGamma - 1.0, 3.0);
    const double q2 = 0.125 * std::pow(lx - 2.0 * std::log(2.0) + 2.0 * kEulerGamma - 1.0, 3.0);
    const SingularSeriesValue s2 = singular_series(100, 2.0, 3.0);
    CHECK(s2.value == doctest::Approx(q1 + q2).epsilon(1e-12));
    CHECK(s2.value == doctest::Approx(112.62).epsilon(1e-3));

    // floor(P) unchanged between 2 and 2.512.
    const SingularSeriesValue s3 = singular_series(100, 2.512, 3.0);
    CHECK(s3.value == s2.value);

    CHECK_THROWS_AS(singular_series(100, 0.5, 3.0), ParameterError);
    CHECK_THROWS_AS(singular_series(2, 2.0, 3.0), DomainError);  // base < 0 at q=2
}

TEST_CASE("singular series sandwich against (ln X)^p") {
    for (const i64 x : {1000, 10'000, 100'000, 1'000'000}) {
        const double cap = std::pow(static_cast<double>(x), 0.2);
        const SingularSeriesValue s = singular_series(x, cap, 3.0);
        const double norm = s.value / std::pow(std::log(static_cast<double>(x)), 3.0);
        REQUIRE(norm >= 1.0);
        REQUIRE(norm <= 2.5);
    }
}

TEST_CASE("kernel interval integral stays under the period total") {
    // Any subinterval of the period carries at most the full second moment X.
    for (const i64 x : {100, 1000}) {
        const MomentEstimate est = kernel_lp_on_interval(x, 0.01, 2.0, 1e-6);
        REQUIRE(est.value <= static_cast<double>(x) * (1.0 + 1e-4));
        REQUIRE(est.value > 0.0);
    }
    CHECK_THROWS_AS(kernel_lp_on_interval(100, 0.6, 2.0, 1e-3), ParameterError);
    CHECK_THROWS_AS(kernel_lp_on_interval(100, 0.0, 2.0, 1e-3), ParameterError);
}

TEST_CASE("kernel interval integral captures most of the third-moment mass") {
    // |v|^3 concentrates on |beta| <= P/X once P is a few units.
    const i64 x = 4096;
    const double p_cap = std::pow(static_cast<double>(x), 0.2);  // ~5.28
    const MomentEstimate inside = kernel_lp_on_interval(x, p_cap / x, 3.0, 1e-5);
    // Lower bound: the central node alone contributes ~ X^3 * (width/3).
    REQUIRE(inside.value > 0.1 * std::pow(static_cast<double>(x), 2.0));
}

TEST_CASE("prediction brackets the measured major-arc moment") {
    const i64 x = 4096;
    const ArithmeticTable t = sieve_divisor(x);
    GridEvaluation final_grid;
    moment_quadrature(grid_eval(t, next_pow2(8 * x)), 3.0, 1e-3, &final_grid);
    const ArcFamily fam = build_arc_family(x, 0.2);
    const ArcMoments split = moment_on_arcs(final_grid, fam, 3.0);
    const MomentEstimate pred = major_arc_prediction(x, 0.2, 3.0, 1e-4);
    const double ratio = pred.value / split.major.value;
    REQUIRE(ratio >= 1.0 / 3.0);
    REQUIRE(ratio <= 3.0);
}

TEST_CASE("prediction parameter validation") {
    CHECK_THROWS_AS(major_arc_prediction(4096, 0.3, 3.0, 1e-3), ParameterError);
    CHECK_THROWS_AS(major_arc_prediction(4096, 0.2, 2.0, 1e-3), ParameterError);
}

TEST_CASE("exact even moment via the transform route matches grid Parseval") {
    // X large enough that the s = 2 self-convolution leaves the schoolbook
    // regime, so this crosses the number-theoretic transform against the
    // complex-transform grid.
    const i64 x = 5000;
    const ArithmeticTable t = sieve_divisor(x);
    const double exact_val = moment_even_exact(t, 2).value;
    const GridEvaluation g = grid_eval(t, next_pow2(2 * x + 1));
    const double grid_val = grid_mean(g, 4.0);
    CHECK(grid_val == doctest::Approx(exact_val).epsilon(1e-6));
}

}  // TEST_SUITE
