#include <doctest.h>

#include <cmath>
#include <random>

#include "tausum/arcs.hpp"

using namespace tausum;

namespace {

// Brute-force membership: circle distance to every listed center.
bool major_by_scan(const ArcFamily& family, double alpha) {
    for (const Arc& arc : family.arcs) {
        const double dist = circle_norm(alpha - arc.center);
        if (dist <= arc.radius) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE("arcs") {

TEST_CASE("family for X=100, nu=0.2 matches the worked example") {
    const ArcFamily fam = build_arc_family(100, 0.2);
    const double p = std::pow(100.0, 0.2);
    CHECK(fam.params.p == doctest::Approx(2.51188643151).epsilon(1e-10));
    REQUIRE(fam.arcs.size() == 2);
    CHECK(fam.arcs[0].frac == Fraction{1, 2});
    CHECK(fam.arcs[1].frac == Fraction{1, 1});
    CHECK(fam.arcs[0].radius == doctest::Approx(p / 200.0).epsilon(1e-12));
    CHECK(fam.arcs[1].radius == doctest::Approx(p / 100.0).epsilon(1e-12));

    const FamilyChecks checks = family_checks(fam);
    CHECK(checks.disjoint);
    CHECK(checks.measure == doctest::Approx(2.0 * (p / 200.0 + p / 100.0)).epsilon(1e-12));
    CHECK(checks.measure == doctest::Approx(0.075357).epsilon(1e-4));
}

TEST_CASE("single wrapped arc when P < 2") {
    const ArcFamily fam = build_arc_family(16, 0.2);  // P = 16^0.2 < 2
    REQUIRE(fam.arcs.size() == 1);
    CHECK(fam.arcs[0].frac == Fraction{1, 1});
    CHECK(family_checks(fam).disjoint);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_arc_family(100, 0.0), ParameterError);
    CHECK_THROWS_AS(build_arc_family(100, -0.1), ParameterError);
    CHECK_THROWS_AS(build_arc_family(100, 0.26), ParameterError);
    CHECK_THROWS_AS(build_arc_family(15, 0.2), ParameterError);
    CHECK_NOTHROW(build_arc_family(16, 0.25));
}

TEST_CASE("classification pinned examples at X=100, nu=0.2") {
    const ArcFamily fam = build_arc_family(100, 0.2);

    const Classification near_half = classify(fam, PhasePoint(0.51));
    CHECK(near_half.tag == ArcTag::major);
    CHECK(near_half.fraction == Fraction{1, 2});
    CHECK(near_half.witness.delta == doctest::Approx(0.02).epsilon(1e-9));

    const Classification off = classify(fam, PhasePoint(0.30));
    CHECK(off.tag == ArcTag::minor);

    const Classification wrap = classify(fam, PhasePoint(0.001));
    CHECK(wrap.tag == ArcTag::major);
    CHECK(wrap.fraction == Fraction{1, 1});
}

TEST_CASE("classification partitions the circle like the brute-force scan") {
    std::mt19937_64 rng(515151);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const i64 x : {100, 1024, 65536}) {
        const ArcFamily fam = build_arc_family(x, 0.2);
        for (int i = 0; i < 10'000 / 3; ++i) {
            const double alpha = unif(rng);
            const Classification c = classify(fam, PhasePoint(alpha));
            REQUIRE((c.tag == ArcTag::major) == major_by_scan(fam, alpha));
        }
    }
}

TEST_CASE("major witnesses satisfy the arc inequality, minor witnesses exceed P") {
    std::mt19937_64 rng(616161);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const ArcFamily fam = build_arc_family(4096, 0.25);  // P = 8
    const double p = fam.params.p;
    const double radius_scale = p / 4096.0;
    for (int i = 0; i < 2000; ++i) {
        const double alpha = unif(rng);
        const Classification c = classify(fam, PhasePoint(alpha));
        if (c.tag == ArcTag::major) {
            REQUIRE(c.fraction.den <= static_cast<i64>(p));
            REQUIRE(c.witness.delta <= radius_scale * (1.0 + 1e-12));
        } else {
            // Dirichlet witness with q <= X/P always exists; minor means every
            // q <= P missed, so the witness denominator must exceed P.
            REQUIRE(static_cast<double>(c.witness.frac.den) > p);
            REQUIRE(c.witness.delta <= p / 4096.0 * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("boundary phases classify consistently with the node rule") {
    const ArcFamily fam = build_arc_family(256, 0.25);  // P = 4, radius at q=1 is P/X
    const double edge = fam.params.p / 256.0;
    CHECK(classify(fam, PhasePoint(edge)).tag == ArcTag::major);
    CHECK(classify(fam, PhasePoint(std::nextafter(edge, 1.0) + edge * 1e-9)).tag ==
          ArcTag::minor);
}

TEST_CASE("family measure shrinks like 2 X^{2 nu - 1}") {
    for (const i64 x : {1000, 10'000, 100'000, 1'000'000}) {
        const ArcFamily fam = build_arc_family(x, 0.2);
        const FamilyChecks checks = family_checks(fam);
        REQUIRE(checks.disjoint);
        const double bound = 2.0 * std::pow(static_cast<double>(x), 2.0 * 0.2 - 1.0);
        REQUIRE(checks.measure <= bound * (1.0 + 1e-12));
        REQUIRE(checks.measure > 0.0);
    }
}

TEST_CASE("every arc center is a farey fraction of order P and arcs are sorted") {
    const ArcFamily fam = build_arc_family(100'000, 0.25);  // P ~ 17.78
    const i64 qmax = static_cast<i64>(fam.params.p);
    for (std::size_t i = 0; i < fam.arcs.size(); ++i) {
        REQUIRE(fam.arcs[i].frac.den <= qmax);
        REQUIRE(std::gcd(fam.arcs[i].frac.num, fam.arcs[i].frac.den) == 1);
        if (i > 0) REQUIRE(fam.arcs[i - 1].frac < fam.arcs[i].frac);
    }
}

}  // TEST_SUITE
