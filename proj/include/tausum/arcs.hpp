#pragma once

// Arc geometry on R/Z for the dissection parameter P = X^nu: around every
// reduced a/q with q <= P sits the arc {alpha : |q alpha - a| <= P/X}, an
// interval of radius P/(qX). The union is the major set; its complement the
// minor set. We work on the circle, so the q = 1 arc wraps around 0.

#include <vector>

#include "tausum/arith.hpp"
#include "tausum/expsum.hpp"

namespace tausum {

struct ArcParams {
    i64 x = 0;
    double nu = 0.0;
    double p = 0.0;  // P = X^nu

    double node_radius_scale() const { return p / static_cast<double>(x); }  // P/X
};

struct Arc {
    Fraction frac;
    double center = 0.0;  // a/q (the 1/1 arc is centered at 1, wrapping over 0)
    double radius = 0.0;  // P/(qX)
};

struct ArcFamily {
    ArcParams params;
    std::vector<Arc> arcs;  // ascending by center; last is the wrapping 1/1 arc
};

enum class ArcTag { major, minor };

// Where a phase landed. Major carries the arc's fraction; minor carries the
// best rational approximation with denominator <= floor(X/P) (Dirichlet
// guarantees its delta <= P/X, so a minor witness always has q > P).
struct Classification {
    ArcTag tag = ArcTag::minor;
    Fraction fraction;
    RationalApprox witness;
};

struct FamilyChecks {
    bool disjoint = false;
    double measure = 0.0;  // total arc length on the circle, sum of 2P/(qX)
};

// One arc per Farey fraction of order floor(P). Throws ParameterError when
// nu is outside (0, 1/4], X < 16, or two arcs touch (reported with the pair).
ArcFamily build_arc_family(i64 x, double nu);

// Membership test by scanning q = 1..floor(P) for |q alpha - a| <= P/X; the
// first hit is automatically reduced. Misses get the Dirichlet witness.
Classification classify(const ArcFamily& family, PhasePoint alpha);

// Disjointness verdict by exact cross-multiplied gaps, plus total measure.
FamilyChecks family_checks(const ArcFamily& family);

namespace detail {

// The classify scan without witness construction; grid loops use this.
// On a major hit, out receives the reduced fraction and delta = |q alpha - a|.
bool major_hit(const ArcParams& params, double alpha, Fraction& out, double& delta);

}  // namespace detail

}  // namespace tausum
