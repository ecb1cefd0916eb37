#include "tausum/arcs.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace tausum {

namespace {

// Gap between consecutive centers a/q < a'/q' is d/(qq') with the integer
// d = a'q - aq'; the arcs are separated iff d X > P (q + q'). Exact while
// d X < 2^53. Returns the offending pair when one exists. Consecutive pairs
// suffice: gaps add along the sorted order, so non-neighbors sit farther
// apart than the sum of the gaps (hence of the radii) between them.
std::optional<std::pair<Fraction, Fraction>> touching_pair(const ArcParams& params,
                                                           const std::vector<Arc>& arcs) {
    const double px = params.p;
    const double xd = static_cast<double>(params.x);
    auto separated = [&](const Fraction& lo, const Fraction& hi, i64 d) {
        return static_cast<double>(d) * xd > px * static_cast<double>(lo.den + hi.den);
    };
    for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
        const Fraction& lo = arcs[i].frac;
        const Fraction& hi = arcs[i + 1].frac;
        const i64 d = hi.num * lo.den - lo.num * hi.den;
        if (!separated(lo, hi, d)) return std::make_pair(lo, hi);
    }
    if (arcs.size() >= 2) {
        // Wrap: the 1/1 arc covers 0, so its circle-gap to the first center
        // a/q is a/q itself (d = a against the fraction 0/1).
        const Fraction& first = arcs.front().frac;
        const Fraction& last = arcs.back().frac;
        if (!separated(first, last, first.num)) return std::make_pair(last, first);
    }
    return std::nullopt;
}

}  // namespace

namespace detail {

bool major_hit(const ArcParams& params, double alpha, Fraction& out, double& delta) {
    const double r = params.node_radius_scale();
    const i64 qmax = static_cast<i64>(std::floor(params.p));
    for (i64 q = 1; q <= qmax; ++q) {
        const double t = static_cast<double>(q) * alpha;
        const double a = std::round(t);
        const double d = std::fabs(t - a);
        if (d <= r) {
            const i64 ai = static_cast<i64>(a);
            out = (ai <= 0 || ai >= q) ? Fraction{1, 1}
                                       : Fraction{ai / std::gcd(ai, q), q / std::gcd(ai, q)};
            delta = d;
            return true;
        }
    }
    return false;
}

}  // namespace detail

ArcFamily build_arc_family(i64 x, double nu) {
    if (!(nu > 0.0 && nu <= 0.25))
        throw ParameterError("nu must lie in (0, 1/4], got " + std::to_string(nu));
    if (x < 16) throw ParameterError("arc family needs X >= 16, got " + std::to_string(x));
    const double p = std::pow(static_cast<double>(x), nu);
    ArcParams params{x, nu, p};
    std::vector<Arc> arcs;
    for (const Fraction& f : farey(p)) {
        const double radius = p / (static_cast<double>(f.den) * static_cast<double>(x));
        arcs.push_back(Arc{f, f.value(), radius});
    }
    if (auto bad = touching_pair(params, arcs)) {
        throw ParameterError("arcs at " + std::to_string(bad->first.num) + "/" +
                             std::to_string(bad->first.den) + " and " +
                             std::to_string(bad->second.num) + "/" +
                             std::to_string(bad->second.den) + " overlap");
    }
    return ArcFamily{params, std::move(arcs)};
}

Classification classify(const ArcFamily& family, PhasePoint alpha) {
    Fraction frac;
    double delta = 0.0;
    if (detail::major_hit(family.params, alpha.alpha, frac, delta))
        return Classification{ArcTag::major, frac, RationalApprox{frac, alpha.alpha, delta}};
    const i64 q_cap = std::max<i64>(1, static_cast<i64>(std::floor(
                                           static_cast<double>(family.params.x) / family.params.p)));
    RationalApprox witness = best_rational_approx(alpha.alpha, q_cap);
    return Classification{ArcTag::minor, witness.frac, witness};
}

FamilyChecks family_checks(const ArcFamily& family) {
    double measure = 0.0;
    for (const Arc& arc : family.arcs) measure += 2.0 * arc.radius;
    return FamilyChecks{!touching_pair(family.params, family.arcs).has_value(), measure};
}

}  // namespace tausum
