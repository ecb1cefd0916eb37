#pragma once

// The bound harness. One row per X: the moment I(p), its arc split, the
// normalized ratio R = I/(X^{p-1}(ln X)^p), the minor-arc mass against
// X^{p-1-nu/2}(ln X)^4, and the two pointwise sup scans: |M| over minor
// nodes against X ln(2Xq)(1/q + X^{-1/2} + q/X) with the node's rational
// witness, and the major-node residual against the main term, normalized
// by X^{1/2+nu} ln X. Asymptotic claims have no desk-scale constants, so
// the harness reports bounded, non-drifting ratios rather than absolutes.

#include <vector>

#include "tausum/arith.hpp"

namespace tausum {

struct RatioRow {
    i64 x = 0;
    double p = 0.0;
    double nu = 0.0;
    double i_total = 0.0;
    double i_major = 0.0;
    double i_minor = 0.0;
    double r = 0.0;            // I_total / (X^{p-1} (ln X)^p)
    double minor_ratio = 0.0;  // I_minor / (X^{p-1-nu/2} (ln X)^4)
    double sup_minor = 0.0;
    double sup_major_resid = 0.0;
};

struct ReportMeta {
    double tol = 0.0;
    unsigned seed = 0;
    int threads = 1;
    double wall_ms = 0.0;
    std::vector<i64> grid_sizes;      // final quadrature N per row
    std::vector<double> predictions;  // major-arc main-term prediction per row
};

struct VerificationReport {
    std::vector<RatioRow> rows;
    ReportMeta meta;
};

struct PointwiseSup {
    double sup_minor = 0.0;
    double sup_major_resid = 0.0;
};

// One row per X (ascending). Quadrature refines to tol; the arc split and
// the sup scans run on that row's grids; the main-term prediction lands in
// the metadata. Requires p > 2, every X >= 64, nu in (0, 1/4].
VerificationReport theorem_ratio_table(double p, std::vector<i64> xs, double nu, double tol);

// Sup scans over one grid of N >= 4X nodes (N a power of two).
PointwiseSup pointwise_bound_scan(i64 x, double nu, i64 n);

}  // namespace tausum
