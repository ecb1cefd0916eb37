// Batch front-end. Verbs: sum, kernel, arcs, moment, singular, verify.
// Reports go to stdout or --out as CSV (default) or JSON. Exit codes:
// 0 success, 1 usage/unknown verb, 2 parameter out of range, 3 budget
// exceeded, 4 output I/O failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tausum/arcs.hpp"
#include "tausum/arith.hpp"
#include "tausum/expsum.hpp"
#include "tausum/moments.hpp"
#include "tausum/parallel.hpp"
#include "tausum/report.hpp"
#include "tausum/verify.hpp"

namespace {

using namespace tausum;

constexpr int kExitUsage = 1;
constexpr int kExitParameter = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

struct GlobalOpts {
    std::string format = "csv";
    std::string out;  // empty = stdout
    unsigned seed = 0;
    int threads = 0;  // 0 = all cores
};

i64 auto_grid(i64 x) {
    i64 n = 1;
    while (n < 8 * x) n <<= 1;
    return n;
}

int write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return std::cout ? 0 : kExitIo;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return kExitIo;
    }
    f << text;
    f.close();
    if (!f) {
        std::cerr << "error: write failed: " << path << "\n";
        return kExitIo;
    }
    return 0;
}

int emit_records(const std::vector<Record>& records, const GlobalOpts& opts, double wall_ms) {
    const std::string text = opts.format == "json"
                                 ? records_json(records, opts.seed, thread_count(), wall_ms)
                                 : records_csv(records);
    return write_text(text, opts.out);
}

Record run_sum(i64 x, bool has_alpha, double alpha, bool has_frac, i64 a, i64 q) {
    if (has_alpha == has_frac)
        throw ParameterError("sum needs exactly one of --alpha or --a/--q");
    const ArithmeticTable table = sieve_divisor(x);
    Record rec;
    if (has_alpha) {
        const PhasePoint phase(alpha);
        const cd z = eval_direct(table, phase);
        rec.add("X", x);
        rec.add("alpha", phase.alpha);
        rec.add("re", z.real());
        rec.add("im", z.imag());
        rec.add("abs", std::abs(z));
        return rec;
    }
    if (q < 1 || a < 1 || a > q)
        throw ParameterError("rational phase needs 1 <= a <= q with q >= 1");
    const i64 g = std::gcd(a, q);
    const Fraction frac{a / g, q / g};
    const RationalTauSum rts = rational_tau_sum(table, frac);
    const double sx = std::sqrt(static_cast<double>(x));
    const double qd = static_cast<double>(frac.den);
    rec.add("X", x);
    rec.add("a", frac.num);
    rec.add("q", frac.den);
    rec.add("exact_re", rts.exact.real());
    rec.add("exact_im", rts.exact.imag());
    rec.add("main", rts.main);
    rec.add("residual_re", rts.residual.real());
    rec.add("residual_im", rts.residual.imag());
    rec.add("residual_abs", std::abs(rts.residual));
    rec.add("envelope", (sx + qd) * std::log(2.0 * qd) + sx);
    return rec;
}

Record run_kernel(i64 x, double beta) {
    const cd v = kernel_eval(x, beta);
    Record rec;
    rec.add("X", x);
    rec.add("beta", beta);
    rec.add("re", v.real());
    rec.add("im", v.imag());
    rec.add("abs", std::abs(v));
    rec.add("envelope", kernel_envelope(x, beta));
    return rec;
}

Record run_arcs(i64 x, double nu, bool has_alpha, double alpha) {
    const ArcFamily family = build_arc_family(x, nu);
    Record rec;
    if (has_alpha) {
        const PhasePoint phase(alpha);
        const Classification c = classify(family, phase);
        rec.add("X", x);
        rec.add("nu", nu);
        rec.add("alpha", phase.alpha);
        rec.add("tag", std::string(c.tag == ArcTag::major ? "major" : "minor"));
        rec.add("a", c.witness.frac.num);
        rec.add("q", c.witness.frac.den);
        rec.add("delta", c.witness.delta);
        return rec;
    }
    const FamilyChecks checks = family_checks(family);
    // measure is on the circle (the q = 1 arc wraps over 0 and has length
    // 2P/X); measure_interval restricts that arc to [1 - P/X, 1].
    const double wrap_half = family.params.p / static_cast<double>(x);
    rec.add("X", x);
    rec.add("nu", nu);
    rec.add("P", family.params.p);
    rec.add("arcs", static_cast<i64>(family.arcs.size()));
    rec.add("disjoint", checks.disjoint);
    rec.add("measure", checks.measure);
    rec.add("measure_interval", checks.measure - wrap_half);
    return rec;
}

Record run_moment(i64 x, double p, bool exact, bool kernel, i64 grid_n, double tol, double nu,
                  bool split) {
    Record rec;
    if (exact || kernel) {
        const double s_real = 0.5 * p;
        const i64 s = static_cast<i64>(std::llround(s_real));
        if (static_cast<double>(s) != s_real || s < 1)
            throw ParameterError("exact moments need an even integer exponent p >= 2");
        const MomentEstimate est = kernel ? kernel_moment_even_exact(x, static_cast<int>(s))
                                          : moment_even_exact(sieve_divisor(x), static_cast<int>(s));
        rec.add("X", x);
        rec.add("p", est.p);
        rec.add("method", std::string(kernel ? "kernel_exact" : "exact"));
        rec.add("N", est.n);
        rec.add("value", est.value);
        rec.add("rel_error_est", est.rel_error_est);
        return rec;
    }
    const ArithmeticTable table = sieve_divisor(x);
    const i64 n0 = grid_n > 0 ? grid_n : auto_grid(x);
    const GridEvaluation base = grid_eval(table, n0);
    if (!split) {
        const MomentEstimate est = moment_quadrature(base, p, tol);
        rec.add("X", x);
        rec.add("p", est.p);
        rec.add("method", std::string("quadrature"));
        rec.add("N", est.n);
        rec.add("value", est.value);
        rec.add("rel_error_est", est.rel_error_est);
        return rec;
    }
    GridEvaluation final_grid;
    const MomentEstimate total = moment_quadrature(base, p, tol, &final_grid);
    const ArcFamily family = build_arc_family(x, nu);
    const ArcMoments arcs = moment_on_arcs(final_grid, family, p);
    rec.add("X", x);
    rec.add("p", p);
    rec.add("nu", nu);
    rec.add("N", total.n);
    rec.add("I_total", total.value);
    rec.add("I_major", arcs.major.value);
    rec.add("I_minor", arcs.minor.value);
    rec.add("rel_error_est", total.rel_error_est);
    rec.add("boundary_rel", arcs.major.rel_error_est);
    return rec;
}

Record run_singular(i64 x, double p, double pcap, double nu) {
    const double cap = pcap > 0.0 ? pcap : std::pow(static_cast<double>(x), nu);
    const SingularSeriesValue s = singular_series(x, cap, p);
    Record rec;
    rec.add("X", x);
    rec.add("pcap", s.pcap);
    rec.add("p", s.p);
    rec.add("value", s.value);
    rec.add("normalized", s.value / std::pow(std::log(static_cast<double>(x)), p));
    return rec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential-sum and moment computations for the divisor function"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts opts;
    app.add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", opts.out, "Output file (default: stdout)");
    app.add_option("--seed", opts.seed, "Seed recorded in report metadata")
        ->capture_default_str();
    app.add_option("--threads", opts.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();

    i64 x = 0;
    double alpha = 0.0, beta = 0.0, p = 2.0, nu = 0.2, tol = 1e-3, pcap = 0.0;
    i64 a = 0, q = 0, grid_n = 0;
    bool exact = false, kernel_flag = false, split = false;
    std::vector<i64> x_list;

    CLI::App* sum = app.add_subcommand("sum", "Evaluate the divisor sum at one phase");
    sum->add_option("--x", x, "Sum length X")->required();
    CLI::Option* sum_alpha = sum->add_option("--alpha", alpha, "Phase in [0,1)");
    CLI::Option* sum_a = sum->add_option("--a", a, "Rational phase numerator");
    CLI::Option* sum_q = sum->add_option("--q", q, "Rational phase denominator");

    CLI::App* kernel = app.add_subcommand("kernel", "Evaluate the geometric kernel at one phase");
    kernel->add_option("--x", x, "Kernel length X")->required();
    kernel->add_option("--beta", beta, "Phase offset")->required();

    CLI::App* arcs = app.add_subcommand("arcs", "Build the arc family; classify with --alpha");
    arcs->add_option("--x", x, "Parameter X")->required();
    arcs->add_option("--nu", nu, "Arc exponent (P = X^nu)")->capture_default_str();
    CLI::Option* arcs_alpha = arcs->add_option("--alpha", alpha, "Phase to classify");

    CLI::App* moment = app.add_subcommand("moment", "Moment of the divisor sum");
    moment->add_option("--x", x, "Sum length X")->required();
    moment->add_option("--p", p, "Moment exponent")->capture_default_str();
    moment->add_flag("--exact", exact, "Exact integer route (even p only)");
    moment->add_flag("--kernel", kernel_flag, "Kernel moment instead (exact, even p only)");
    moment->add_option("--grid", grid_n, "Starting grid size (0 = auto, power of two)")
        ->capture_default_str();
    moment->add_option("--tol", tol, "Refinement stop: relative change")->capture_default_str();
    moment->add_option("--nu", nu, "Arc exponent for --split")->capture_default_str();
    moment->add_flag("--split", split, "Also split the moment over major/minor arcs");

    CLI::App* singular = app.add_subcommand("singular", "Singular series value");
    singular->add_option("--x", x, "Parameter X")->required();
    singular->add_option("--p", p, "Exponent p")->required();
    singular->add_option("--pcap", pcap, "Denominator cap P (0 = X^nu)")->capture_default_str();
    singular->add_option("--nu", nu, "Used when --pcap is 0")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "Ratio table across an X sweep");
    verify->add_option("--p", p, "Moment exponent (> 2)")->default_val(3.0);
    verify->add_option("--nu", nu, "Arc exponent")->capture_default_str();
    verify->add_option("--x-list", x_list, "Comma-separated X values")
        ->required()
        ->delimiter(',');
    verify->add_option("--tol", tol, "Quadrature refinement tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        set_thread_count(opts.threads);
        const auto start = std::chrono::steady_clock::now();
        auto wall_ms = [&start] {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             start)
                .count();
        };
        if (app.got_subcommand(verify)) {
            VerificationReport report = theorem_ratio_table(p, x_list, nu, tol);
            report.meta.seed = opts.seed;
            const std::string text =
                opts.format == "json" ? verify_json(report) : verify_csv(report);
            return write_text(text, opts.out);
        }
        Record rec;
        if (app.got_subcommand(sum)) {
            rec = run_sum(x, sum_alpha->count() > 0, alpha,
                          sum_a->count() > 0 || sum_q->count() > 0, a, q);
        } else if (app.got_subcommand(kernel)) {
            rec = run_kernel(x, beta);
        } else if (app.got_subcommand(arcs)) {
            rec = run_arcs(x, nu, arcs_alpha->count() > 0, alpha);
        } else if (app.got_subcommand(moment)) {
            rec = run_moment(x, p, exact, kernel_flag, grid_n, tol, nu, split);
        } else if (app.got_subcommand(singular)) {
            rec = run_singular(x, p, pcap, nu);
        }
        return emit_records({rec}, opts, wall_ms());
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
