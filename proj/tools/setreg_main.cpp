#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "setreg/problem_io.hpp"
#include "setreg/primal.hpp"
#include "setreg/solvers.hpp"

namespace {

using namespace setreg;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCheckFailure = 2;
constexpr int kExitNonConvergence = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Options {
    std::string problem_path;
    std::string method;
    int start_index = 0;
    unsigned seed = 7;
    double tolerance = 1e-9;
    std::string output;
};

std::ostream& reportStream(const Options& opt, std::ofstream& file) {
    if (opt.output.empty()) return std::cout;
    file.open(opt.output);
    if (!file) throw ValidationError("cannot open output path: " + opt.output);
    return file;
}

DeltaSchedule scheduleFor(const Options& opt) {
    DeltaSchedule sched;
    sched.seed = opt.seed;
    return sched;
}

bool allPolyhedral(const std::vector<SetDescriptor>& sets) {
    for (const auto& s : sets) {
        const auto& d = s.data();
        if (!std::holds_alternative<HalfSpace>(d) && !std::holds_alternative<Hyperplane>(d) &&
            !std::holds_alternative<Polyhedron>(d))
            return false;
    }
    return true;
}

int cmdConstants(const Options& opt) {
    const ProblemFile pf = load_problem(opt.problem_path);
    const DeltaSchedule sched = scheduleFor(opt);
    const RegularityReport reg = compute_regularity(pf.sets, pf.reference_point, sched);
    const LiftedConstants lc = lifted_constants(pf.sets, pf.reference_point, sched);
    const int m = static_cast<int>(pf.sets.size());

    std::ofstream file;
    std::ostream& out = reportStream(opt, file);
    out << "report: constants\n";
    out << "sets: " << m << "  dimension: " << pf.dimension << "\n";
    out << "eta_hat: " << fmt(reg.eta_hat) << "\n";
    out << "nu_hat: " << fmt(reg.nu_hat) << "\n";
    out << "c_hat: " << fmt(reg.c_hat) << "\n";
    out << "c_hat_plus: " << fmt(reg.c_hat_plus) << "\n";
    out << "eta_prime: " << fmt(lc.eta_prime) << "\n";
    out << "nu_prime: " << fmt(lc.nu_prime) << "\n";
    out << "c_prime: " << fmt(lc.c_prime) << "\n";
    out << "classification: "
        << (reg.classification == Classification::UniformlyRegular ? "UniformlyRegular"
                                                                   : "ApproximatelyStationary")
        << (reg.borderline ? " (borderline)" : "") << "\n";
    out << "delta_schedule:";
    for (double d : reg.delta_schedule) out << " " << fmt(d);
    out << "\nstabilized: " << (reg.stabilized ? "true" : "false") << "\n";
    const double r1 = std::abs(reg.eta_hat * reg.eta_hat + reg.nu_hat * reg.nu_hat - 1.0);
    const double r2 = std::abs(1.0 + reg.c_hat - 2.0 * reg.nu_hat * reg.nu_hat);
    const double r3 = std::abs(reg.c_hat - (1.0 - 2.0 * reg.eta_hat * reg.eta_hat));
    out << "identity_residuals: " << fmt(r1) << " " << fmt(r2) << " " << fmt(r3) << "\n";
    const double lo = std::sqrt(1.0 - 1.0 / m);
    const bool rangeOk = lc.k_star < 0.0 || (lc.c_prime >= lo - 1e-9 && lc.c_prime <= 1.0 + 1e-9);
    out << "lifted_range_ok: " << (rangeOk ? "true" : "false") << "\n";
    return kExitOk;
}

int cmdSolve(const Options& opt) {
    const ProblemFile pf = load_problem(opt.problem_path);
    if (opt.start_index < 0 ||
        (!pf.start_points.empty() &&
         opt.start_index >= static_cast<int>(pf.start_points.size())))
        throw ValidationError("start index out of range");
    SolverConfig cfg;
    cfg.x0 = pf.start_points.empty() ? pf.reference_point : pf.start_points[opt.start_index];
    cfg.max_iterations = pf.max_iterations;
    cfg.stop_displacement = pf.stop_displacement;
    cfg.seed = opt.seed;

    Trace trace;
    std::optional<Trace> lifted;
    if (opt.method == "cyclic") {
        trace = cyclic_projections(pf.sets, cfg);
    } else if (opt.method == "alternating") {
        if (pf.sets.size() != 2)
            throw MethodArityError("alternating projections require exactly two sets");
        trace = alternating_projections(pf.sets, cfg);
    } else if (opt.method == "averaged") {
        trace = averaged_projections(pf.sets, cfg);
    } else if (opt.method == "averaged-lift") {
        auto [z, y] = averaged_via_lift(pf.sets, cfg);
        lifted = std::move(z);
        trace = std::move(y);
    } else {
        throw ValidationError("unknown method: " + opt.method);
    }

    std::ostringstream report;
    report << "report: solve\n";
    report << "method: " << opt.method << "\n";
    report << "iterations: " << trace.iterates.size() - 1 << "\n";
    report << "converged: " << (trace.converged ? "true" : "false") << "\n";
    report << "finite_convergence: " << (trace.finite_convergence ? "true" : "false") << "\n";
    report << "nonexpansive_ok: " << (trace.nonexpansive_ok ? "true" : "false") << "\n";
    if (lifted) {
        const LiftedProblem lp = LiftedProblem::build(pf.sets);
        double worst = 0.0;
        for (std::size_t k = 0; 2 * k < lifted->iterates.size(); ++k)
            worst = std::max(worst,
                             (lifted->iterates[2 * k] - lp.lift(trace.iterates[k])).norm());
        report << "deflation_residual: " << fmt(worst) << "\n";
    }
    try {
        const RateFit fit = estimate_rate(trace, trace.num_sets, cfg.stop_displacement);
        report << "per_step_rate: " << fmt(fit.per_step_rate) << "\n";
        report << "per_cycle_rate: " << fmt(fit.per_cycle_rate) << "\n";
        report << "fit_r_squared: " << fmt(fit.r_squared) << "\n";
        const TheoryReport theory =
            rate_vs_theory(pf.sets, pf.reference_point, trace, scheduleFor(opt));
        report << "theory_hypothesis_ok: " << (theory.hypothesis_ok ? "true" : "false") << "\n";
        report << "theory_rate_bound: " << fmt(theory.theoretical_rate) << "\n";
        report << "theory_pass: " << (theory.pass ? "true" : "false") << "\n";
    } catch (const InsufficientData&) {
        report << "per_step_rate: n/a (too few iterations in the geometric regime)\n";
    }

    std::ostringstream csv;
    csv << "k,displacement,distance_to_limit\n";
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        const double disp = k < trace.displacements.size() ? trace.displacements[k] : 0.0;
        const double dist =
            k < trace.distances_to_limit.size() ? trace.distances_to_limit[k] : 0.0;
        csv << k << "," << fmt(disp) << "," << fmt(dist) << "\n";
    }

    std::cout << report.str();
    if (opt.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(opt.output);
        if (!out) throw ValidationError("cannot open output path: " + opt.output);
        out << csv.str();
    }
    return trace.converged ? kExitOk : kExitNonConvergence;
}

int cmdVerify(const Options& opt) {
    const ProblemFile pf = load_problem(opt.problem_path);
    const DeltaSchedule sched = scheduleFor(opt);
    const int m = static_cast<int>(pf.sets.size());
    const double tol = opt.tolerance;

    std::ofstream file;
    std::ostream& out = reportStream(opt, file);
    out << "report: verify\n";
    bool allPass = true;
    auto check = [&](const std::string& name, double residual, double bound) {
        const bool ok = residual <= bound;
        allPass = allPass && ok;
        out << (ok ? "PASS" : "FAIL") << " " << name << " residual=" << fmt(residual)
            << " bound=" << fmt(bound) << "\n";
    };

    const RegularityReport reg = compute_regularity(pf.sets, pf.reference_point, sched);
    check("identity eta^2+nu^2=1",
          std::abs(reg.eta_hat * reg.eta_hat + reg.nu_hat * reg.nu_hat - 1.0), tol);
    check("identity 1+c=2nu^2", std::abs(1.0 + reg.c_hat - 2.0 * reg.nu_hat * reg.nu_hat), tol);
    check("identity c=1-2eta^2", std::abs(reg.c_hat - (1.0 - 2.0 * reg.eta_hat * reg.eta_hat)),
          tol);
    out << "classification: "
        << (reg.classification == Classification::UniformlyRegular ? "UniformlyRegular"
                                                                   : "ApproximatelyStationary")
        << "\n";

    const LiftedConstants lc = lifted_constants(pf.sets, pf.reference_point, sched);
    if (lc.k_star >= 0.0) {
        const double lo = std::sqrt(1.0 - 1.0 / m);
        check("lifted range c' >= sqrt(1-1/m)", std::max(lo - lc.c_prime, 0.0), 1e-6);
        check("lifted range c' <= 1", std::max(lc.c_prime - 1.0, 0.0), 1e-6);
        check("lifted identity eta'^2+nu'^2=1",
              std::abs(lc.eta_prime * lc.eta_prime + lc.nu_prime * lc.nu_prime - 1.0), 1e-9);
        if (m == 2) {
            const double cons = lifted_c_two_sets_cons({pf.sets[0], pf.sets[1]},
                                                       pf.reference_point, sched);
            check("lifted m=2 route agreement", std::abs(cons - lc.c_prime), 1e-6);
            check("lifted c' >= nu", std::max(reg.nu_hat - lc.c_prime, 0.0), 1e-6);
        }
    } else {
        out << "PASS lifted constants degenerate (interior reference point)\n";
    }

    if (pf.dimension <= 3 && allPolyhedral(pf.sets) && m <= 3) {
        const double theta = theta_hat_estimate(pf.sets, pf.reference_point, 0.01);
        check("primal-dual theta_hat vs eta_hat", std::abs(theta - reg.eta_hat), 3.0 * 0.01);
    }
    out << (allPass ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
    return allPass ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual regularity constants and projection solvers for set collections"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "RNG seed for sampled kernels");
    app.add_option("--tolerance", opt.tolerance, "check tolerance for verify");
    app.add_option("--output", opt.output, "write the report/CSV to this path");

    auto* constants = app.add_subcommand("constants", "compute regularity constants");
    constants->add_option("problem", opt.problem_path, "problem file")->required();

    auto* solve = app.add_subcommand("solve", "run a projection method");
    solve->add_option("problem", opt.problem_path, "problem file")->required();
    solve->add_option("--method", opt.method, "cyclic|alternating|averaged|averaged-lift")
        ->required();
    solve->add_option("--start-index", opt.start_index, "index into start_points");

    auto* verify = app.add_subcommand("verify", "run identity and oracle checks");
    verify->add_option("problem", opt.problem_path, "problem file")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (constants->parsed()) return cmdConstants(opt);
        if (solve->parsed()) return cmdSolve(opt);
        if (verify->parsed()) return cmdVerify(opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const MethodArityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitValidation;
}
