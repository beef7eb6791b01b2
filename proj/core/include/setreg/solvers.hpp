#pragma once
#include <optional>
#include <string>
#include <utility>

#include "setreg/lift.hpp"

namespace setreg {

struct SolverConfig {
    Vec x0;
    int max_iterations = 20000;
    double stop_displacement = 1e-12;
    std::optional<Vec> reference_solution;
    unsigned seed = 0;
};

struct Trace {
    std::string method;
    int num_sets = 0;
    std::vector<Vec> iterates;
    std::vector<double> displacements;       // ||x_{k+1} - x_k||
    std::vector<double> distances_to_limit;  // filled once a limit is known
    std::optional<Vec> limit;
    bool converged = false;
    bool finite_convergence = false;  // an exact zero displacement stopped the run
    bool nonexpansive_ok = true;
    std::vector<std::size_t> violations;  // displacement indices violating the cycle condition
};

// Round-robin projections x_{k+1} = P_{Omega_{(k mod m)+1}}(x_k);
// deterministic first-point tie-break. Stops once every displacement in a
// full cycle is <= stop_displacement.
Trace cyclic_projections(const std::vector<SetDescriptor>& sets, const SolverConfig& cfg);

// Cyclic projections restricted to exactly two sets.
Trace alternating_projections(const std::vector<SetDescriptor>& sets, const SolverConfig& cfg);

// x_{k+1} = (1/m) sum_i P_{Omega_i}(x_k).
Trace averaged_projections(const std::vector<SetDescriptor>& sets, const SolverConfig& cfg);

// Alternating projections between the product set and the diagonal in
// R^{n*m}, started at A(x0). Returns the lifted trace and the deflated
// sequence y_k = blockMean(z_{2k}), which reproduces averaged_projections.
std::pair<Trace, Trace> averaged_via_lift(const std::vector<SetDescriptor>& sets,
                                          const SolverConfig& cfg);

// Cycle condition ||x_{km+i+1} - x_{km+i}|| <= ||x_{km+2} - x_{km+1}||
// for i = 2..m over all complete cycles after the first (1e-12 slack);
// the first cycle leaves the arbitrary start point. Automatic for m = 2.
std::pair<bool, std::vector<std::size_t>> check_nonexpansive(const Trace& trace, int m);

struct RateFit {
    double per_step_rate = 0.0;
    double per_cycle_rate = 0.0;
    double r_squared = 1.0;
    bool finite_convergence = false;
};

// Least-squares geometric fit of log-distance-to-limit vs iteration over
// the window after the first cycle and above 1e3 * stop_displacement.
RateFit estimate_rate(const Trace& trace, int m, double stop_displacement = 1e-12);

struct TheoryReport {
    bool hypothesis_ok = false;  // c_hat < 1/(m-1)
    double c_hat = 1.0;
    double c_min = 0.0;          // (m-1) * c_hat
    double c_used = 0.0;         // max(c_min, 0) + 0.01, clamped below 1
    double theoretical_rate = 1.0;  // c_used^(1/m)
    double empirical_rate = 0.0;
    double start_radius_bound = 0.0;  // delta (1-c) / (2 (m+1)) at delta = 1
    bool pass = false;           // empirical <= theoretical + 0.02
};

TheoryReport rate_vs_theory(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                            const Trace& trace, const DeltaSchedule& sched = {});

struct SuperRegularityProbe {
    bool pass = false;
    double worst_ratio = -1.0;
};

// Samples z, x in the set near xbar and unit normals u at x, checking
// <u, z - x> <= gamma ||z - x||. Convex variants short-circuit.
SuperRegularityProbe super_regularity_probe(const SetDescriptor& set, const Vec& xbar,
                                            double gamma, double delta, int samples,
                                            unsigned seed = 11);

}  // namespace setreg
