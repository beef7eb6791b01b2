#pragma once
#include <array>

#include "setreg/regularity.hpp"

namespace setreg {

// Product-space reformulation: Omega = Omega_1 x ... x Omega_m versus the
// diagonal L = {(x,...,x)} in R^{n*m} with the 2-norm. The lift map is
// A x = (x,...,x), so ||A x|| = sqrt(m)||x||.
struct LiftedProblem {
    std::vector<SetDescriptor> sets;
    int n = 0;
    int m = 0;

    static LiftedProblem build(std::vector<SetDescriptor> sets);

    Vec lift(const Vec& x) const;
    Vec blockMean(const Vec& z) const;

    // Blockwise projection onto the product set (deterministic tie-break).
    Vec projectProduct(const Vec& z) const;
    // A applied to the blockwise mean; exact.
    Vec projectDiagonal(const Vec& z) const;
};

struct LiftedConstants {
    double eta_prime = 0.0;
    double nu_prime = 1.0;
    double c_prime = 1.0;
    // min ||sum x_i*|| over x_i* in the i-th cone, sum ||x_i*||^2 = 1.
    double k_star = 0.0;
};

// Constants of the lifted pair {Omega, L} at A(xbar), from the kernel
// k* and the closed forms s = sqrt(1 - k*^2/m), c' = s,
// eta' = sqrt((1-s)/2), nu' = sqrt((1+s)/2). All-trivial cones (interior
// reference point) degenerate to (1, 0, -1).
LiftedConstants lifted_constants(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                 const DeltaSchedule& sched = {});

// Independent m = 2 route: c' = sup ||x_1* - x_2*|| over
// ||x_1*||^2 + ||x_2*||^2 = 1/2, evaluated from the pairwise extremal angle.
double lifted_c_two_sets_cons(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                              const DeltaSchedule& sched = {});

// Second independent route for tests: constants of the pair
// {product cone, diagonal complement} computed by the generic pairwise
// kernel in R^{n*m}.
RegularityReport lifted_pair_report(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                    const DeltaSchedule& sched = {});

// True iff regularity of the original collection and the lifted test
// c' < 1 (equivalently eta' > 0) agree.
bool lifted_equivalence_check(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                              const DeltaSchedule& sched = {});

}  // namespace setreg
