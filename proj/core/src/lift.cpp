#include "setreg/lift.hpp"

#include <algorithm>
#include <cmath>

#include "setreg/errors.hpp"

namespace setreg {

LiftedProblem LiftedProblem::build(std::vector<SetDescriptor> sets) {
    if (sets.size() < 2) throw ValidationError("lift requires at least two sets");
    const int n = sets.front().dimension();
    for (const auto& s : sets)
        if (s.dimension() != n) throw DimensionError("lift: mixed ambient dimensions");
    LiftedProblem lp;
    lp.n = n;
    lp.m = static_cast<int>(sets.size());
    lp.sets = std::move(sets);
    return lp;
}

Vec LiftedProblem::lift(const Vec& x) const {
    if (x.size() != n) throw DimensionError("lift: wrong dimension");
    Vec z(n * m);
    for (int i = 0; i < m; ++i) z.segment(i * n, n) = x;
    return z;
}

Vec LiftedProblem::blockMean(const Vec& z) const {
    if (z.size() != n * m) throw DimensionError("blockMean: wrong dimension");
    Vec x = Vec::Zero(n);
    for (int i = 0; i < m; ++i) x += z.segment(i * n, n);
    return x / static_cast<double>(m);
}

Vec LiftedProblem::projectProduct(const Vec& z) const {
    if (z.size() != n * m) throw DimensionError("projectProduct: wrong dimension");
    Vec out(n * m);
    for (int i = 0; i < m; ++i)
        out.segment(i * n, n) = projectOne(sets[i], Vec(z.segment(i * n, n)));
    return out;
}

Vec LiftedProblem::projectDiagonal(const Vec& z) const { return lift(blockMean(z)); }

LiftedConstants lifted_constants(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                 const DeltaSchedule& sched) {
    detail::requireCommonPoint(sets, xbar);
    const int m = static_cast<int>(sets.size());
    const double delta = sched.deltas.empty() ? 1e-3 : sched.deltas.back();
    const auto cones = detail::collectionCones(sets, xbar, delta, sched);

    LiftedConstants out;
    try {
        out.k_star = min_combined_norm(cones, WeightNormalization::SumSquaresOne, sched.seed);
    } catch (const TrivialCone&) {
        // Interior reference point in every set: the lifted pair has a
        // trivial cone on the product side. k_star = -1 marks the empty
        // constraint set.
        out.k_star = -1.0;
        out.eta_prime = 1.0;
        out.nu_prime = 0.0;
        out.c_prime = -1.0;
        return out;
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - out.k_star * out.k_star / m));
    // Value-range bounds: c' in [sqrt(1-1/m), 1].
    out.c_prime = std::clamp(s, std::sqrt(1.0 - 1.0 / m), 1.0);
    out.eta_prime = std::sqrt(std::max(0.0, (1.0 - out.c_prime) / 2.0));
    out.nu_prime = std::sqrt((1.0 + out.c_prime) / 2.0);
    return out;
}

double lifted_c_two_sets_cons(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                              const DeltaSchedule& sched) {
    std::vector<SetDescriptor> vec{sets[0], sets[1]};
    detail::requireCommonPoint(vec, xbar);
    const double delta = sched.deltas.empty() ? 1e-3 : sched.deltas.back();
    const auto cones = detail::collectionCones(vec, xbar, delta, sched);
    if (cones[0].isTrivial() && cones[1].isTrivial()) return -1.0;
    if (cones[0].isTrivial() || cones[1].isTrivial()) return std::sqrt(0.5);
    // sup ||x1* - x2*||^2 = 1/2 - 2 t1 t2 <u1,u2> over t1^2 + t2^2 = 1/2:
    // attained at t1 = t2 = 1/2 when the worst inner product is negative,
    // else at a single nonzero weight.
    const double q = cone_pair_extremal_angle(cones[0], cones[1], sched.seed).min_inner;
    return std::sqrt((1.0 - std::min(q, 0.0)) / 2.0);
}

RegularityReport lifted_pair_report(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                    const DeltaSchedule& sched) {
    detail::requireCommonPoint(sets, xbar);
    const int n = static_cast<int>(xbar.size());
    const int m = static_cast<int>(sets.size());
    const double delta = sched.deltas.empty() ? 1e-3 : sched.deltas.back();
    const auto cones = detail::collectionCones(sets, xbar, delta, sched);

    RegularityReport rep;
    rep.delta_schedule = sched.deltas;
    const ConeRep P = product_cone(cones);
    if (P.isTrivial()) {
        rep.eta_hat = 1.0;
        rep.nu_hat = 0.0;
        rep.c_hat = -1.0;
        rep.c_hat_plus = 0.0;
        rep.classification = Classification::UniformlyRegular;
        return rep;
    }
    const ConeRep D = diagonal_complement(n, m);
    const double q = cone_pair_extremal_angle(P, D, sched.seed).min_inner;
    rep.c_hat = 0.0 - q;
    rep.eta_hat = std::sqrt(std::max(0.0, (1.0 + q) / 2.0));
    rep.nu_hat = std::sqrt(std::max(0.0, (1.0 - q) / 2.0));
    rep.c_hat_plus = std::max(rep.c_hat, 0.0) + 0.0;  // +0.0 kills negative zero
    rep.classification = classify(rep.eta_hat);
    rep.borderline = rep.eta_hat > 0.0 && rep.eta_hat <= 1e-9;
    return rep;
}

bool lifted_equivalence_check(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                              const DeltaSchedule& sched) {
    const RegularityReport base = compute_regularity(sets, xbar, sched);
    const LiftedConstants lc = lifted_constants(sets, xbar, sched);
    const bool baseRegular = base.classification == Classification::UniformlyRegular;
    const bool liftedRegular = lc.c_prime < 1.0 - 1e-9;
    // All-trivial cones degenerate to c' = -1 on both readings.
    if (lc.k_star < 0.0) return baseRegular;
    return baseRegular == liftedRegular;
}

}  // namespace setreg
