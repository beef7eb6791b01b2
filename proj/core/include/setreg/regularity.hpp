#pragma once
#include <array>
#include <vector>

#include "setreg/cones.hpp"

namespace setreg {

// Realization of the delta->0 limit: constants are evaluated on this fixed
// schedule and reported at the smallest delta. For polyhedral inputs all
// values coincide exactly; `stabilized` flags when they do not.
struct DeltaSchedule {
    std::vector<double> deltas{1e-1, 1e-2, 1e-3};
    int sample_budget = 128;
    unsigned seed = 7;
};

struct ConePairExtremes {
    double min_inner = 1.0;
    double max_inner = -1.0;
};

// min/max of <u,v> over unit u in K1, v in K2. Alternating exact
// coordinate steps from generator-pair multi-starts; exact in 2D.
ConePairExtremes cone_pair_extremal_angle(const ConeRep& K1, const ConeRep& K2,
                                          unsigned seed = 1);

enum class Classification { UniformlyRegular, ApproximatelyStationary };

struct RegularityReport {
    double eta_hat = 1.0;
    double nu_hat = 0.0;
    double c_hat = -1.0;
    double c_hat_plus = 0.0;
    Classification classification = Classification::UniformlyRegular;
    bool borderline = false;
    std::vector<double> delta_schedule;
    bool stabilized = true;
};

enum class WeightNormalization { SumOne, SumSquaresOne };

// min ||sum_i t_i u_i|| over unit directions u_i in cone i and nonnegative
// weights with sum t_i = 1 (SumOne) or sum t_i^2 = 1 (SumSquaresOne).
// Trivial cones are held at weight zero; throws TrivialCone if none is
// nontrivial. Deterministic given the seed.
double min_combined_norm(const std::vector<ConeRep>& cones, WeightNormalization norm,
                         unsigned seed = 1);

double eta_hat_two_sets(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                        const DeltaSchedule& sched = {});
double nu_hat_two_sets(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                       const DeltaSchedule& sched = {});
double c_hat_two_sets(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                      const DeltaSchedule& sched = {});

// Multi-start projected-descent realization of the m-set dual constant;
// independent of the pairwise route above.
double eta_hat_m_sets(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                      const DeltaSchedule& sched = {});

Classification classify(double eta_hat, double zero_threshold = 1e-9);

// Full report: constants across the delta schedule, classification and
// stabilization flag. For m = 2 the pairwise route is used; for m > 2 the
// descent kernel.
RegularityReport compute_regularity(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                    const DeltaSchedule& sched = {});

namespace detail {
// Cones of every set at xbar for one delta of the schedule.
std::vector<ConeRep> collectionCones(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                     double delta, const DeltaSchedule& sched);
void requireCommonPoint(const std::vector<SetDescriptor>& sets, const Vec& xbar);
}

}  // namespace setreg
