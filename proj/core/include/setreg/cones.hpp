#pragma once
#include <vector>

#include "setreg/geometry.hpp"

namespace setreg {

// A closed cone: either finitely generated by unit rays (minimal
// representation), a linear subspace (orthonormal basis), or {0}.
class ConeRep {
public:
    enum class Kind { Trivial, FinitelyGenerated, Subspace };

    static ConeRep trivial(int dim);
    // Normalizes, deduplicates and removes generators that are nonnegative
    // combinations of the others. Empty list -> Trivial.
    static ConeRep rays(std::vector<Vec> generators, int dim);
    // Orthonormal basis columns required. Zero columns -> Trivial.
    static ConeRep subspace(Mat basis, int dim);

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }
    bool isTrivial() const { return kind_ == Kind::Trivial; }
    const std::vector<Vec>& generators() const { return generators_; }
    const Mat& basis() const { return basis_; }

    // Euclidean projection onto the cone.
    Vec project(const Vec& v) const;
    bool contains(const Vec& v, double tol = 1e-9) const;

    // Unit ray directions spanning the cone: the generators for a finitely
    // generated cone, +/- basis columns for a subspace, empty for Trivial.
    std::vector<Vec> rayGenerators() const;

private:
    ConeRep(Kind k, int dim) : kind_(k), dim_(dim) {}
    Kind kind_;
    int dim_;
    std::vector<Vec> generators_;
    Mat basis_;
};

// Frechet normal cone at x (x must lie in the set, tol 1e-9).
ConeRep normal_cone(const SetDescriptor& set, const Vec& x);

// Strict delta-normal cone: union of normal cones over set points within
// delta of xbar. Exact for polyhedral variants; sampled over-approximation
// (finitely generated hull) for Ball and Union.
ConeRep strict_delta_cone(const SetDescriptor& set, const Vec& xbar, double delta,
                          int sample_budget = 128, unsigned seed = 7);

// Block-embedded product cone in R^{n*m} (Proposition-8 style).
ConeRep product_cone(const std::vector<ConeRep>& cones);

// Orthonormal basis of {(v_1,...,v_m) : sum v_i = 0} in R^{n*m}.
ConeRep diagonal_complement(int n, int m);

namespace detail {
// Lawson-Hanson nonnegative least squares: argmin_{t>=0} ||A t - b||.
Vec nnls(const Mat& A, const Vec& b, double tol = 1e-12);
}

}  // namespace setreg
