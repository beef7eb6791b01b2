#pragma once
#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

#include "setreg/errors.hpp"

namespace setreg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// {x : <normal,x> <= offset}, normal stored unit
struct HalfSpace {
    Vec normal;
    double offset = 0.0;
};

// {x : <normal,x> = offset}, normal stored unit
struct Hyperplane {
    Vec normal;
    double offset = 0.0;
};

// point + span(basis columns), basis orthonormal
struct AffineSubspace {
    Vec point;
    Mat basis;
};

struct Ball {
    Vec center;
    double radius = 1.0;
};

struct PolyRow {
    Vec normal;  // unit
    double offset = 0.0;
};

// {x : <a_i,x> <= b_i for all rows}; nonempty by construction
struct Polyhedron {
    std::vector<PolyRow> rows;
};

class SetDescriptor;

// Finite union of convex pieces (no nested unions).
struct UnionSet {
    std::vector<SetDescriptor> pieces;
};

class SetDescriptor {
public:
    using Variant = std::variant<HalfSpace, Hyperplane, AffineSubspace, Ball, Polyhedron, UnionSet>;

    static SetDescriptor halfSpace(Vec normal, double offset);
    static SetDescriptor hyperplane(Vec normal, double offset);
    static SetDescriptor affineSubspace(Vec point, Mat basis);
    static SetDescriptor ball(Vec center, double radius);
    static SetDescriptor polyhedron(std::vector<PolyRow> rows);
    static SetDescriptor unionOf(std::vector<SetDescriptor> pieces);

    int dimension() const { return dim_; }
    bool isConvex() const { return !std::holds_alternative<UnionSet>(v_); }
    const Variant& data() const { return v_; }

private:
    SetDescriptor(Variant v, int dim) : v_(std::move(v)), dim_(dim) {}
    Variant v_;
    int dim_ = 0;
};

double distance(const SetDescriptor& set, const Vec& x);

// All global minimizers of ||x - .|| over the set; exactly one point for
// convex variants, every tie (within 1e-10 of the minimum) for unions,
// sorted lexicographically.
std::vector<Vec> project(const SetDescriptor& set, const Vec& x);

// Deterministic selection: lexicographically smallest projection.
Vec projectOne(const SetDescriptor& set, const Vec& x);

bool membership(const SetDescriptor& set, const Vec& x, double tol);

namespace detail {

// Projection of z onto {x : <a_i,x> <= b_i} by exhaustive active-set
// enumeration over row subsets of size <= dim. Exact at desk scale.
// Empty polyhedron -> nullopt.
std::optional<Vec> polyhedronProject(const std::vector<PolyRow>& rows, const Vec& z);

// Same, with the rows in `equalities` forced to hold with equality.
std::optional<Vec> polyhedronProjectWithEqualities(const std::vector<PolyRow>& rows,
                                                   const std::vector<int>& equalities,
                                                   const Vec& z);

}  // namespace detail

}  // namespace setreg
