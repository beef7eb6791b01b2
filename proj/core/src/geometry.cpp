#include "setreg/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace setreg {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kFeasTol = 1e-10;
constexpr double kTieTol = 1e-10;

void requireFinite(const Vec& v, const char* what) {
    if (v.size() < 1) throw ValidationError(std::string(what) + ": dimension must be >= 1");
    if (!v.allFinite()) throw ValidationError(std::string(what) + ": non-finite coordinate");
}

// Normalizes to a unit vector; rescales the offset accordingly.
void normalizeRow(Vec& normal, double& offset, const char* what) {
    requireFinite(normal, what);
    const double n = normal.norm();
    if (n < kUnitTol) throw ValidationError(std::string(what) + ": zero normal");
    if (std::abs(n - 1.0) > kUnitTol) {
        normal /= n;
        offset /= n;
    }
}

void checkDim(const SetDescriptor& set, const Vec& x) {
    if (set.dimension() != x.size())
        throw DimensionError("point dimension " + std::to_string(x.size()) +
                             " does not match set dimension " + std::to_string(set.dimension()));
}

bool lexLess(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace

SetDescriptor SetDescriptor::halfSpace(Vec normal, double offset) {
    normalizeRow(normal, offset, "HalfSpace");
    const int d = static_cast<int>(normal.size());
    return SetDescriptor(HalfSpace{std::move(normal), offset}, d);
}

SetDescriptor SetDescriptor::hyperplane(Vec normal, double offset) {
    normalizeRow(normal, offset, "Hyperplane");
    const int d = static_cast<int>(normal.size());
    return SetDescriptor(Hyperplane{std::move(normal), offset}, d);
}

SetDescriptor SetDescriptor::affineSubspace(Vec point, Mat basis) {
    requireFinite(point, "AffineSubspace");
    const int d = static_cast<int>(point.size());
    if (basis.rows() != d) throw DimensionError("AffineSubspace: basis row count != dimension");
    if (basis.cols() > d) throw ValidationError("AffineSubspace: too many basis vectors");
    const Mat gram = basis.transpose() * basis;
    if ((gram - Mat::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("AffineSubspace: basis not orthonormal");
    return SetDescriptor(AffineSubspace{std::move(point), std::move(basis)}, d);
}

SetDescriptor SetDescriptor::ball(Vec center, double radius) {
    requireFinite(center, "Ball");
    if (!(radius > 0.0)) throw ValidationError("Ball: radius must be positive");
    const int d = static_cast<int>(center.size());
    return SetDescriptor(Ball{std::move(center), radius}, d);
}

SetDescriptor SetDescriptor::polyhedron(std::vector<PolyRow> rows) {
    if (rows.empty()) throw ValidationError("Polyhedron: needs at least one row");
    const int d = static_cast<int>(rows.front().normal.size());
    for (auto& r : rows) {
        if (r.normal.size() != d) throw DimensionError("Polyhedron: inconsistent row dimensions");
        normalizeRow(r.normal, r.offset, "Polyhedron");
    }
    // Feasibility probe: projection of the origin exists iff the set is nonempty.
    if (!detail::polyhedronProject(rows, Vec::Zero(d)))
        throw ValidationError("Polyhedron: infeasible constraint system");
    return SetDescriptor(Polyhedron{std::move(rows)}, d);
}

SetDescriptor SetDescriptor::unionOf(std::vector<SetDescriptor> pieces) {
    if (pieces.empty()) throw ValidationError("Union: needs at least one piece");
    const int d = pieces.front().dimension();
    for (const auto& p : pieces) {
        if (p.dimension() != d) throw DimensionError("Union: inconsistent piece dimensions");
        if (!p.isConvex()) throw ValidationError("Union: nested unions not allowed");
    }
    return SetDescriptor(UnionSet{std::move(pieces)}, d);
}

namespace detail {

namespace {

// min ||x - z|| s.t. A_S x = b_S for the selected rows; nullopt if the
// equality system is inconsistent.
std::optional<Vec> affineDrop(const std::vector<PolyRow>& rows, const std::vector<int>& sel,
                              const Vec& z) {
    if (sel.empty()) return z;
    const int d = static_cast<int>(z.size());
    Mat A(static_cast<int>(sel.size()), d);
    Vec b(static_cast<int>(sel.size()));
    for (size_t i = 0; i < sel.size(); ++i) {
        A.row(static_cast<int>(i)) = rows[sel[i]].normal.transpose();
        b[static_cast<int>(i)] = rows[sel[i]].offset;
    }
    const Mat AAt = A * A.transpose();
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(AAt);
    const Vec lambda = cod.solve(A * z - b);
    const Vec x = z - A.transpose() * lambda;
    if ((A * x - b).cwiseAbs().maxCoeff() > 1e-8) return std::nullopt;  // inconsistent
    return x;
}

}  // namespace

std::optional<Vec> polyhedronProjectWithEqualities(const std::vector<PolyRow>& rows,
                                                   const std::vector<int>& equalities,
                                                   const Vec& z) {
    const int d = static_cast<int>(z.size());
    const int n = static_cast<int>(rows.size());
    std::vector<int> free_rows;
    std::vector<char> is_eq(n, 0);
    for (int i : equalities) is_eq[i] = 1;
    for (int i = 0; i < n; ++i)
        if (!is_eq[i]) free_rows.push_back(i);

    std::optional<Vec> best;
    double bestDist = std::numeric_limits<double>::infinity();

    auto tryCandidate = [&](const std::vector<int>& sel) {
        auto x = affineDrop(rows, sel, z);
        if (!x) return;
        for (int i = 0; i < n; ++i) {
            const double slack = rows[i].offset - rows[i].normal.dot(*x);
            if (slack < -kFeasTol) return;
            if (is_eq[i] && std::abs(slack) > 1e-8) return;
        }
        const double dist = (*x - z).norm();
        if (dist < bestDist) {
            bestDist = dist;
            best = *x;
        }
    };

    // The optimal active set has at most d linearly independent rows, so
    // subsets of free rows up to size d (on top of the forced equalities)
    // cover every candidate.
    const int maxExtra = std::max(0, d - static_cast<int>(equalities.size()));
    std::vector<int> sel(equalities);
    std::vector<int> pick;
    auto recurse = [&](auto&& self, size_t start, int remaining) -> void {
        tryCandidate(sel);
        if (remaining == 0) return;
        for (size_t j = start; j < free_rows.size(); ++j) {
            sel.push_back(free_rows[j]);
            self(self, j + 1, remaining - 1);
            sel.pop_back();
        }
    };
    recurse(recurse, 0, maxExtra);
    (void)pick;
    return best;
}

std::optional<Vec> polyhedronProject(const std::vector<PolyRow>& rows, const Vec& z) {
    return polyhedronProjectWithEqualities(rows, {}, z);
}

}  // namespace detail

namespace {

Vec projectConvex(const SetDescriptor::Variant& v, const Vec& x) {
    if (const auto* h = std::get_if<HalfSpace>(&v)) {
        const double viol = h->normal.dot(x) - h->offset;
        return viol > 0.0 ? Vec(x - viol * h->normal) : x;
    }
    if (const auto* h = std::get_if<Hyperplane>(&v)) {
        return x - (h->normal.dot(x) - h->offset) * h->normal;
    }
    if (const auto* a = std::get_if<AffineSubspace>(&v)) {
        return a->point + a->basis * (a->basis.transpose() * (x - a->point));
    }
    if (const auto* b = std::get_if<Ball>(&v)) {
        const Vec r = x - b->center;
        const double n = r.norm();
        if (n <= b->radius) return x;
        return b->center + (b->radius / n) * r;
    }
    const auto& p = std::get<Polyhedron>(v);
    auto proj = detail::polyhedronProject(p.rows, x);
    // Nonemptiness was checked at construction.
    return *proj;
}

}  // namespace

double distance(const SetDescriptor& set, const Vec& x) {
    checkDim(set, x);
    if (const auto* u = std::get_if<UnionSet>(&set.data())) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& piece : u->pieces) best = std::min(best, distance(piece, x));
        return best;
    }
    return (projectConvex(set.data(), x) - x).norm();
}

std::vector<Vec> project(const SetDescriptor& set, const Vec& x) {
    checkDim(set, x);
    if (const auto* u = std::get_if<UnionSet>(&set.data())) {
        std::vector<Vec> candidates;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& piece : u->pieces) {
            Vec p = projectConvex(piece.data(), x);
            const double d = (p - x).norm();
            best = std::min(best, d);
            candidates.push_back(std::move(p));
        }
        std::vector<Vec> out;
        for (auto& p : candidates) {
            if ((p - x).norm() > best + kTieTol) continue;
            bool dup = false;
            for (const auto& q : out)
                if ((p - q).norm() <= kTieTol) { dup = true; break; }
            if (!dup) out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end(), lexLess);
        return out;
    }
    return {projectConvex(set.data(), x)};
}

Vec projectOne(const SetDescriptor& set, const Vec& x) { return project(set, x).front(); }

bool membership(const SetDescriptor& set, const Vec& x, double tol) {
    if (tol < 0.0) throw ValidationError("membership: tolerance must be nonnegative");
    return distance(set, x) <= tol;
}

}  // namespace setreg
