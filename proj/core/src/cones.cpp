#include "setreg/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace setreg {

namespace detail {

Vec nnls(const Mat& A, const Vec& b, double tol) {
    const int n = static_cast<int>(A.cols());
    Vec t = Vec::Zero(n);
    if (n == 0) return t;
    std::vector<char> passive(n, 0);
    const int maxOuter = 3 * n + 30;

    auto solvePassive = [&]() -> Vec {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (passive[i]) idx.push_back(i);
        Vec z = Vec::Zero(n);
        if (idx.empty()) return z;
        Mat Ap(A.rows(), static_cast<int>(idx.size()));
        for (size_t j = 0; j < idx.size(); ++j) Ap.col(static_cast<int>(j)) = A.col(idx[j]);
        const Vec zp = Ap.completeOrthogonalDecomposition().solve(b);
        for (size_t j = 0; j < idx.size(); ++j) z[idx[j]] = zp[static_cast<int>(j)];
        return z;
    };

    for (int outer = 0; outer < maxOuter; ++outer) {
        const Vec w = A.transpose() * (b - A * t);
        int best = -1;
        double bestW = tol * std::max(1.0, b.norm());
        for (int i = 0; i < n; ++i)
            if (!passive[i] && w[i] > bestW) { bestW = w[i]; best = i; }
        if (best < 0) break;
        passive[best] = 1;

        Vec z = solvePassive();
        int inner = 0;
        while (true) {
            double alpha = 1.0;
            bool clipped = false;
            for (int i = 0; i < n; ++i) {
                if (passive[i] && z[i] <= 0.0) {
                    const double a = t[i] / (t[i] - z[i]);
                    if (a < alpha) alpha = a;
                    clipped = true;
                }
            }
            if (!clipped) break;
            t += alpha * (z - t);
            for (int i = 0; i < n; ++i)
                if (passive[i] && t[i] <= tol) { passive[i] = 0; t[i] = 0.0; }
            z = solvePassive();
            if (++inner > 2 * n + 10) break;
        }
        t = z;
        for (int i = 0; i < n; ++i)
            if (t[i] < 0.0) t[i] = 0.0;
    }
    return t;
}

}  // namespace detail

ConeRep ConeRep::trivial(int dim) { return ConeRep(Kind::Trivial, dim); }

ConeRep ConeRep::rays(std::vector<Vec> generators, int dim) {
    std::vector<Vec> gens;
    for (auto& g : generators) {
        if (static_cast<int>(g.size()) != dim) throw DimensionError("ConeRep: generator dimension mismatch");
        const double n = g.norm();
        if (n < 1e-12) continue;
        Vec u = g / n;
        bool dup = false;
        for (const auto& h : gens)
            if ((u - h).norm() < 1e-10) { dup = true; break; }
        if (!dup) gens.push_back(std::move(u));
    }
    // Minimal representation: drop generators expressible as nonnegative
    // combinations of the rest.
    for (size_t i = 0; i < gens.size();) {
        if (gens.size() == 1) break;
        Mat A(dim, static_cast<int>(gens.size()) - 1);
        int c = 0;
        for (size_t j = 0; j < gens.size(); ++j)
            if (j != i) A.col(c++) = gens[j];
        const Vec t = detail::nnls(A, gens[i]);
        if ((A * t - gens[i]).norm() <= 1e-10) {
            gens.erase(gens.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
    if (gens.empty()) return trivial(dim);
    ConeRep k(Kind::FinitelyGenerated, dim);
    k.generators_ = std::move(gens);
    return k;
}

ConeRep ConeRep::subspace(Mat basis, int dim) {
    if (basis.cols() == 0) return trivial(dim);
    if (static_cast<int>(basis.rows()) != dim) throw DimensionError("ConeRep: basis dimension mismatch");
    const Mat gram = basis.transpose() * basis;
    if ((gram - Mat::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("ConeRep: subspace basis not orthonormal");
    ConeRep k(Kind::Subspace, dim);
    k.basis_ = std::move(basis);
    return k;
}

Vec ConeRep::project(const Vec& v) const {
    if (static_cast<int>(v.size()) != dim_) throw DimensionError("ConeRep::project: dimension mismatch");
    switch (kind_) {
        case Kind::Trivial:
            return Vec::Zero(dim_);
        case Kind::Subspace:
            return basis_ * (basis_.transpose() * v);
        case Kind::FinitelyGenerated: {
            Mat G(dim_, static_cast<int>(generators_.size()));
            for (size_t j = 0; j < generators_.size(); ++j) G.col(static_cast<int>(j)) = generators_[j];
            return G * detail::nnls(G, v);
        }
    }
    return Vec::Zero(dim_);
}

bool ConeRep::contains(const Vec& v, double tol) const {
    return (project(v) - v).norm() <= tol * std::max(1.0, v.norm());
}

std::vector<Vec> ConeRep::rayGenerators() const {
    switch (kind_) {
        case Kind::Trivial:
            return {};
        case Kind::FinitelyGenerated:
            return generators_;
        case Kind::Subspace: {
            std::vector<Vec> out;
            for (int j = 0; j < basis_.cols(); ++j) {
                out.push_back(basis_.col(j));
                out.push_back(-basis_.col(j));
            }
            return out;
        }
    }
    return {};
}

namespace {

constexpr double kMembershipTol = 1e-9;

// Orthogonal complement of the column span.
Mat complementBasis(const Mat& basis, int dim) {
    if (basis.cols() == 0) return Mat::Identity(dim, dim);
    Eigen::FullPivHouseholderQR<Mat> qr(basis);
    const Mat Q = qr.matrixQ();
    const long rank = qr.rank();
    return Q.rightCols(dim - rank);
}

ConeRep normalConeConvex(const SetDescriptor& set, const Vec& x) {
    const int d = set.dimension();
    if (const auto* h = std::get_if<HalfSpace>(&set.data())) {
        if (h->offset - h->normal.dot(x) > kMembershipTol) return ConeRep::trivial(d);
        return ConeRep::rays({h->normal}, d);
    }
    if (const auto* h = std::get_if<Hyperplane>(&set.data())) {
        Mat b(d, 1);
        b.col(0) = h->normal;
        return ConeRep::subspace(b, d);
    }
    if (const auto* a = std::get_if<AffineSubspace>(&set.data())) {
        Mat comp = complementBasis(a->basis, d);
        return ConeRep::subspace(comp, d);
    }
    if (const auto* b = std::get_if<Ball>(&set.data())) {
        const Vec r = x - b->center;
        if (b->radius - r.norm() > kMembershipTol) return ConeRep::trivial(d);
        return ConeRep::rays({r}, d);
    }
    const auto& p = std::get<Polyhedron>(set.data());
    std::vector<Vec> gens;
    for (const auto& row : p.rows)
        if (std::abs(row.normal.dot(x) - row.offset) <= kMembershipTol) gens.push_back(row.normal);
    return ConeRep::rays(std::move(gens), d);
}

}  // namespace

ConeRep normal_cone(const SetDescriptor& set, const Vec& x) {
    if (set.dimension() != x.size()) throw DimensionError("normal_cone: dimension mismatch");
    if (!membership(set, x, kMembershipTol)) throw PointNotInSet("normal_cone: point not in set");
    if (const auto* u = std::get_if<UnionSet>(&set.data())) {
        int hits = 0;
        const SetDescriptor* home = nullptr;
        for (const auto& piece : u->pieces) {
            if (membership(piece, x, kMembershipTol)) {
                ++hits;
                home = &piece;
            }
        }
        if (hits == 0) throw PointNotInSet("normal_cone: point not in any piece");
        if (hits > 1)
            throw NonRegularPoint("normal_cone: union point lies in multiple pieces");
        return normalConeConvex(*home, x);
    }
    return normalConeConvex(set, x);
}

ConeRep strict_delta_cone(const SetDescriptor& set, const Vec& xbar, double delta,
                          int sample_budget, unsigned seed) {
    if (set.dimension() != xbar.size()) throw DimensionError("strict_delta_cone: dimension mismatch");
    if (!(delta > 0.0)) throw ValidationError("strict_delta_cone: delta must be positive");
    if (!membership(set, xbar, kMembershipTol)) throw PointNotInSet("strict_delta_cone: point not in set");
    const int d = set.dimension();

    if (const auto* h = std::get_if<HalfSpace>(&set.data())) {
        const double slack = h->offset - h->normal.dot(xbar);
        if (slack <= delta) return ConeRep::rays({h->normal}, d);
        return ConeRep::trivial(d);
    }
    if (std::holds_alternative<Hyperplane>(set.data()) ||
        std::holds_alternative<AffineSubspace>(set.data())) {
        return normal_cone(set, xbar);  // delta-independent
    }
    if (const auto* p = std::get_if<Polyhedron>(&set.data())) {
        // Row i contributes iff its face is reachable within delta.
        std::vector<Vec> gens;
        for (size_t i = 0; i < p->rows.size(); ++i) {
            auto facePoint = detail::polyhedronProjectWithEqualities(
                p->rows, {static_cast<int>(i)}, xbar);
            if (facePoint && (*facePoint - xbar).norm() <= delta + kMembershipTol)
                gens.push_back(p->rows[i].normal);
        }
        return ConeRep::rays(std::move(gens), d);
    }
    if (const auto* b = std::get_if<Ball>(&set.data())) {
        const Vec r = xbar - b->center;
        if (b->radius - r.norm() > delta) return ConeRep::trivial(d);  // boundary unreachable
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const Vec dir0 = r.norm() > 1e-12 ? Vec(r / r.norm()) : Vec(Vec::Unit(d, 0));
        std::vector<Vec> gens{dir0};
        for (int s = 0; s < sample_budget; ++s) {
            Vec noise(d);
            for (int i = 0; i < d; ++i) noise[i] = gauss(rng);
            Vec dir = dir0 + (delta / b->radius) * noise;
            dir.normalize();
            const Vec y = b->center + b->radius * dir;
            if ((y - xbar).norm() <= delta) gens.push_back(dir);
        }
        return ConeRep::rays(std::move(gens), d);
    }
    const auto& u = std::get<UnionSet>(set.data());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> gens;
    auto absorb = [&](const ConeRep& k) {
        for (auto& g : k.rayGenerators()) gens.push_back(g);
    };
    for (const auto& piece : u.pieces) {
        if (membership(piece, xbar, kMembershipTol)) absorb(strict_delta_cone(piece, xbar, delta, sample_budget, seed));
        for (int s = 0; s < sample_budget; ++s) {
            Vec z(xbar.size());
            for (int i = 0; i < z.size(); ++i) z[i] = xbar[i] + delta * gauss(rng);
            const Vec y = projectOne(piece, z);
            if ((y - xbar).norm() > delta) continue;
            absorb(normalConeConvex(piece, y));
        }
    }
    return ConeRep::rays(std::move(gens), set.dimension());
}

ConeRep product_cone(const std::vector<ConeRep>& cones) {
    if (cones.empty()) throw ValidationError("product_cone: empty factor list");
    const int n = cones.front().dimension();
    for (const auto& k : cones)
        if (k.dimension() != n) throw DimensionError("product_cone: factor dimension mismatch");
    const int m = static_cast<int>(cones.size());
    bool allTrivial = true;
    std::vector<Vec> gens;
    for (int i = 0; i < m; ++i) {
        for (const auto& g : cones[i].rayGenerators()) {
            allTrivial = false;
            Vec e = Vec::Zero(n * m);
            e.segment(i * n, n) = g;
            gens.push_back(std::move(e));
        }
        if (!cones[i].isTrivial()) allTrivial = false;
    }
    if (allTrivial) return ConeRep::trivial(n * m);
    return ConeRep::rays(std::move(gens), n * m);
}

ConeRep diagonal_complement(int n, int m) {
    if (n < 1 || m < 2) throw ValidationError("diagonal_complement: need n >= 1, m >= 2");
    // Orthonormal basis of {t in R^m : sum t = 0}, tensored with R^n.
    Mat M(m, m - 1);
    M.setZero();
    for (int k = 0; k < m - 1; ++k) {
        for (int i = 0; i <= k; ++i) M(i, k) = 1.0;
        M(k + 1, k) = -(k + 1.0);
        M.col(k) /= M.col(k).norm();
    }
    Mat basis = Mat::Zero(n * m, n * (m - 1));
    for (int k = 0; k < m - 1; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < m; ++i) basis(i * n + j, k * n + j) = M(i, k);
    return ConeRep::subspace(std::move(basis), n * m);
}

}  // namespace setreg
