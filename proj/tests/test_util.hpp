#pragma once
#include <algorithm>
#include <functional>
#include <random>

#include "setreg/cones.hpp"

namespace testutil {

using setreg::Mat;
using setreg::SetDescriptor;
using setreg::Vec;

inline Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
inline Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

inline Vec randomUnit(int dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Vec v(dim);
    do {
        for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    } while (v.norm() < 1e-8);
    v.normalize();
    return v;
}

// Polyhedron with all rows active at the origin (offsets 0), guaranteed
// feasible. Row count is kept <= dim + 1 so the cone stays pointed-ish.
inline SetDescriptor randomActivePolyhedron(int dim, int rows, std::mt19937& rng) {
    std::vector<setreg::PolyRow> out;
    for (int i = 0; i < rows; ++i) out.push_back({randomUnit(dim, rng), 0.0});
    return SetDescriptor::polyhedron(std::move(out));
}

inline SetDescriptor randomActiveHalfSpace(int dim, std::mt19937& rng) {
    return SetDescriptor::halfSpace(randomUnit(dim, rng), 0.0);
}

// Random unit directions inside a cone: normalized nonnegative combinations
// of the ray generators (exact sector sweep in 2D).
inline std::vector<Vec> coneDirectionSamples(const setreg::ConeRep& K, int count,
                                             std::mt19937& rng) {
    std::vector<Vec> out;
    const auto rays = K.rayGenerators();
    if (rays.empty()) return out;
    out.insert(out.end(), rays.begin(), rays.end());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (static_cast<int>(out.size()) < count) {
        Vec v = Vec::Zero(K.dimension());
        for (const auto& g : rays) v += unif(rng) * g;
        if (v.norm() < 1e-10) continue;
        out.push_back(v.normalized());
    }
    return out;
}

// Sphere-discretization oracle for the pairwise extremal inner products.
inline std::pair<double, double> pairExtremesOracle(const setreg::ConeRep& K1,
                                                    const setreg::ConeRep& K2, int samples,
                                                    unsigned seed) {
    std::mt19937 rng(seed);
    const auto u = coneDirectionSamples(K1, samples, rng);
    const auto v = coneDirectionSamples(K2, samples, rng);
    double lo = 1.0, hi = -1.0;
    for (const auto& a : u)
        for (const auto& b : v) {
            const double q = a.dot(b);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
    return {lo, hi};
}

// Coefficient-grid oracle for min ||sum t_i u_i|| with sum t_i = 1 (or
// sum t_i^2 = 1 when sumSquares is set).
inline double minCombinedNormOracle(const std::vector<setreg::ConeRep>& cones, int dirSamples,
                                    int weightSteps, bool sumSquares, unsigned seed) {
    std::mt19937 rng(seed);
    const int m = static_cast<int>(cones.size());
    std::vector<std::vector<Vec>> dirs(m);
    for (int i = 0; i < m; ++i) {
        dirs[i] = coneDirectionSamples(cones[i], dirSamples, rng);
        if (dirs[i].empty()) dirs[i].push_back(Vec::Zero(cones[i].dimension()));
    }
    // Weight grid on the simplex, rescaled for the quadratic normalization.
    std::vector<std::vector<double>> weights;
    std::vector<int> w(m, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) {
            w[i] = left;
            std::vector<double> t(m);
            double norm2 = 0.0;
            for (int j = 0; j < m; ++j) {
                t[j] = static_cast<double>(w[j]) / weightSteps;
                norm2 += t[j] * t[j];
            }
            if (sumSquares) {
                if (norm2 < 1e-12) return;
                for (double& tj : t) tj /= std::sqrt(norm2);
            }
            weights.push_back(std::move(t));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            w[i] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, weightSteps);

    double best = std::numeric_limits<double>::infinity();
    std::vector<Vec> bestDirs;
    std::vector<double> bestWeights;
    std::vector<std::size_t> pick(m, 0);
    while (true) {
        for (const auto& t : weights) {
            Vec s = Vec::Zero(cones.front().dimension());
            bool skip = false;
            for (int i = 0; i < m; ++i) {
                if (t[i] > 0.0 && dirs[i][pick[i]].norm() < 1e-12) skip = true;
                s += t[i] * dirs[i][pick[i]];
            }
            if (!skip && s.norm() < best) {
                best = s.norm();
                bestDirs.clear();
                for (int i = 0; i < m; ++i) bestDirs.push_back(dirs[i][pick[i]]);
                bestWeights = t;
            }
        }
        int i = 0;
        for (; i < m; ++i) {
            if (++pick[i] < dirs[i].size()) break;
            pick[i] = 0;
        }
        if (i == m) break;
    }
    if (bestDirs.empty()) return best;

    const int dim = static_cast<int>(cones.front().dimension());
    auto evaluate = [&](const std::vector<Vec>& d, const std::vector<double>& t) {
        Vec s = Vec::Zero(dim);
        for (int i = 0; i < m; ++i) s += t[i] * d[i];
        return s.norm();
    };
    // Euclidean projection onto the probability simplex.
    auto simplexProject = [&](std::vector<double> y) {
        std::vector<double> u = y;
        std::sort(u.begin(), u.end(), std::greater<>());
        double cssv = 0.0, theta = 0.0;
        for (int j = 0; j < m; ++j) {
            cssv += u[j];
            const double cand = (cssv - 1.0) / (j + 1);
            if (u[j] - cand > 0.0) theta = cand;
        }
        for (double& yi : y) yi = std::max(yi - theta, 0.0);
        return y;
    };

    // Alternating refinement: exact best unit direction per cone given the
    // rest, then projected-gradient weight steps under the normalization.
    for (int it = 0; it < 200; ++it) {
        for (int i = 0; i < m; ++i) {
            if (bestWeights[i] <= 1e-14) continue;
            Vec rest = Vec::Zero(dim);
            for (int j = 0; j < m; ++j)
                if (j != i) rest += bestWeights[j] * bestDirs[j];
            const Vec p = cones[i].project(-rest);
            if (p.norm() > 1e-12) {
                bestDirs[i] = p.normalized();
            } else {
                for (const auto& g : cones[i].rayGenerators())
                    if (g.dot(rest) < bestDirs[i].dot(rest)) bestDirs[i] = g;
            }
        }
        for (int inner = 0; inner < 5; ++inner) {
            Vec s = Vec::Zero(dim);
            for (int i = 0; i < m; ++i) s += bestWeights[i] * bestDirs[i];
            std::vector<double> t = bestWeights;
            for (int i = 0; i < m; ++i) t[i] -= (0.5 / m) * bestDirs[i].dot(s);
            if (sumSquares) {
                double tn = 0.0;
                for (double& ti : t) {
                    ti = std::max(ti, 0.0);
                    tn += ti * ti;
                }
                if (tn < 1e-14) break;
                for (double& ti : t) ti /= std::sqrt(tn);
            } else {
                t = simplexProject(std::move(t));
            }
            if (evaluate(bestDirs, t) <= evaluate(bestDirs, bestWeights)) bestWeights = t;
        }
        best = std::min(best, evaluate(bestDirs, bestWeights));
    }

    // Local polish: random feasible perturbations with a shrinking radius,
    // so the grid result converges past its own resolution.
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double sigma = 0.3;
    for (int round = 0; round < 400; ++round) {
        std::vector<Vec> d = bestDirs;
        std::vector<double> t = bestWeights;
        for (int i = 0; i < m; ++i) {
            if (d[i].norm() < 1e-12) continue;
            Vec g(d[i].size());
            for (int j = 0; j < g.size(); ++j) g[j] = gauss(rng);
            const Vec proj = cones[i].project(d[i] + sigma * g);
            if (proj.norm() > 1e-10) d[i] = proj.normalized();
            t[i] = std::max(0.0, t[i] + sigma * 0.3 * (unif(rng) - 0.5));
        }
        double tn = 0.0;
        for (double ti : t) tn += sumSquares ? ti * ti : ti;
        if (tn < 1e-12) continue;
        for (double& ti : t) ti /= sumSquares ? std::sqrt(tn) : tn;
        Vec s = Vec::Zero(cones.front().dimension());
        for (int i = 0; i < m; ++i) s += t[i] * d[i];
        if (s.norm() < best) {
            best = s.norm();
            bestDirs = d;
            bestWeights = t;
        }
        sigma = std::max(0.01, sigma * 0.985);
    }
    return best;
}

// Dense-grid brute-force minimum distance in 2D for oracle comparisons.
template <typename F>
inline double gridMinDistance2D(F&& inSet, const Vec& x, double extent, double res) {
    double best = std::numeric_limits<double>::infinity();
    for (double a = -extent; a <= extent; a += res)
        for (double b = -extent; b <= extent; b += res) {
            const Vec p = v2(a, b);
            if (inSet(p)) best = std::min(best, (p - x).norm());
        }
    return best;
}

}  // namespace testutil
