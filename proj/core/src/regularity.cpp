#include "setreg/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace setreg {

namespace {

constexpr double kZeroThreshold = 1e-9;

// argmin_{u in K, ||u||=1} <u,s>. If the functional takes negative values
// on K the minimizer is -P_K(-s) normalized; otherwise it sits on an
// extreme ray.
Vec minimizeLinearOnSlice(const ConeRep& K, const Vec& s, const Vec& fallback) {
    const Vec p = K.project(-s);
    if (p.norm() > 1e-13) return p / p.norm();
    const auto gens = K.rayGenerators();
    if (gens.empty()) return fallback;
    const Vec* best = &gens.front();
    double bestVal = best->dot(s);
    for (const auto& g : gens) {
        const double v = g.dot(s);
        if (v < bestVal) { bestVal = v; best = &g; }
    }
    return *best;
}

Vec maximizeLinearOnSlice(const ConeRep& K, const Vec& s, const Vec& fallback) {
    const Vec p = K.project(s);
    if (p.norm() > 1e-13) return p / p.norm();
    const auto gens = K.rayGenerators();
    if (gens.empty()) return fallback;
    const Vec* best = &gens.front();
    double bestVal = best->dot(s);
    for (const auto& g : gens) {
        const double v = g.dot(s);
        if (v > bestVal) { bestVal = v; best = &g; }
    }
    return *best;
}

double refinePair(const ConeRep& K1, const ConeRep& K2, Vec u, Vec v, bool maximize) {
    double obj = u.dot(v);
    for (int it = 0; it < 100; ++it) {
        if (maximize) {
            u = maximizeLinearOnSlice(K1, v, u);
            v = maximizeLinearOnSlice(K2, u, v);
        } else {
            u = minimizeLinearOnSlice(K1, v, u);
            v = minimizeLinearOnSlice(K2, u, v);
        }
        const double next = u.dot(v);
        const bool improved = maximize ? next > obj + 1e-14 : next < obj - 1e-14;
        obj = next;
        if (!improved) break;
    }
    return obj;
}

Vec randomConeDirection(const ConeRep& K, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Vec w(K.dimension());
        for (int i = 0; i < w.size(); ++i) w[i] = gauss(rng);
        const Vec p = K.project(w);
        if (p.norm() > 1e-10) return p / p.norm();
    }
    return K.rayGenerators().front();
}

}  // namespace

ConePairExtremes cone_pair_extremal_angle(const ConeRep& K1, const ConeRep& K2, unsigned seed) {
    if (K1.isTrivial() || K2.isTrivial())
        throw TrivialCone("cone_pair_extremal_angle: trivial cone");
    if (K1.dimension() != K2.dimension())
        throw DimensionError("cone_pair_extremal_angle: dimension mismatch");

    const auto g1 = K1.rayGenerators();
    const auto g2 = K2.rayGenerators();
    ConePairExtremes out{1.0, -1.0};
    bool any = false;
    auto consider = [&](const Vec& u, const Vec& v) {
        out.min_inner = std::min(out.min_inner, refinePair(K1, K2, u, v, false));
        out.max_inner = std::max(out.max_inner, refinePair(K1, K2, u, v, true));
        any = true;
    };
    for (const auto& u : g1)
        for (const auto& v : g2) consider(u, v);
    std::mt19937_64 rng(seed);
    for (int s = 0; s < 8; ++s) consider(randomConeDirection(K1, rng), randomConeDirection(K2, rng));
    if (!any) throw TrivialCone("cone_pair_extremal_angle: no generators");
    out.min_inner = std::clamp(out.min_inner, -1.0, 1.0);
    out.max_inner = std::clamp(out.max_inner, -1.0, 1.0);
    return out;
}

namespace {

// Exact weight step for SumOne: min t'Qt over the simplex, by active-set
// enumeration (m is small).
Vec simplexQuadMin(const Mat& Q) {
    const int m = static_cast<int>(Q.rows());
    Vec best = Vec::Unit(m, 0);
    double bestObj = Q(0, 0);
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const int k = static_cast<int>(idx.size());
        Mat kkt = Mat::Zero(k + 1, k + 1);
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) kkt(a, b) = 2.0 * Q(idx[a], idx[b]);
            kkt(a, k) = kkt(k, a) = 1.0;
        }
        Vec rhs = Vec::Zero(k + 1);
        rhs[k] = 1.0;
        const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
        Vec t = Vec::Zero(m);
        bool feasible = true;
        double sum = 0.0;
        for (int a = 0; a < k; ++a) {
            if (sol[a] < -1e-10) { feasible = false; break; }
            t[idx[a]] = std::max(0.0, sol[a]);
            sum += t[idx[a]];
        }
        if (!feasible || sum <= 1e-12) continue;
        t /= sum;
        const double obj = t.dot(Q * t);
        if (obj < bestObj) { bestObj = obj; best = t; }
    }
    return best;
}

// Exact weight step for SumSquaresOne: min t'Qt over the nonnegative part
// of the unit sphere, via eigenvectors of principal submatrices.
Vec sphereQuadMin(const Mat& Q) {
    const int m = static_cast<int>(Q.rows());
    Vec best = Vec::Unit(m, 0);
    double bestObj = Q(0, 0);
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const int k = static_cast<int>(idx.size());
        Mat Qs(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) Qs(a, b) = Q(idx[a], idx[b]);
        Eigen::SelfAdjointEigenSolver<Mat> es(Qs);
        for (int e = 0; e < k; ++e) {
            Vec v = es.eigenvectors().col(e);
            int maxIdx = 0;
            v.cwiseAbs().maxCoeff(&maxIdx);
            if (v[maxIdx] < 0) v = -v;
            if (v.minCoeff() < -1e-9) continue;
            v = v.cwiseMax(0.0);
            const double n = v.norm();
            if (n < 1e-12) continue;
            v /= n;
            Vec t = Vec::Zero(m);
            for (int a = 0; a < k; ++a) t[idx[a]] = v[a];
            const double obj = t.dot(Q * t);
            if (obj < bestObj) { bestObj = obj; best = t; }
        }
    }
    return best;
}

}  // namespace

double min_combined_norm(const std::vector<ConeRep>& cones, WeightNormalization norm,
                         unsigned seed) {
    std::vector<const ConeRep*> active;
    for (const auto& k : cones)
        if (!k.isTrivial()) active.push_back(&k);
    if (active.empty()) throw TrivialCone("min_combined_norm: all cones trivial");
    const int m = static_cast<int>(active.size());
    const int d = active.front()->dimension();
    for (const auto* k : active)
        if (k->dimension() != d) throw DimensionError("min_combined_norm: dimension mismatch");

    std::vector<std::vector<Vec>> gens(m);
    for (int i = 0; i < m; ++i) gens[i] = active[i]->rayGenerators();

    auto evaluate = [&](std::vector<Vec> u) -> double {
        double obj = std::numeric_limits<double>::infinity();
        Vec t;
        for (int it = 0; it < 80; ++it) {
            Mat Q(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) Q(a, b) = u[a].dot(u[b]);
            t = (norm == WeightNormalization::SumOne) ? simplexQuadMin(Q) : sphereQuadMin(Q);
            Vec total = Vec::Zero(d);
            for (int i = 0; i < m; ++i) total += t[i] * u[i];
            for (int i = 0; i < m; ++i) {
                const Vec rest = total - t[i] * u[i];
                u[i] = minimizeLinearOnSlice(*active[i], rest, u[i]);
                total = rest + t[i] * u[i];
            }
            const double next = total.norm();
            if (next > obj - 1e-14) { obj = std::min(obj, next); break; }
            obj = next;
        }
        return obj;
    };

    double best = std::numeric_limits<double>::infinity();
    // Generator-combination starts (exhaustive while cheap).
    size_t combos = 1;
    for (int i = 0; i < m; ++i) combos *= gens[i].size();
    std::mt19937_64 rng(seed);
    if (combos <= 256) {
        std::vector<size_t> pick(m, 0);
        for (size_t c = 0; c < combos; ++c) {
            size_t rem = c;
            std::vector<Vec> u(m);
            for (int i = 0; i < m; ++i) {
                u[i] = gens[i][rem % gens[i].size()];
                rem /= gens[i].size();
            }
            best = std::min(best, evaluate(std::move(u)));
        }
    } else {
        std::uniform_int_distribution<size_t> any(0, std::numeric_limits<size_t>::max());
        for (int s = 0; s < 128; ++s) {
            std::vector<Vec> u(m);
            for (int i = 0; i < m; ++i) u[i] = gens[i][any(rng) % gens[i].size()];
            best = std::min(best, evaluate(std::move(u)));
        }
    }
    for (int s = 0; s < 16; ++s) {
        std::vector<Vec> u(m);
        for (int i = 0; i < m; ++i) u[i] = randomConeDirection(*active[i], rng);
        best = std::min(best, evaluate(std::move(u)));
    }
    return std::clamp(best, 0.0, 1.0);
}

namespace detail {

void requireCommonPoint(const std::vector<SetDescriptor>& sets, const Vec& xbar) {
    if (sets.size() < 2) throw ValidationError("need at least two sets");
    for (size_t i = 0; i < sets.size(); ++i)
        if (!membership(sets[i], xbar, 1e-9))
            throw PointNotInIntersection("reference point not in set " + std::to_string(i));
}

std::vector<ConeRep> collectionCones(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                     double delta, const DeltaSchedule& sched) {
    std::vector<ConeRep> cones;
    cones.reserve(sets.size());
    for (const auto& s : sets)
        cones.push_back(strict_delta_cone(s, xbar, delta, sched.sample_budget, sched.seed));
    return cones;
}

}  // namespace detail

namespace {

struct TripleENC {
    double eta, nu, c;
};

TripleENC constantsAtDelta(const std::vector<ConeRep>& cones, unsigned seed) {
    const size_t m = cones.size();
    if (m == 2) {
        if (cones[0].isTrivial() || cones[1].isTrivial()) return {1.0, 0.0, -1.0};
        const double q = cone_pair_extremal_angle(cones[0], cones[1], seed).min_inner;
        return {std::sqrt((1.0 + q) / 2.0), std::sqrt((1.0 - q) / 2.0), 0.0 - q};
    }
    bool anyNontrivial = false;
    for (const auto& k : cones) anyNontrivial = anyNontrivial || !k.isTrivial();
    if (!anyNontrivial) return {1.0, 0.0, -1.0};
    const double eta = min_combined_norm(cones, WeightNormalization::SumOne, seed);
    return {eta, std::sqrt(std::max(0.0, 1.0 - eta * eta)), 1.0 - 2.0 * eta * eta};
}

}  // namespace

double eta_hat_two_sets(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                        const DeltaSchedule& sched) {
    std::vector<SetDescriptor> v{sets[0], sets[1]};
    return compute_regularity(v, xbar, sched).eta_hat;
}

double nu_hat_two_sets(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                       const DeltaSchedule& sched) {
    std::vector<SetDescriptor> v{sets[0], sets[1]};
    return compute_regularity(v, xbar, sched).nu_hat;
}

double c_hat_two_sets(const std::array<SetDescriptor, 2>& sets, const Vec& xbar,
                      const DeltaSchedule& sched) {
    std::vector<SetDescriptor> v{sets[0], sets[1]};
    return compute_regularity(v, xbar, sched).c_hat;
}

double eta_hat_m_sets(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                      const DeltaSchedule& sched) {
    detail::requireCommonPoint(sets, xbar);
    // Reported at the smallest delta of the schedule.
    const auto cones = detail::collectionCones(sets, xbar, sched.deltas.back(), sched);
    bool anyNontrivial = false;
    for (const auto& k : cones) anyNontrivial = anyNontrivial || !k.isTrivial();
    if (!anyNontrivial) return 1.0;  // empty constraint set
    return min_combined_norm(cones, WeightNormalization::SumOne, sched.seed);
}

Classification classify(double eta_hat, double zero_threshold) {
    return eta_hat > zero_threshold ? Classification::UniformlyRegular
                                    : Classification::ApproximatelyStationary;
}

RegularityReport compute_regularity(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                                    const DeltaSchedule& sched) {
    detail::requireCommonPoint(sets, xbar);
    if (sched.deltas.empty()) throw ValidationError("compute_regularity: empty delta schedule");

    RegularityReport rep;
    rep.delta_schedule = sched.deltas;
    std::vector<TripleENC> values;
    for (double delta : sched.deltas)
        values.push_back(constantsAtDelta(detail::collectionCones(sets, xbar, delta, sched), sched.seed));

    double spread = 0.0;
    for (const auto& v : values) spread = std::max(spread, std::abs(v.eta - values.back().eta));
    rep.stabilized = spread <= 1e-6;

    const auto& last = values.back();  // smallest delta
    rep.eta_hat = last.eta;
    rep.nu_hat = last.nu;
    rep.c_hat = last.c;
    rep.c_hat_plus = std::max(last.c, 0.0) + 0.0;  // +0.0 kills negative zero
    rep.classification = classify(last.eta, kZeroThreshold);
    rep.borderline = last.eta > 0.0 && last.eta <= kZeroThreshold;
    return rep;
}

}  // namespace setreg
