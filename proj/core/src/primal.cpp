#include "setreg/primal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace setreg {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct SmallRow {
    double a[3] = {0, 0, 0};
    double b = 0.0;
};

double dotRow(const SmallRow& r, const double* p, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += r.a[i] * p[i];
    return s;
}

// Exact distance from p to {x : <a_i,x> <= b_i} in d <= 3, by enumerating
// affinely independent active subsets. Empty polyhedron -> nullopt.
std::optional<double> smallPolyDistance(const std::vector<SmallRow>& rows, const double* p, int d) {
    const int n = static_cast<int>(rows.size());
    double best = kInf;

    auto tryPoint = [&](const double* x) {
        for (const auto& r : rows)
            if (dotRow(r, x, d) > r.b + kFeasTol) return;
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
        best = std::min(best, std::sqrt(s));
    };

    tryPoint(p);

    double x[3];
    for (int i = 0; i < n; ++i) {
        const double li = dotRow(rows[i], p, d) - rows[i].b;
        for (int k = 0; k < d; ++k) x[k] = p[k] - li * rows[i].a[k];
        tryPoint(x);
    }
    if (d >= 2) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double c = 0.0;
                for (int k = 0; k < d; ++k) c += rows[i].a[k] * rows[j].a[k];
                const double det = 1.0 - c * c;
                if (std::abs(det) < 1e-12) continue;
                const double vi = dotRow(rows[i], p, d) - rows[i].b;
                const double vj = dotRow(rows[j], p, d) - rows[j].b;
                const double li = (vi - c * vj) / det;
                const double lj = (vj - c * vi) / det;
                for (int k = 0; k < d; ++k) x[k] = p[k] - li * rows[i].a[k] - lj * rows[j].a[k];
                tryPoint(x);
            }
        }
    }
    if (d >= 3) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                for (int l = j + 1; l < n; ++l) {
                    // Gram system via Cramer's rule.
                    double g01 = 0, g02 = 0, g12 = 0;
                    for (int k = 0; k < 3; ++k) {
                        g01 += rows[i].a[k] * rows[j].a[k];
                        g02 += rows[i].a[k] * rows[l].a[k];
                        g12 += rows[j].a[k] * rows[l].a[k];
                    }
                    const double det = 1.0 + 2.0 * g01 * g02 * g12 - g01 * g01 - g02 * g02 - g12 * g12;
                    if (std::abs(det) < 1e-12) continue;
                    const double v0 = dotRow(rows[i], p, 3) - rows[i].b;
                    const double v1 = dotRow(rows[j], p, 3) - rows[j].b;
                    const double v2 = dotRow(rows[l], p, 3) - rows[l].b;
                    const double d0 = v0 * (1.0 - g12 * g12) - v1 * (g01 - g02 * g12) + v2 * (g01 * g12 - g02);
                    const double d1 = -v0 * (g01 - g12 * g02) + v1 * (1.0 - g02 * g02) - v2 * (g12 - g01 * g02);
                    const double d2 = v0 * (g01 * g12 - g02) - v1 * (g12 - g01 * g02) + v2 * (1.0 - g01 * g01);
                    const double l0 = d0 / det, l1 = d1 / det, l2 = d2 / det;
                    for (int k = 0; k < 3; ++k)
                        x[k] = p[k] - l0 * rows[i].a[k] - l1 * rows[j].a[k] - l2 * rows[l].a[k];
                    tryPoint(x);
                }
            }
        }
    }
    if (best == kInf) return std::nullopt;
    return best;
}

std::vector<SmallRow> rowsOf(const SetDescriptor& set) {
    const int d = set.dimension();
    auto toSmall = [&](const Vec& n, double b) {
        SmallRow r;
        for (int i = 0; i < d; ++i) r.a[i] = n[i];
        r.b = b;
        return r;
    };
    if (const auto* h = std::get_if<HalfSpace>(&set.data())) return {toSmall(h->normal, h->offset)};
    if (const auto* h = std::get_if<Hyperplane>(&set.data()))
        return {toSmall(h->normal, h->offset), toSmall(-h->normal, -h->offset)};
    if (const auto* p = std::get_if<Polyhedron>(&set.data())) {
        std::vector<SmallRow> out;
        for (const auto& r : p->rows) out.push_back(toSmall(r.normal, r.offset));
        return out;
    }
    throw ValidationError("primal oracles support polyhedral sets only");
}

void checkAmbient(const std::vector<SetDescriptor>& sets, const Vec& xbar) {
    if (xbar.size() > 3)
        throw AmbientDimensionTooLarge("primal oracles limited to dimension <= 3");
    for (const auto& s : sets)
        if (s.dimension() != xbar.size()) throw DimensionError("primal oracle: dimension mismatch");
}

// Rows of Omega - t: <a,x> <= b - <a,t>.
std::vector<SmallRow> shiftedRows(const std::vector<SmallRow>& rows, const double* t, int d) {
    std::vector<SmallRow> out = rows;
    for (auto& r : out) r.b -= dotRow(r, t, d);
    return out;
}

// Does the intersection of the given (already shifted) row systems meet
// the ball B_rho(center)?
bool intersectionMeetsBall(const std::vector<std::vector<SmallRow>>& systems, const double* center,
                           double rho, int d) {
    std::vector<SmallRow> all;
    for (const auto& s : systems) all.insert(all.end(), s.begin(), s.end());
    const auto dist = smallPolyDistance(all, center, d);
    return dist && *dist <= rho + kFeasTol;
}

std::vector<std::vector<double>> latticeBall(int d, double res, double radius) {
    std::vector<std::vector<double>> pts;
    const int K = static_cast<int>(std::floor(radius / res + 1e-9));
    std::vector<int> idx(d, -K);
    while (true) {
        double n2 = 0.0;
        for (int i = 0; i < d; ++i) n2 += (idx[i] * res) * (idx[i] * res);
        if (std::sqrt(n2) <= radius + 1e-12) {
            std::vector<double> p(d);
            for (int i = 0; i < d; ++i) p[i] = idx[i] * res;
            pts.push_back(std::move(p));
        }
        int i = 0;
        for (; i < d; ++i) {
            if (++idx[i] <= K) break;
            idx[i] = -K;
        }
        if (i == d) break;
    }
    return pts;
}

double normOf(const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) s += v * v;
    return std::sqrt(s);
}

}  // namespace

double theta_rho_bruteforce(const std::vector<SetDescriptor>& sets, const Vec& xbar, double rho,
                            double grid_resolution) {
    checkAmbient(sets, xbar);
    if (!(rho > 0.0) || !(grid_resolution > 0.0))
        throw ValidationError("theta_rho_bruteforce: rho and resolution must be positive");
    const int d = static_cast<int>(xbar.size());
    const int m = static_cast<int>(sets.size());
    std::vector<std::vector<SmallRow>> base;
    for (const auto& s : sets) base.push_back(rowsOf(s));
    double center[3] = {0, 0, 0};
    for (int i = 0; i < d; ++i) center[i] = xbar[i];

    const double rCap = 2.0 * rho;
    auto pts = latticeBall(d, grid_resolution, rCap);
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return normOf(a) < normOf(b); });

    // Smallest max-norm over failing grid tuples; theta is the largest grid
    // radius strictly below it.
    double failNorm = kInf;
    std::vector<std::vector<SmallRow>> systems(m);
    std::vector<size_t> choice(m, 0);
    auto recurse = [&](auto&& self, int i, double maxNorm) -> void {
        if (maxNorm >= failNorm) return;
        if (i == m) {
            if (!intersectionMeetsBall(systems, center, rho, d)) failNorm = maxNorm;
            return;
        }
        for (const auto& a : pts) {
            const double n = normOf(a);
            const double mn = std::max(maxNorm, n);
            if (mn >= failNorm) break;  // pts sorted by norm
            systems[i] = shiftedRows(base[i], a.data(), d);
            self(self, i + 1, mn);
        }
    };
    recurse(recurse, 0, 0.0);

    if (failNorm == kInf) return rCap;
    const double steps = std::floor((failNorm - 1e-12) / grid_resolution);
    return std::max(0.0, steps * grid_resolution);
}

namespace {

// Direction grid on the sphere: full circle in 2D, coarse spherical grid
// in 3D, +/- axes in 1D.
std::vector<std::vector<double>> directionGrid(int d, int count) {
    std::vector<std::vector<double>> dirs;
    if (d == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
    } else if (d == 2) {
        for (int k = 0; k < count; ++k) {
            const double phi = 2.0 * M_PI * k / count;
            dirs.push_back({std::cos(phi), std::sin(phi)});
        }
    } else {
        // Fibonacci sphere
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            const double y = 1.0 - 2.0 * (k + 0.5) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - y * y));
            dirs.push_back({r * std::cos(golden * k), y, r * std::sin(golden * k)});
        }
    }
    return dirs;
}

// sup r such that all translations with norms in {0, r/2, r} along the
// direction grid keep the intersection touching B_rho(0); bisection on r.
double thetaDirectional(const std::vector<std::vector<SmallRow>>& base, double rho, int d) {
    const int m = static_cast<int>(base.size());
    const int nAng = (m <= 2) ? (d == 2 ? 256 : 200) : 48;
    const auto dirs = directionGrid(d, nAng);
    double origin[3] = {0, 0, 0};

    auto passes = [&](double r) {
        std::vector<std::vector<double>> cand;
        cand.push_back(std::vector<double>(d, 0.0));
        for (const auto& u : dirs) {
            for (double scale : {0.5 * r, r}) {
                std::vector<double> a(d);
                for (int i = 0; i < d; ++i) a[i] = scale * u[i];
                cand.push_back(std::move(a));
            }
        }
        std::vector<std::vector<SmallRow>> systems(m);
        auto recurse = [&](auto&& self, int i) -> bool {
            if (i == m) return intersectionMeetsBall(systems, origin, rho, d);
            for (const auto& a : cand) {
                systems[i] = shiftedRows(base[i], a.data(), d);
                if (!self(self, i + 1)) return false;
            }
            return true;
        };
        return recurse(recurse, 0);
    };

    double lo = 0.0, hi = 2.0 * rho;
    if (passes(hi)) return hi;
    for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        (passes(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

double theta_hat_estimate(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                          double grid_resolution) {
    checkAmbient(sets, xbar);
    const int d = static_cast<int>(xbar.size());
    const int m = static_cast<int>(sets.size());

    // Small grid of in-set perturbations of the reference point.
    std::vector<std::vector<Vec>> omegas(m);
    for (int i = 0; i < m; ++i) {
        omegas[i].push_back(xbar);
        for (int j = 0; j < d && omegas[i].size() < 3; ++j) {
            for (double s : {1.0, -1.0}) {
                const Vec cand = projectOne(sets[i], xbar + s * 0.03 * Vec::Unit(d, j));
                if ((cand - xbar).norm() < 1e-12 || (cand - xbar).norm() > 0.05) continue;
                bool dup = false;
                for (const auto& w : omegas[i]) dup = dup || (w - cand).norm() < 1e-12;
                if (!dup) omegas[i].push_back(cand);
                if (omegas[i].size() >= 3) break;
            }
        }
    }

    std::vector<std::vector<SmallRow>> base;
    for (const auto& s : sets) base.push_back(rowsOf(s));

    double best = kInf;
    std::vector<size_t> pick(m, 0);
    while (true) {
        std::vector<std::vector<SmallRow>> shifted(m);
        for (int i = 0; i < m; ++i) {
            double t[3] = {0, 0, 0};
            for (int k = 0; k < d; ++k) t[k] = omegas[i][pick[i]][k];
            shifted[i] = shiftedRows(base[i], t, d);
        }
        for (double rho : {1e-1, 1e-2})
            best = std::min(best, thetaDirectional(shifted, rho, d) / rho);
        int i = 0;
        for (; i < m; ++i) {
            if (++pick[i] < omegas[i].size()) break;
            pick[i] = 0;
        }
        if (i == m) break;
    }
    (void)grid_resolution;
    return best;
}

double vartheta_hat_estimate(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                             double grid_resolution) {
    checkAmbient(sets, xbar);
    const int d = static_cast<int>(xbar.size());
    const int m = static_cast<int>(sets.size());
    std::vector<std::vector<SmallRow>> base;
    for (const auto& s : sets) base.push_back(rowsOf(s));

    const auto xGrid = latticeBall(d, grid_resolution, 0.1);
    auto tGrid = latticeBall(d, 2.0 * grid_resolution, 0.04);

    double best = kInf;
    std::vector<size_t> pick(m, 0);
    while (true) {
        // Shift each set by its translation, then scan x.
        std::vector<std::vector<SmallRow>> shifted(m);
        for (int i = 0; i < m; ++i) {
            double t[3] = {0, 0, 0};
            for (int k = 0; k < d; ++k) t[k] = tGrid[pick[i]][k];
            shifted[i] = shiftedRows(base[i], t, d);  // Omega_i - t_i
        }
        std::vector<SmallRow> combined;
        for (const auto& s : shifted) combined.insert(combined.end(), s.begin(), s.end());

        for (const auto& dx : xGrid) {
            double x[3] = {0, 0, 0};
            for (int k = 0; k < d; ++k) x[k] = xbar[k] + dx[k];
            const auto denom = smallPolyDistance(combined, x, d);
            if (!denom) {  // empty translated intersection
                best = 0.0;
                continue;
            }
            if (*denom <= 1e-12) continue;  // x inside the intersection
            double num = 0.0;
            for (int i = 0; i < m; ++i) {
                double xt[3] = {0, 0, 0};
                for (int k = 0; k < d; ++k) xt[k] = x[k] + tGrid[pick[i]][k];
                const auto di = smallPolyDistance(base[i], xt, d);
                num = std::max(num, di ? *di : kInf);
            }
            best = std::min(best, num / *denom);
        }
        int i = 0;
        for (; i < m; ++i) {
            if (++pick[i] < tGrid.size()) break;
            pick[i] = 0;
        }
        if (i == m) break;
    }
    return best == kInf ? 0.0 : best;
}

PrimalReport primal_report(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                           double grid_resolution) {
    PrimalReport rep;
    rep.grid_resolution = grid_resolution;
    for (double rho : {1e-1, 1e-2})
        rep.theta_rho[rho] = theta_rho_bruteforce(sets, xbar, rho, grid_resolution * rho * 10.0);
    rep.theta_hat = theta_hat_estimate(sets, xbar, grid_resolution);
    rep.vartheta_hat = vartheta_hat_estimate(sets, xbar, grid_resolution);
    return rep;
}

}  // namespace setreg
