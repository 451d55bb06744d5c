#include "eq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace eq {

namespace {

double distance(const NormSpec& norm, const Vector& a, const Vector& b) {
    Vector diff(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a[k] - b[k];
    return eval(norm, diff);
}

struct GridSpec {
    Vector origin;       // lowest corner
    double step = 0.0;   // per-axis spacing
    int res = 0;
    int dim = 0;

    Vector cell(std::size_t flat) const {
        // Most-significant axis first, so flat order is lexicographic in
        // the grid index (the documented tie-break).
        Vector x(dim);
        for (int k = dim - 1; k >= 0; --k) {
            x[k] = origin[k] + step * static_cast<double>(flat % res);
            flat /= res;
        }
        return x;
    }
};

template <typename F>
std::pair<double, std::size_t> scan_grid(const GridSpec& grid, std::size_t cells, const F& objective,
                                         bool parallel) {
    double best_val = 0.0;
    std::size_t best_idx = 0;
    bool have = false;
#pragma omp parallel if (parallel)
    {
        double loc_val = 0.0;
        std::size_t loc_idx = 0;
        bool loc_have = false;
#pragma omp for schedule(static)
        for (long long c = 0; c < static_cast<long long>(cells); ++c) {
            double v = objective(grid.cell(static_cast<std::size_t>(c)));
            if (!loc_have || v < loc_val ||
                (v == loc_val && static_cast<std::size_t>(c) < loc_idx)) {
                loc_val = v;
                loc_idx = static_cast<std::size_t>(c);
                loc_have = true;
            }
        }
#pragma omp critical
        {
            if (loc_have &&
                (!have || loc_val < best_val || (loc_val == best_val && loc_idx < best_idx))) {
                best_val = loc_val;
                best_idx = loc_idx;
                have = true;
            }
        }
    }
    return {best_val, best_idx};
}

// Coordinate descent with step halving; when no single-axis move improves,
// axis pairs are tried before shrinking (the max-type objective can block
// every axis direction at a non-minimum).
template <typename F>
std::pair<Vector, double> refine(Vector x, double cur, double step, double min_step,
                                 const F& objective) {
    const int dim = static_cast<int>(x.size());
    while (step > min_step) {
        bool improved = false;
        for (int k = 0; k < dim; ++k) {
            for (double sgn : {1.0, -1.0}) {
                Vector cand = x;
                cand[k] += sgn * step;
                double v = objective(cand);
                if (v < cur) {
                    cur = v;
                    x = cand;
                    improved = true;
                }
            }
        }
        if (!improved) {
            for (int a = 0; a < dim && !improved; ++a) {
                for (int b = a + 1; b < dim && !improved; ++b) {
                    for (double sa : {1.0, -1.0}) {
                        for (double sb : {1.0, -1.0}) {
                            Vector cand = x;
                            cand[a] += sa * step;
                            cand[b] += sb * step;
                            double v = objective(cand);
                            if (v < cur) {
                                cur = v;
                                x = cand;
                                improved = true;
                            }
                        }
                    }
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return {x, cur};
}

std::optional<Vector> extension_impl(const std::vector<Vector>& points, const NormSpec& norm,
                                     double box_radius, int grid_resolution, double refine_tol,
                                     bool parallel) {
    EquilateralReport rep = check_equilateral(points, norm, 1e-9);
    if (!rep.pass) throw DomainError("extension_search requires an equilateral input set (tol 1e-9)");
    const int dim = static_cast<int>(points.front().size());
    if (dim > 4) throw DomainError("extension_search supports dimension <= 4 only");
    if (grid_resolution < 2) throw DomainError("grid_resolution must be >= 2");
    const double d = rep.common_distance;

    GridSpec grid;
    grid.dim = dim;
    grid.res = grid_resolution;
    grid.step = 2.0 * box_radius / (grid_resolution - 1);
    grid.origin.assign(dim, 0.0);
    for (const auto& p : points)
        for (int k = 0; k < dim; ++k) grid.origin[k] += p[k];
    for (int k = 0; k < dim; ++k) grid.origin[k] = grid.origin[k] / points.size() - box_radius;

    auto objective = [&](const Vector& x) {
        double worst = 0.0;
        for (const auto& p : points) worst = std::max(worst, std::abs(distance(norm, x, p) - d));
        return worst;
    };

    std::size_t cells = 1;
    for (int k = 0; k < dim; ++k) cells *= static_cast<std::size_t>(grid_resolution);
    auto [best_val, best_idx] = scan_grid(grid, cells, objective, parallel);

    auto [x, val] = refine(grid.cell(best_idx), best_val, grid.step, refine_tol * 1e-3, objective);
    if (val <= refine_tol) return x;
    return std::nullopt;
}

}  // namespace

EquilateralReport check_equilateral(const std::vector<Vector>& points, const NormSpec& norm,
                                    double tol) {
    if (points.size() < 2) throw DomainError("need at least 2 points");
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim) throw DimensionMismatch("points have mixed dimensions");
        require_finite(p);
    }
    const int m = static_cast<int>(points.size());
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) dists.push_back(distance(norm, points[i], points[j]));
    double mean = 0.0;
    for (double v : dists) mean += v;
    mean /= dists.size();
    double dev = 0.0;
    for (double v : dists) dev = std::max(dev, std::abs(v - mean));
    EquilateralReport rep;
    rep.m = m;
    rep.common_distance = mean;
    rep.max_deviation = dev;
    rep.tolerance = tol;
    rep.pass = dev <= tol;
    return rep;
}

std::optional<Vector> extension_search(const std::vector<Vector>& points, const NormSpec& norm,
                                       double box_radius, int grid_resolution, double refine_tol) {
    return extension_impl(points, norm, box_radius, grid_resolution, refine_tol, true);
}

std::optional<Vector> extension_search_serial(const std::vector<Vector>& points,
                                              const NormSpec& norm, double box_radius,
                                              int grid_resolution, double refine_tol) {
    return extension_impl(points, norm, box_radius, grid_resolution, refine_tol, false);
}

CertifySummary certify_run(const NormSpec& norm, const PointConfig& config,
                           const SandwichCertificate& cert, double residual,
                           const std::optional<LpParams>& params) {
    CertifySummary summary;

    const int n = norm.dim();
    std::mt19937_64 rng(0x6e0c8a11u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    summary.sandwich_ok = true;
    for (int k = 0; k < 1000; ++k) {
        Vector x(n);
        for (int i = 0; i < n; ++i) x[i] = gauss(rng);
        double vx = eval(norm, x);
        double vref = reference_eval(cert.reference, x);
        if (vx > vref + 1e-12 * vref || vref > cert.R * vx + 1e-12 * vref) {
            summary.sandwich_ok = false;
            break;
        }
    }

    summary.condition_ok = true;
    if (params) {
        const auto& pr = *params;
        double lhs1 = std::pow(pr.gamma + pr.beta, pr.p) + std::pow(pr.gamma, pr.p);
        double lhs2 = (pr.n - 2) * std::pow(pr.beta, pr.p) + 2.0 * std::pow(pr.gamma, pr.p);
        summary.condition_ok =
            lhs1 >= std::pow(pr.R, pr.p) - 1e-10 && lhs2 <= 1.0 + 1e-10;
    }

    EquilateralReport rep = check_equilateral(config.points, norm, 10.0 * residual + 1e-15);
    summary.equilateral_ok = rep.pass;
    summary.max_deviation = rep.max_deviation;

    summary.pass = summary.sandwich_ok && summary.condition_ok && summary.equilateral_ok;
    return summary;
}

}  // namespace eq
