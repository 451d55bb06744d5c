#include "eq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace eq {

namespace {

double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double r = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return r;
}

// Evaluates the map and enforces the self-map hypothesis: outputs outside
// [0, beta] by more than 1e-9 mean the well-definedness bounds failed.
std::vector<double> checked_map(const FixedPointMap& map, const EpsilonVector& eps) {
    EpsilonVector out = map(eps);
    if (out.entries.size() != eps.entries.size())
        throw DimensionMismatch("fixed-point map changed the number of entries");
    const double beta = eps.box_upper;
    for (double& v : out.entries) {
        if (v < -1e-9 || v > beta + 1e-9)
            throw BoxViolation("map output left the box [0, beta]^N; self-map hypothesis violated");
        v = std::clamp(v, 0.0, beta);
    }
    return std::move(out.entries);
}

// Type-II Anderson step with memory depth up to 5. xs/fs hold the most
// recent iterates and residual vectors, oldest first.
std::vector<double> anderson_step(const std::deque<std::vector<double>>& xs,
                                  const std::deque<std::vector<double>>& fs) {
    const std::size_t h = xs.size();
    const std::vector<double>& x = xs.back();
    const std::vector<double>& f = fs.back();
    const std::size_t n = x.size();
    if (h < 2) {
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = x[k] + f[k];
        return out;
    }
    const std::size_t m = h - 1;  // difference columns
    // Normal equations G gamma = b for min ||f - dF gamma||.
    std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
    std::vector<double> b(m, 0.0);
    auto df = [&](std::size_t col, std::size_t k) { return fs[col + 1][k] - fs[col][k]; };
    double trace = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t c = a; c < m; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += df(a, k) * df(c, k);
            g[a][c] = g[c][a] = s;
        }
        trace += g[a][a];
        for (std::size_t k = 0; k < n; ++k) b[a] += df(a, k) * f[k];
    }
    const double ridge = 1e-12 * trace / static_cast<double>(m) + 1e-300;
    for (std::size_t a = 0; a < m; ++a) g[a][a] += ridge;
    // Cholesky-free small solve: Gaussian elimination, m <= 5.
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < m; ++r)
            if (std::abs(g[r][k]) > std::abs(g[piv][k])) piv = r;
        std::swap(g[k], g[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t r = k + 1; r < m; ++r) {
            double fac = g[r][k] / g[k][k];
            for (std::size_t c = k; c < m; ++c) g[r][c] -= fac * g[k][c];
            b[r] -= fac * b[k];
        }
    }
    for (std::size_t k = m; k-- > 0;) {
        for (std::size_t c = k + 1; c < m; ++c) b[k] -= g[k][c] * b[c];
        b[k] /= g[k][k];
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double corr = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            corr += b[a] * ((xs[a + 1][k] - xs[a][k]) + df(a, k));
        out[k] = x[k] + f[k] - corr;
    }
    return out;
}

}  // namespace

std::pair<EpsilonVector, SolveReport> solve_fixed_point(const FixedPointMap& map,
                                                        const EpsilonVector& start,
                                                        double tol, long max_iter) {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    constexpr double kDamping = 1.0;
    constexpr int kStallWindow = 100;
    constexpr std::size_t kAndersonDepth = 5;

    EpsilonVector eps = start;
    for (double& v : eps.entries) v = std::clamp(v, 0.0, eps.box_upper);

    SolveReport report;
    report.damping = kDamping;
    std::vector<double> residuals;
    std::deque<std::vector<double>> xs, fs;

    for (long iter = 0;; ++iter) {
        std::vector<double> g = checked_map(map, eps);
        double res = linf_diff(g, eps.entries);
        report.iterations = iter;
        report.residual = res;
        if (res <= tol) {
            report.converged = true;
            return {eps, report};
        }
        if (iter >= max_iter) {
            report.converged = false;
            return {eps, report};
        }
        residuals.push_back(res);
        if (report.method == SolveMethod::picard && residuals.size() > kStallWindow &&
            res > 0.999 * residuals[residuals.size() - 1 - kStallWindow]) {
            report.method = SolveMethod::anderson;
        }
        if (report.method == SolveMethod::picard) {
            for (std::size_t k = 0; k < eps.entries.size(); ++k)
                eps.entries[k] = (1.0 - kDamping) * eps.entries[k] + kDamping * g[k];
        } else {
            std::vector<double> f(eps.entries.size());
            for (std::size_t k = 0; k < f.size(); ++k) f[k] = g[k] - eps.entries[k];
            xs.push_back(eps.entries);
            fs.push_back(std::move(f));
            if (xs.size() > kAndersonDepth + 1) {
                xs.pop_front();
                fs.pop_front();
            }
            std::vector<double> next = anderson_step(xs, fs);
            EpsilonVector cand = eps;
            for (std::size_t k = 0; k < next.size(); ++k)
                cand.entries[k] = std::clamp(next[k], 0.0, eps.box_upper);
            // Safeguard: the extrapolated step must clearly beat the
            // current residual, otherwise take the plain Picard step (the
            // map is only piecewise smooth and extrapolation across a kink
            // can cycle; marginal gains that jump backward along the
            // Picard trajectory loop forever).
            double cand_res = linf_diff(checked_map(map, cand), cand.entries);
            if (cand_res < 0.5 * res)
                eps = std::move(cand);
            else
                eps.entries = std::move(g);
        }
    }
}

EpsilonVector brute_force_fixed_point(const FixedPointMap& map, int n_points, double box_upper,
                                      int grid_resolution, double refine_tol) {
    EpsilonVector proto(n_points, box_upper);
    const std::size_t n = proto.entries.size();
    if (n > 6) throw DomainError("brute_force_fixed_point supports N <= 6 only");
    if (grid_resolution < 2) throw DomainError("grid_resolution must be >= 2");
    if (!(refine_tol > 0.0)) throw DomainError("refine_tol must be positive");

    auto residual = [&](const EpsilonVector& e) {
        EpsilonVector out = map(e);
        return linf_diff(out.entries, e.entries);
    };

    const double step0 = box_upper / (grid_resolution - 1);
    std::size_t cells = 1;
    for (std::size_t k = 0; k < n; ++k) cells *= static_cast<std::size_t>(grid_resolution);

    double best_val = 0.0;
    std::size_t best_idx = 0;
    bool have_best = false;
#pragma omp parallel
    {
        double loc_val = 0.0;
        std::size_t loc_idx = 0;
        bool loc_have = false;
        EpsilonVector e = proto;
#pragma omp for schedule(static)
        for (long long c = 0; c < static_cast<long long>(cells); ++c) {
            std::size_t rem = static_cast<std::size_t>(c);
            for (std::size_t k = 0; k < n; ++k) {
                e.entries[k] = step0 * static_cast<double>(rem % grid_resolution);
                rem /= grid_resolution;
            }
            double v = residual(e);
            if (!loc_have || v < loc_val ||
                (v == loc_val && static_cast<std::size_t>(c) < loc_idx)) {
                loc_val = v;
                loc_idx = static_cast<std::size_t>(c);
                loc_have = true;
            }
        }
#pragma omp critical
        {
            if (loc_have && (!have_best || loc_val < best_val ||
                             (loc_val == best_val && loc_idx < best_idx))) {
                best_val = loc_val;
                best_idx = loc_idx;
                have_best = true;
            }
        }
    }

    EpsilonVector best = proto;
    {
        std::size_t rem = best_idx;
        for (std::size_t k = 0; k < n; ++k) {
            best.entries[k] = step0 * static_cast<double>(rem % grid_resolution);
            rem /= grid_resolution;
        }
    }

    // Coordinate descent with step halving down to refine_tol.
    double cur = residual(best);
    double step = step0;
    while (step > refine_tol) {
        bool improved = false;
        for (std::size_t k = 0; k < n; ++k) {
            for (double sgn : {1.0, -1.0}) {
                EpsilonVector cand = best;
                cand.entries[k] = std::clamp(cand.entries[k] + sgn * step, 0.0, box_upper);
                double v = residual(cand);
                if (v < cur) {
                    cur = v;
                    best = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace eq
