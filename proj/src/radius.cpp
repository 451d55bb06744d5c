#include "eq/radius.hpp"

#include <algorithm>
#include <cmath>

#include "eq/errors.hpp"

namespace eq {

namespace {

void check_domain(double p, int n) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must be in (1, inf)");
    if (n <= 2) throw DomainError("n must be greater than 2");
}

// Proportional to d/dtheta of log(objective); positive left of the
// maximizer, negative right of it.
double objective_slope(double theta, double p, int n) {
    const double a = std::pow(1.0 + theta, p - 1.0);
    const double b = (n - 2) * std::pow(theta, p - 1.0);
    return a * (2.0 + (n - 2) * std::pow(theta, p)) - b * (1.0 + std::pow(1.0 + theta, p));
}

}  // namespace

double radius_objective(double theta, double p, int n) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    check_domain(p, n);
    return (1.0 + std::pow(1.0 + theta, p)) / (2.0 + (n - 2) * std::pow(theta, p));
}

double radius_objective_excess(double theta, double p, int n) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    check_domain(p, n);
    // ((1+theta)^p - 1 - (n-2) theta^p) / (2 + (n-2) theta^p)
    const double tp = (n - 2) * std::pow(theta, p);
    return (std::expm1(p * std::log1p(theta)) - tp) / (2.0 + tp);
}

RadiusResult maximize_radius(double p, int n) {
    check_domain(p, n);
    // The maximizer sits near (n-2)^(-1/(p-1)), which drops below 1e-12
    // for p near 1; open the grid down to well under it.
    const double theta_scale = std::pow(static_cast<double>(n - 2), -1.0 / (p - 1.0));
    const double lo = std::max(1e-300, std::min(1e-12, 1e-3 * theta_scale));
    const double hi = 10.0;
    const int grid = 1024;

    // Log-spaced grid scan to bracket the global maximum.
    const double llo = std::log(lo), lhi = std::log(hi);
    const double lstep = (lhi - llo) / (grid - 1);
    double best_val = radius_objective_excess(lo, p, n);
    int best_k = 0;
    for (int k = 1; k < grid; ++k) {
        double v = radius_objective_excess(std::exp(llo + lstep * k), p, n);
        if (v > best_val) {
            best_val = v;
            best_k = k;
        }
    }

    // Golden-section refinement in log space.
    double a = llo + lstep * std::max(0, best_k - 1);
    double b = llo + lstep * std::min(grid - 1, best_k + 1);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = radius_objective_excess(std::exp(x1), p, n);
    double f2 = radius_objective_excess(std::exp(x2), p, n);
    while (b - a > 1e-13) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = radius_objective_excess(std::exp(x2), p, n);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = radius_objective_excess(std::exp(x1), p, n);
        }
    }
    double theta = std::exp(0.5 * (a + b));

    // Near the flat top the golden comparisons run out of floating-point
    // resolution; bisecting the slope recovers full accuracy.
    double blo = theta * 0.999, bhi = theta * 1.001;
    if (objective_slope(blo, p, n) > 0.0 && objective_slope(bhi, p, n) < 0.0) {
        for (int it = 0; it < 200 && bhi - blo > 1e-15 * theta; ++it) {
            double mid = 0.5 * (blo + bhi);
            if (objective_slope(mid, p, n) > 0.0)
                blo = mid;
            else
                bhi = mid;
        }
        theta = 0.5 * (blo + bhi);
    }

    RadiusResult out;
    out.p = p;
    out.n = n;
    out.theta_star = theta;
    out.objective_excess = radius_objective_excess(theta, p, n);
    out.objective = 1.0 + out.objective_excess;
    out.R = std::pow(out.objective, 1.0 / p);
    out.R_excess = std::expm1(std::log1p(out.objective_excess) / p);
    out.asymptotic_estimate = radius_asymptotic_estimate(p, n);
    return out;
}

double radius_asymptotic_estimate(double p, int n) {
    check_domain(p, n);
    return 1.0 + (p - 1.0) / (2.0 * p) * std::pow(n, -1.0 / (p - 1.0));
}

}  // namespace eq
