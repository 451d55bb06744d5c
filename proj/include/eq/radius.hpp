#pragma once

namespace eq {

struct RadiusResult {
    double p = 0.0;
    int n = 0;
    double theta_star = 0.0;
    double R = 1.0;
    double objective = 1.0;         // R^p
    double objective_excess = 0.0;  // R^p - 1, computed without cancellation
    double R_excess = 0.0;          // R - 1, ditto
    double asymptotic_estimate = 1.0;
};

// (1 + (1+theta)^p) / (2 + (n-2) theta^p), the quantity whose maximum over
// theta > 0 is R(p,n)^p.
double radius_objective(double theta, double p, int n);

// The same ratio minus 1, kept accurate when the objective is within
// rounding distance of 1 (p near 1 with large n pushes R - 1 below 1e-16).
double radius_objective_excess(double theta, double p, int n);

// Maximizes the objective over theta in (0, 10]: a 1024-point log grid
// brackets the maximum (its lower end extends below 1e-12 when the
// maximizer n^(-1/(p-1)) sits there), golden-section refines in log space,
// and a derivative bisection polishes theta.
RadiusResult maximize_radius(double p, int n);

// 1 + (p-1)/(2p) * n^(-1/(p-1)), the large-n behavior of R(p,n).
double radius_asymptotic_estimate(double p, int n);

}  // namespace eq
