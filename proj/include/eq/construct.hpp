#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "eq/norms.hpp"
#include "eq/solver.hpp"

namespace eq {

// An explicit point family in R^n: n+1 points on the l_inf path, n points
// on the l_p path. gamma is the diagonal magnitude (1 on the l_inf path).
struct PointConfig {
    std::vector<Vector> points;
    double gamma = 1.0;
};

// Parameters of the l_p construction; theta = beta/gamma and the pair of
// inequalities (gamma+beta)^p + gamma^p >= R^p, (n-2) beta^p + 2 gamma^p <= 1
// hold with near-equality at the optimum.
struct LpParams {
    double p = 0.0;
    int n = 0;
    double beta = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double R = 1.0;
};

// n+1 points in R^n from the pair perturbations eps (box [0, 1/2]^N):
// p_1 = (-1,0,...,0); p_j carries eps_{1,j}..eps_{j-1,j} then -1 at
// coordinate j; p_{n+1} = (eps_{1,n+1},...,eps_{n,n+1}).
PointConfig layout_linf(const EpsilonVector& eps);

// Self-map of [0, 1/2]^N whose fixed points make the layout equilateral:
// entry (i,j) is 1 + eps_{i,j} - ||p_i(eps) - p_j(eps)||.
EpsilonVector phi_linf(const EpsilonVector& eps, const NormSpec& norm);

// Full l_inf-path run: certifies the norm against l_inf (distortion must be
// <= 3/2), solves for a fixed point, and returns the n+1 points.
std::pair<PointConfig, SolveReport> solve_equilateral_linf(const NormSpec& norm, int n,
                                                           double tol = 1e-12,
                                                           std::uint64_t cert_seed = 0x5eed);

// Optimal (beta, gamma, theta, R) for dimension n and exponent p, with
// both constraints saturated.
LpParams derive_lp_params(double p, int n);

// n points in R^n: p_1 = (-gamma,0,...,0); p_j carries its eps entries then
// -gamma at coordinate j.
PointConfig layout_lp(const EpsilonVector& eps, double gamma);

// Self-map of [0, beta]^N for the l_p construction.
EpsilonVector phi_lp(const EpsilonVector& eps, const NormSpec& norm, const LpParams& params);

// Full l_p-path run: derives parameters, certifies the norm against l_p
// (distortion must be <= R(p,n)), and solves for n equilateral points.
std::tuple<PointConfig, SolveReport, LpParams> solve_equilateral_lp(const NormSpec& norm,
                                                                    double p, int n,
                                                                    double tol = 1e-12,
                                                                    std::uint64_t cert_seed = 0x5eed);

}  // namespace eq
