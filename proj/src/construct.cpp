#include "eq/construct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eq/radius.hpp"

namespace eq {

namespace {

constexpr std::size_t kCertSamples = 10000;

SandwichCertificate certify(const NormSpec& norm, const Reference& ref, std::uint64_t seed) {
    try {
        return certificate_exact(norm, ref);
    } catch (const UnsupportedFamily&) {
        return certificate_sampled(norm, ref, kCertSamples, seed);
    }
}

EpsilonVector phi_common(const EpsilonVector& eps, const NormSpec& norm,
                         const std::vector<Vector>& points) {
    const int m = eps.n_points;
    const double beta = eps.box_upper;
    EpsilonVector out = eps;
    for (int i = 1; i < m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            const Vector& pi = points[i - 1];
            const Vector& pj = points[j - 1];
            Vector diff(pi.size());
            for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = pi[k] - pj[k];
            double v = 1.0 + eps.at(i, j) - eval(norm, diff);
            if (v < -1e-9 || v > beta + 1e-9) {
                std::ostringstream msg;
                msg << "phi_{" << i << "," << j << "} = " << v << " left the box [0, " << beta
                    << "]; certificate or condition (*) violated";
                throw BoxViolation(msg.str());
            }
            out.at(i, j) = std::clamp(v, 0.0, beta);
        }
    }
    return out;
}

}  // namespace

PointConfig layout_linf(const EpsilonVector& eps) {
    const int m = eps.n_points;
    if (m < 3) throw DomainError("l_inf layout needs n >= 2 (at least 3 points)");
    if (eps.box_upper != 0.5) throw DomainError("l_inf layout requires box upper bound 1/2");
    const int n = m - 1;
    PointConfig cfg;
    cfg.gamma = 1.0;
    cfg.points.assign(m, Vector(n, 0.0));
    cfg.points[0][0] = -1.0;
    for (int j = 2; j <= n; ++j) {
        for (int k = 1; k < j; ++k) cfg.points[j - 1][k - 1] = eps.at(k, j);
        cfg.points[j - 1][j - 1] = -1.0;
    }
    for (int k = 1; k <= n; ++k) cfg.points[n][k - 1] = eps.at(k, n + 1);
    return cfg;
}

EpsilonVector phi_linf(const EpsilonVector& eps, const NormSpec& norm) {
    PointConfig cfg = layout_linf(eps);
    if (norm.dim() != static_cast<int>(cfg.points.front().size()))
        throw DimensionMismatch("norm dimension does not match the layout");
    return phi_common(eps, norm, cfg.points);
}

std::pair<PointConfig, SolveReport> solve_equilateral_linf(const NormSpec& norm, int n,
                                                           double tol, std::uint64_t cert_seed) {
    if (n < 2) throw DomainError("l_inf construction requires n >= 2");
    if (norm.dim() != n) throw DimensionMismatch("norm dimension does not match n");
    SandwichCertificate cert = certify(norm, Reference::linf(), cert_seed);
    if (cert.R > 1.5 + 1e-12) {
        std::ostringstream msg;
        msg << "certified distortion " << cert.R << " exceeds 3/2; theorem hypothesis fails";
        throw PreconditionError(msg.str());
    }
    EpsilonVector start(n + 1, 0.5);
    auto [eps, report] = solve_fixed_point(
        [&norm](const EpsilonVector& e) { return phi_linf(e, norm); }, start, tol);
    return {layout_linf(eps), report};
}

LpParams derive_lp_params(double p, int n) {
    RadiusResult rr = maximize_radius(p, n);
    LpParams params;
    params.p = p;
    params.n = n;
    params.theta = rr.theta_star;
    params.gamma = std::pow(2.0 + (n - 2) * std::pow(params.theta, p), -1.0 / p);
    params.beta = params.theta * params.gamma;
    params.R = rr.R;
    // Both halves of condition (*) must be saturated at the optimum.
    const double lhs1 = std::pow(params.gamma + params.beta, p) + std::pow(params.gamma, p);
    const double lhs2 = (n - 2) * std::pow(params.beta, p) + 2.0 * std::pow(params.gamma, p);
    if (std::abs(lhs1 - std::pow(params.R, p)) > 1e-10 || std::abs(lhs2 - 1.0) > 1e-10)
        throw DomainError("derived l_p parameters fail condition (*)");
    return params;
}

PointConfig layout_lp(const EpsilonVector& eps, double gamma) {
    const int n = eps.n_points;
    if (n < 3) throw DomainError("l_p layout needs n > 2");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    PointConfig cfg;
    cfg.gamma = gamma;
    cfg.points.assign(n, Vector(n, 0.0));
    cfg.points[0][0] = -gamma;
    for (int j = 2; j <= n; ++j) {
        for (int k = 1; k < j; ++k) cfg.points[j - 1][k - 1] = eps.at(k, j);
        cfg.points[j - 1][j - 1] = -gamma;
    }
    return cfg;
}

EpsilonVector phi_lp(const EpsilonVector& eps, const NormSpec& norm, const LpParams& params) {
    if (eps.n_points != params.n) throw DimensionMismatch("eps point count does not match params");
    if (std::abs(eps.box_upper - params.beta) > 1e-12)
        throw DomainError("eps box upper bound must equal beta");
    PointConfig cfg = layout_lp(eps, params.gamma);
    if (norm.dim() != params.n) throw DimensionMismatch("norm dimension does not match n");
    return phi_common(eps, norm, cfg.points);
}

std::tuple<PointConfig, SolveReport, LpParams> solve_equilateral_lp(const NormSpec& norm,
                                                                    double p, int n,
                                                                    double tol, std::uint64_t cert_seed) {
    LpParams params = derive_lp_params(p, n);
    if (norm.dim() != n) throw DimensionMismatch("norm dimension does not match n");
    SandwichCertificate cert = certify(norm, Reference::lp(p), cert_seed);
    if (cert.R > params.R + 1e-12) {
        std::ostringstream msg;
        msg << "certified distortion " << cert.R << " exceeds R(p,n) = " << params.R;
        throw PreconditionError(msg.str());
    }
    EpsilonVector start(n, params.beta);
    auto [eps, report] = solve_fixed_point(
        [&norm, &params](const EpsilonVector& e) { return phi_lp(e, norm, params); }, start, tol);
    return {layout_lp(eps, params.gamma), report, params};
}

}  // namespace eq
