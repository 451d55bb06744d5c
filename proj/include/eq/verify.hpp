#pragma once

#include <optional>

#include "eq/construct.hpp"
#include "eq/norms.hpp"

namespace eq {

struct EquilateralReport {
    int m = 0;
    double common_distance = 0.0;  // mean of pairwise distances
    double max_deviation = 0.0;    // max |d_ij - common_distance|
    double tolerance = 0.0;
    bool pass = false;
};

// Recomputes every pairwise distance directly from the point list. This is
// the independent check: it never touches the construction's eps bookkeeping.
EquilateralReport check_equilateral(const std::vector<Vector>& points, const NormSpec& norm,
                                    double tol);

// Grid probe for a point equidistant (at the common distance) from all the
// given points: scans a cube of side 2*box_radius around the centroid, then
// refines the best cell by coordinate descent. Returns the point if the
// final objective max_j | ||x - p_j|| - d | is within refine_tol; a nullopt
// means "not found at this resolution", nothing more.
std::optional<Vector> extension_search(const std::vector<Vector>& points, const NormSpec& norm,
                                       double box_radius, int grid_resolution,
                                       double refine_tol);

// Serial reference for the OpenMP grid scan above; identical results.
std::optional<Vector> extension_search_serial(const std::vector<Vector>& points,
                                              const NormSpec& norm, double box_radius,
                                              int grid_resolution, double refine_tol);

struct CertifySummary {
    bool sandwich_ok = false;
    bool condition_ok = false;  // condition (*) when l_p params are present
    bool equilateral_ok = false;
    bool pass = false;
    double max_deviation = 0.0;
};

// Re-validates a completed run: the certificate inequality on 10^3 seeded
// random vectors, condition (*) when params are given, and equilaterality
// at 10x the solve residual.
CertifySummary certify_run(const NormSpec& norm, const PointConfig& config,
                           const SandwichCertificate& cert, double residual,
                           const std::optional<LpParams>& params = std::nullopt);

}  // namespace eq
