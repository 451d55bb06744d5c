#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "eq/errors.hpp"

namespace eq {

// Flat 0-based index of the pair (i, j), 1 <= i < j <= m, in lexicographic
// order over I = {(i,j) : 1 <= i < j <= m}.
inline std::size_t pair_index(int i, int j, int m) {
    return static_cast<std::size_t>(i - 1) * m - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i - 1);
}

inline std::size_t pair_count(int m) { return static_cast<std::size_t>(m) * (m - 1) / 2; }

// The fixed-point variable: one entry per pair of points, constrained to
// the box [0, box_upper]^N.
struct EpsilonVector {
    int n_points = 2;
    double box_upper = 0.0;
    std::vector<double> entries;

    EpsilonVector() = default;
    EpsilonVector(int m, double beta)
        : n_points(m), box_upper(beta), entries(pair_count(m), 0.0) {
        if (m < 2) throw DomainError("EpsilonVector needs at least 2 points");
        if (!(beta > 0.0)) throw DomainError("box upper bound must be positive");
    }

    double& at(int i, int j) { return entries[pair_index(i, j, n_points)]; }
    double at(int i, int j) const { return entries[pair_index(i, j, n_points)]; }
};

using FixedPointMap = std::function<EpsilonVector(const EpsilonVector&)>;

enum class SolveMethod { picard, anderson };

struct SolveReport {
    bool converged = false;
    long iterations = 0;
    double residual = 0.0;
    SolveMethod method = SolveMethod::picard;
    double damping = 1.0;
};

// Damped Picard iteration with an Anderson fallback when the residual
// stagnates. The map must send the box into itself; an output outside the
// box by more than 1e-9 throws BoxViolation. Deterministic.
std::pair<EpsilonVector, SolveReport> solve_fixed_point(const FixedPointMap& map,
                                                        const EpsilonVector& start,
                                                        double tol = 1e-12,
                                                        long max_iter = 100000);

// Independent oracle: exhaustive grid scan of the box (N <= 6) for the cell
// minimizing ||map(eps) - eps||_inf, refined by coordinate descent.
// Test-only cross-check for solve_fixed_point.
EpsilonVector brute_force_fixed_point(const FixedPointMap& map, int n_points, double box_upper,
                                      int grid_resolution, double refine_tol);

}  // namespace eq
