#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "eq/errors.hpp"

namespace eq {

// A point of R^n. All entries finite, length fixed at construction.
using Vector = std::vector<double>;

void require_finite(const Vector& x);

// Reference norm for sandwich certificates: l_p (p > 1) or l_inf.
struct Reference {
    bool infinity = true;
    double p = 0.0;

    static Reference linf() { return {true, 0.0}; }
    static Reference lp(double p);
};

double reference_eval(const Reference& ref, const Vector& x);

struct NormSpec;

// ||x|| = (sum_i w_i^p |x_i|^p)^(1/p)
struct WeightedLp {
    double p;
    std::vector<double> weights;
};

// ||x|| = max_i w_i |x_i|
struct WeightedLinf {
    std::vector<double> weights;
};

// ||x|| = max_k |<a_k, x>|; the functionals must span R^n.
struct PolytopeNorm {
    std::vector<Vector> functionals;
};

// ||x|| = base(M x), M invertible.
struct ComposedNorm {
    std::vector<std::vector<double>> matrix;
    std::shared_ptr<const NormSpec> base;
};

struct NormSpec {
    std::variant<WeightedLp, WeightedLinf, PolytopeNorm, ComposedNorm> value;

    int dim() const;

    static NormSpec weighted_lp(double p, std::vector<double> weights);
    static NormSpec weighted_linf(std::vector<double> weights);
    static NormSpec polytope(std::vector<Vector> functionals);
    static NormSpec composed(std::vector<std::vector<double>> matrix, NormSpec base);
};

double eval(const NormSpec& spec, const Vector& x);

// Verified two-sided comparison ||x|| <= ||x||_ref <= R ||x||.
struct SandwichCertificate {
    Reference reference;
    double R = 1.0;
    bool exact = false;
};

// Closed-form distortion for weighted families (and diagonal compositions
// of them). Throws UnsupportedFamily otherwise, NormalizationViolation if
// some effective weight exceeds 1.
SandwichCertificate certificate_exact(const NormSpec& spec, const Reference& ref);

// Empirical lower bound on the distortion: max of ||x||_ref / ||x|| over
// seeded random unit vectors. R never overestimates the true distortion.
SandwichCertificate certificate_sampled(const NormSpec& spec, const Reference& ref,
                                        std::size_t samples, std::uint64_t seed);

}  // namespace eq
