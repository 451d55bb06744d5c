#include "eq/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace eq {

void require_finite(const Vector& x) {
    for (double v : x) {
        if (!std::isfinite(v)) throw DomainError("vector entry is not finite");
    }
}

Reference Reference::lp(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("reference p must be in (1, inf)");
    return {false, p};
}

double reference_eval(const Reference& ref, const Vector& x) {
    if (ref.infinity) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), ref.p);
    return std::pow(s, 1.0 / ref.p);
}

namespace {

void check_weights(const std::vector<double>& w) {
    if (w.empty()) throw DomainError("weights must be nonempty");
    for (double v : w) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("weights must be strictly positive");
    }
}

// Rank of the functional matrix via Gaussian elimination with partial pivoting.
int matrix_rank(std::vector<Vector> rows, int n) {
    int rank = 0;
    int col = 0;
    const int m = static_cast<int>(rows.size());
    while (rank < m && col < n) {
        int pivot = rank;
        for (int r = rank + 1; r < m; ++r) {
            if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
        }
        if (std::abs(rows[pivot][col]) < 1e-12) {
            ++col;
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (int r = rank + 1; r < m; ++r) {
            double f = rows[r][col] / rows[rank][col];
            for (int c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
        ++col;
    }
    return rank;
}

// Solves A x = b in place; returns false when A is numerically singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double>& b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int r = k + 1; r < n; ++r) {
            if (std::abs(a[r][k]) > std::abs(a[pivot][k])) pivot = r;
        }
        if (std::abs(a[pivot][k]) < 1e-300) return false;
        std::swap(a[k], a[pivot]);
        std::swap(b[k], b[pivot]);
        for (int r = k + 1; r < n; ++r) {
            double f = a[r][k] / a[k][k];
            for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        for (int c = k + 1; c < n; ++c) b[k] -= a[k][c] * b[c];
        b[k] /= a[k][k];
    }
    return true;
}

void check_invertible(const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    for (const auto& row : m) {
        if (static_cast<int>(row.size()) != n) throw DomainError("composed matrix must be square");
        require_finite(row);
    }
    // Solve against identity columns and check the residual.
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        if (!solve_linear(m, e)) throw DomainError("composed matrix is singular");
        for (int i = 0; i < n; ++i) {
            double r = (i == j) ? -1.0 : 0.0;
            for (int k = 0; k < n; ++k) r += m[i][k] * e[k];
            if (std::abs(r) > 1e-10) throw DomainError("composed matrix is not invertible to tolerance");
        }
    }
}

}  // namespace

int NormSpec::dim() const {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, WeightedLp> || std::is_same_v<T, WeightedLinf>) {
                return static_cast<int>(s.weights.size());
            } else if constexpr (std::is_same_v<T, PolytopeNorm>) {
                return static_cast<int>(s.functionals.front().size());
            } else {
                return static_cast<int>(s.matrix.size());
            }
        },
        value);
}

NormSpec NormSpec::weighted_lp(double p, std::vector<double> weights) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must be in (1, inf); use weighted_linf for p = inf");
    check_weights(weights);
    return {WeightedLp{p, std::move(weights)}};
}

NormSpec NormSpec::weighted_linf(std::vector<double> weights) {
    check_weights(weights);
    return {WeightedLinf{std::move(weights)}};
}

NormSpec NormSpec::polytope(std::vector<Vector> functionals) {
    if (functionals.empty()) throw DomainError("polytope norm needs at least one functional");
    const int n = static_cast<int>(functionals.front().size());
    for (const auto& f : functionals) {
        if (static_cast<int>(f.size()) != n) throw DimensionMismatch("polytope functionals have mixed lengths");
        require_finite(f);
    }
    if (matrix_rank(functionals, n) < n) throw DomainError("polytope functionals do not span R^n; not a norm");
    return {PolytopeNorm{std::move(functionals)}};
}

NormSpec NormSpec::composed(std::vector<std::vector<double>> matrix, NormSpec base) {
    check_invertible(matrix);
    if (static_cast<int>(matrix.size()) != base.dim()) throw DimensionMismatch("composed matrix size does not match base norm");
    return {ComposedNorm{std::move(matrix), std::make_shared<const NormSpec>(std::move(base))}};
}

double eval(const NormSpec& spec, const Vector& x) {
    return std::visit(
        [&x](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, WeightedLp>) {
                if (x.size() != s.weights.size()) throw DimensionMismatch("eval: vector length does not match norm dimension");
                double sum = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) sum += std::pow(s.weights[i] * std::abs(x[i]), s.p);
                return std::pow(sum, 1.0 / s.p);
            } else if constexpr (std::is_same_v<T, WeightedLinf>) {
                if (x.size() != s.weights.size()) throw DimensionMismatch("eval: vector length does not match norm dimension");
                double m = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, s.weights[i] * std::abs(x[i]));
                return m;
            } else if constexpr (std::is_same_v<T, PolytopeNorm>) {
                if (x.size() != s.functionals.front().size()) throw DimensionMismatch("eval: vector length does not match norm dimension");
                double m = 0.0;
                for (const auto& a : s.functionals) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < x.size(); ++i) dot += a[i] * x[i];
                    m = std::max(m, std::abs(dot));
                }
                return m;
            } else {
                if (x.size() != s.matrix.size()) throw DimensionMismatch("eval: vector length does not match norm dimension");
                Vector mx(x.size(), 0.0);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    double dot = 0.0;
                    for (std::size_t k = 0; k < x.size(); ++k) dot += s.matrix[i][k] * x[k];
                    mx[i] = dot;
                }
                return eval(*s.base, mx);
            }
        },
        spec.value);
}

namespace {

// Effective per-coordinate weights for the families with closed-form
// distortion. Diagonal compositions multiply into the base weights.
std::vector<double> effective_weights(const NormSpec& spec, const Reference& ref) {
    if (const auto* lp = std::get_if<WeightedLp>(&spec.value)) {
        if (ref.infinity || std::abs(ref.p - lp->p) > 0.0)
            throw UnsupportedFamily("weighted_lp certificate requires the reference l_p with the same p");
        return lp->weights;
    }
    if (const auto* li = std::get_if<WeightedLinf>(&spec.value)) {
        if (!ref.infinity) throw UnsupportedFamily("weighted_linf certificate requires the l_inf reference");
        return li->weights;
    }
    if (const auto* c = std::get_if<ComposedNorm>(&spec.value)) {
        const int n = static_cast<int>(c->matrix.size());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j && c->matrix[i][j] != 0.0)
                    throw UnsupportedFamily("exact certificate supports diagonal compositions only");
            }
        }
        std::vector<double> w = effective_weights(*c->base, ref);
        for (int i = 0; i < n; ++i) w[i] *= std::abs(c->matrix[i][i]);
        return w;
    }
    throw UnsupportedFamily("no closed-form distortion for this norm family; use certificate_sampled");
}

}  // namespace

SandwichCertificate certificate_exact(const NormSpec& spec, const Reference& ref) {
    std::vector<double> w = effective_weights(spec, ref);
    double wmin = *std::min_element(w.begin(), w.end());
    double wmax = *std::max_element(w.begin(), w.end());
    if (wmax > 1.0 + 1e-15) {
        std::ostringstream msg;
        msg << "norm violates ||x|| <= ||x||_ref: max effective weight " << wmax
            << " > 1; divide the weights by " << wmax << " to fix";
        throw NormalizationViolation(msg.str(), wmax);
    }
    return {ref, 1.0 / wmin, true};
}

SandwichCertificate certificate_sampled(const NormSpec& spec, const Reference& ref,
                                        std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("samples must be >= 1");
    const int n = spec.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double r = 1.0;
    for (std::size_t k = 0; k < samples; ++k) {
        Vector x(n);
        double ref_norm = 0.0;
        do {
            for (int i = 0; i < n; ++i) x[i] = gauss(rng);
            ref_norm = reference_eval(ref, x);
        } while (ref_norm < 1e-12);
        for (int i = 0; i < n; ++i) x[i] /= ref_norm;
        double v = eval(spec, x);
        if (v > 1.0 + 1e-12)
            throw NormalizationViolation("sampled vector violates ||x|| <= ||x||_ref", v);
        if (v > 0.0) r = std::max(r, 1.0 / v);
    }
    return {ref, r, false};
}

}  // namespace eq
