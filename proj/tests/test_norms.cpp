#include <cmath>
#include <random>

#include <doctest.h>

#include "eq/norms.hpp"

using namespace eq;

namespace {

// Seeded generator of random norms covering all four families.
struct NormGen {
    std::mt19937_64 rng{20260823};

    double unif(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    Vector vec(int n, double lo = -1.0, double hi = 1.0) {
        Vector x(n);
        for (auto& v : x) v = unif(lo, hi);
        return x;
    }

    NormSpec random_norm(int n) {
        switch (rng() % 4) {
            case 0: {
                std::vector<double> w(n);
                for (auto& v : w) v = unif(0.3, 1.0);
                return NormSpec::weighted_lp(unif(1.2, 4.0), w);
            }
            case 1: {
                std::vector<double> w(n);
                for (auto& v : w) v = unif(0.3, 1.0);
                return NormSpec::weighted_linf(w);
            }
            case 2: {
                std::vector<Vector> rows;
                for (int k = 0; k < n; ++k) {
                    Vector e(n, 0.0);
                    e[k] = unif(0.5, 1.0);
                    rows.push_back(e);
                }
                rows.push_back(vec(n, -0.3, 0.3));
                return NormSpec::polytope(rows);
            }
            default: {
                std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
                for (int k = 0; k < n; ++k) m[k][k] = unif(0.5, 1.0);
                std::vector<double> w(n, 1.0);
                return NormSpec::composed(m, NormSpec::weighted_linf(w));
            }
        }
    }
};

}  // namespace

TEST_CASE("eval on the stated examples") {
    CHECK(eval(NormSpec::weighted_lp(2.0, {1, 1}), {3, 4}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(eval(NormSpec::weighted_linf({1, 1}), {1, -2}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eval(NormSpec::weighted_linf({1.0, 2.0 / 3.0}), {0.0, -1.5}) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eval is zero exactly at the origin") {
    NormSpec s = NormSpec::weighted_lp(3.0, {0.5, 0.9, 1.0});
    CHECK(eval(s, {0, 0, 0}) == 0.0);
    CHECK(eval(s, {0, 1e-30, 0}) > 0.0);
}

TEST_CASE("eval rejects dimension mismatches") {
    CHECK_THROWS_AS(eval(NormSpec::weighted_linf({1, 1}), {1, 2, 3}), DimensionMismatch);
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(NormSpec::weighted_lp(1.0, {1, 1}), DomainError);
    CHECK_THROWS_AS(NormSpec::weighted_linf({1.0, 0.0}), DomainError);
    // Functionals that do not span R^2 are not a norm.
    CHECK_THROWS_AS(NormSpec::polytope({{1, 0}, {2, 0}}), DomainError);
    // Singular composition matrix.
    CHECK_THROWS_AS(NormSpec::composed({{1, 1}, {1, 1}}, NormSpec::weighted_linf({1, 1})),
                    DomainError);
}

TEST_CASE("certificate_exact on the stated examples") {
    auto c1 = certificate_exact(NormSpec::weighted_linf({1.0, 2.0 / 3.0}), Reference::linf());
    CHECK(c1.exact);
    CHECK(c1.R == doctest::Approx(1.5).epsilon(1e-14));

    auto c2 = certificate_exact(NormSpec::weighted_linf({1, 1, 1}), Reference::linf());
    CHECK(c2.R == 1.0);

    auto c3 = certificate_exact(NormSpec::weighted_lp(2.0, {1.0, 0.8}), Reference::lp(2.0));
    CHECK(c3.R == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("certificate_exact reports the rescale factor on violation") {
    try {
        certificate_exact(NormSpec::weighted_linf({1.0, 1.2}), Reference::linf());
        FAIL("expected NormalizationViolation");
    } catch (const NormalizationViolation& e) {
        CHECK(e.rescale == doctest::Approx(1.2).epsilon(1e-14));
    }
}

TEST_CASE("certificate_exact rejects unsupported families") {
    CHECK_THROWS_AS(certificate_exact(NormSpec::polytope({{1, 0}, {0, 1}, {0.5, 0.5}}),
                                      Reference::linf()),
                    UnsupportedFamily);
    // Mismatched reference p.
    CHECK_THROWS_AS(certificate_exact(NormSpec::weighted_lp(2.0, {1, 1}), Reference::lp(3.0)),
                    UnsupportedFamily);
}

TEST_CASE("certificate_exact on diagonal compositions") {
    auto base = NormSpec::weighted_linf({1.0, 1.0});
    auto comp = NormSpec::composed({{1.0, 0.0}, {0.0, 0.5}}, base);
    auto c = certificate_exact(comp, Reference::linf());
    CHECK(c.exact);
    CHECK(c.R == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("certificate_sampled on the stated examples") {
    auto c1 = certificate_sampled(NormSpec::weighted_linf({1.0, 2.0 / 3.0}), Reference::linf(),
                                  10000, 7);
    CHECK(!c1.exact);
    CHECK(c1.R >= 1.49);
    CHECK(c1.R <= 1.5 + 1e-12);

    auto c2 = certificate_sampled(NormSpec::weighted_linf({1, 1}), Reference::linf(), 100, 7);
    CHECK(c2.R == 1.0);

    auto c3 = certificate_sampled(NormSpec::polytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}),
                                  Reference::linf(), 1000, 7);
    CHECK(c3.R == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("certificate_sampled flags normalization violations") {
    CHECK_THROWS_AS(certificate_sampled(NormSpec::weighted_linf({1.0, 1.3}), Reference::linf(),
                                        1000, 7),
                    NormalizationViolation);
}

TEST_CASE("certificate_sampled is deterministic given the seed") {
    auto a = certificate_sampled(NormSpec::weighted_linf({1.0, 0.7, 0.9}), Reference::linf(), 500, 42);
    auto b = certificate_sampled(NormSpec::weighted_linf({1.0, 0.7, 0.9}), Reference::linf(), 500, 42);
    CHECK(a.R == b.R);
}

TEST_CASE("property: homogeneity and triangle inequality") {
    NormGen gen;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(gen.rng() % 5);
        NormSpec s = gen.random_norm(n);
        Vector x = gen.vec(n), y = gen.vec(n);
        double t = gen.unif(-3.0, 3.0);

        Vector tx(n);
        for (int k = 0; k < n; ++k) tx[k] = t * x[k];
        double lhs = eval(s, tx);
        double rhs = std::abs(t) * eval(s, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

        Vector xy(n);
        for (int k = 0; k < n; ++k) xy[k] = x[k] + y[k];
        CHECK(eval(s, xy) <= eval(s, x) + eval(s, y) + 1e-12);
    }
}

TEST_CASE("property: exact certificates are sound") {
    NormGen gen;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(gen.rng() % 4);
        std::vector<double> w(n);
        for (auto& v : w) v = gen.unif(0.4, 1.0);
        bool use_linf = gen.rng() % 2 == 0;
        double p = gen.unif(1.3, 5.0);
        NormSpec s = use_linf ? NormSpec::weighted_linf(w) : NormSpec::weighted_lp(p, w);
        Reference ref = use_linf ? Reference::linf() : Reference::lp(p);
        auto cert = certificate_exact(s, ref);
        for (int k = 0; k < 20; ++k) {
            Vector x = gen.vec(n);
            double vx = eval(s, x);
            double vref = reference_eval(ref, x);
            double scale = vref;
            CHECK(vx <= vref + 1e-12 * scale);
            CHECK(vref <= cert.R * vx + 1e-12 * scale);
        }
    }
}

TEST_CASE("property: sampled R never exceeds exact R") {
    NormGen gen;
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(gen.rng() % 4);
        std::vector<double> w(n);
        for (auto& v : w) v = gen.unif(0.4, 1.0);
        NormSpec s = NormSpec::weighted_linf(w);
        auto exact = certificate_exact(s, Reference::linf());
        auto sampled = certificate_sampled(s, Reference::linf(), 2000, trial);
        CHECK(sampled.R <= exact.R + 1e-12);
    }
}
