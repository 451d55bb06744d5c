#include <cmath>

#include <doctest.h>

#include "eq/construct.hpp"
#include "eq/norms.hpp"
#include "eq/verify.hpp"

using namespace eq;

TEST_CASE("check_equilateral on the l_inf simplex") {
    std::vector<Vector> pts = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 0}};
    EquilateralReport rep = check_equilateral(pts, NormSpec::weighted_linf({1, 1, 1}), 1e-12);
    CHECK(rep.pass);
    CHECK(rep.common_distance == 1.0);
    CHECK(rep.max_deviation == 0.0);
}

TEST_CASE("check_equilateral on the hand-derived weighted instance") {
    std::vector<Vector> pts = {{-1, 0}, {0, -1}, {0, 0.5}};
    NormSpec norm = NormSpec::weighted_linf({1.0, 2.0 / 3.0});
    EquilateralReport rep = check_equilateral(pts, norm, 1e-12);
    CHECK(rep.pass);
    CHECK(rep.common_distance == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("check_equilateral detects a perturbed coordinate") {
    std::vector<Vector> pts = {{-1, 0}, {0, -1}, {0, 0.5 + 1e-3}};
    NormSpec norm = NormSpec::weighted_linf({1.0, 2.0 / 3.0});
    EquilateralReport rep = check_equilateral(pts, norm, 1e-6);
    CHECK(!rep.pass);
    CHECK(rep.max_deviation >= 1e-4);
}

TEST_CASE("check_equilateral input validation") {
    NormSpec norm = NormSpec::weighted_linf({1, 1});
    CHECK_THROWS_AS(check_equilateral({{0, 0}}, norm, 1e-9), DomainError);
    CHECK_THROWS_AS(check_equilateral({{0, 0}, {1, 2, 3}}, norm, 1e-9), DimensionMismatch);
}

TEST_CASE("extension_search finds a third point for two l_inf points") {
    NormSpec norm = NormSpec::weighted_linf({1, 1});
    std::vector<Vector> pts = {{0.5, 0}, {-0.5, 0}};
    auto x = extension_search(pts, norm, 2.0, 33, 1e-9);
    REQUIRE(x.has_value());
    pts.push_back(*x);
    EquilateralReport rep = check_equilateral(pts, norm, 1e-8);
    CHECK(rep.pass);
}

TEST_CASE("extension_search extends the 4-point l_inf^3 simplex") {
    // The simplex sits on vertices of the cube {0,-1}^3, whose 8 vertices
    // are pairwise at distance 1, so a 5th point exists (e.g. (-1,-1,0)).
    NormSpec norm = NormSpec::weighted_linf({1, 1, 1});
    std::vector<Vector> pts = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 0}};
    auto x = extension_search(pts, norm, 2.0, 33, 1e-9);
    REQUIRE(x.has_value());
    pts.push_back(*x);
    CHECK(check_equilateral(pts, norm, 1e-8).pass);
}

TEST_CASE("extension_search reports none for the planar Euclidean triangle") {
    // No point of the plane is at distance 1 from all three vertices of a
    // unit triangle (the circumcenter sits at 1/sqrt(3)).
    NormSpec norm = NormSpec::weighted_lp(2.0, {1, 1});
    std::vector<Vector> pts = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
    auto x = extension_search(pts, norm, 2.0, 33, 1e-9);
    CHECK(!x.has_value());
}

TEST_CASE("extension_search finds the Euclidean apex for n = 3") {
    NormSpec norm = NormSpec::weighted_lp(2.0, {1, 1, 1});
    auto [cfg, report, params] = solve_equilateral_lp(norm, 2.0, 3);
    REQUIRE(report.converged);
    auto x = extension_search(cfg.points, norm, 2.0, 33, 1e-9);
    REQUIRE(x.has_value());
    auto pts = cfg.points;
    pts.push_back(*x);
    EquilateralReport rep = check_equilateral(pts, norm, 1e-8);
    CHECK(rep.pass);
}

TEST_CASE("parallel and serial grid scans return the same point") {
    NormSpec norm = NormSpec::weighted_linf({1, 1, 1});
    std::vector<Vector> pts = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    auto a = extension_search(pts, norm, 2.0, 25, 1e-9);
    auto b = extension_search_serial(pts, norm, 2.0, 25, 1e-9);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(*a == *b);
}

TEST_CASE("extension_search preconditions") {
    NormSpec norm = NormSpec::weighted_linf({1, 1});
    // Not equilateral.
    CHECK_THROWS_AS(extension_search({{0, 0}, {1, 0}, {5, 0}}, norm, 2.0, 9, 1e-9), DomainError);
    NormSpec norm5 = NormSpec::weighted_linf({1, 1, 1, 1, 1});
    CHECK_THROWS_AS(
        extension_search({{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}}, norm5, 2.0, 9, 1e-9), DomainError);
}

TEST_CASE("certify_run passes a valid weighted l_inf run") {
    NormSpec norm = NormSpec::weighted_linf({1.0, 2.0 / 3.0});
    auto [cfg, report] = solve_equilateral_linf(norm, 2);
    auto cert = certificate_exact(norm, Reference::linf());
    CertifySummary s = certify_run(norm, cfg, cert, report.residual);
    CHECK(s.pass);
}

TEST_CASE("certify_run fails on a forged certificate") {
    // True distortion 2, forged claim 3/2: the sandwich check must catch it.
    NormSpec norm = NormSpec::weighted_linf({1.0, 0.5});
    PointConfig cfg;
    cfg.points = {{-1, 0}, {0, -1}, {0, 0}};
    SandwichCertificate forged{Reference::linf(), 1.5, true};
    CertifySummary s = certify_run(norm, cfg, forged, 1e-12);
    CHECK(!s.sandwich_ok);
    CHECK(!s.pass);
}

TEST_CASE("certify_run passes an exact l_2 run including condition (*)") {
    NormSpec norm = NormSpec::weighted_lp(2.0, {1, 1, 1});
    auto [cfg, report, params] = solve_equilateral_lp(norm, 2.0, 3);
    auto cert = certificate_exact(norm, Reference::lp(2.0));
    CertifySummary s = certify_run(norm, cfg, cert, report.residual, params);
    CHECK(s.condition_ok);
    CHECK(s.pass);
}

TEST_CASE("verifier agrees with the construction's internal identity") {
    NormSpec norm = NormSpec::weighted_linf({1.0, 0.75, 0.9});
    auto [cfg, report] = solve_equilateral_linf(norm, 3);
    REQUIRE(report.converged);
    EquilateralReport rep = check_equilateral(cfg.points, norm, 1e-9);
    // The identity says every distance is within report.residual of 1.
    CHECK(std::abs(rep.common_distance - 1.0) <= report.residual + 1e-12);
    CHECK(rep.max_deviation <= 2.0 * report.residual + 1e-12);
}
