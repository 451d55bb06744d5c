#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eq/construct.hpp"
#include "eq/io.hpp"
#include "eq/radius.hpp"
#include "eq/verify.hpp"

using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 I/O or parse or domain error, 2 mathematical
// failure (non-convergence, verification fail), 3 theorem-hypothesis
// failure (certificate, normalization, box violation).
constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kMathFail = 2;
constexpr int kHypothesisFail = 3;

// --norm accepts a file path or inline JSON (starts with '{').
eq::NormSpec load_norm(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return eq::norm_from_json(json::parse(arg));
    std::ifstream in(arg);
    if (!in) throw eq::Error("cannot open norm file: " + arg);
    json j;
    in >> j;
    return eq::norm_from_json(j);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw eq::Error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw eq::Error("cannot open output file: " + path);
    out << text;
}

eq::SandwichCertificate certify(const eq::NormSpec& norm, const eq::Reference& ref,
                                std::uint64_t seed) {
    try {
        return eq::certificate_exact(norm, ref);
    } catch (const eq::UnsupportedFamily&) {
        return eq::certificate_sampled(norm, ref, 10000, seed);
    }
}

// Parses "5" or "3..6" (inclusive).
std::pair<int, int> parse_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) {
        int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run_construct(const std::string& space, double p, int dim, const std::string& norm_arg,
                  double tol, std::uint64_t seed, const std::string& out_path) {
    eq::NormSpec norm = load_norm(norm_arg);

    eq::PointConfig config;
    eq::SolveReport report;
    std::optional<eq::LpParams> params;
    eq::Reference ref = eq::Reference::linf();
    if (space == "linf") {
        std::tie(config, report) = eq::solve_equilateral_linf(norm, dim, tol, seed);
    } else {
        ref = eq::Reference::lp(p);
        eq::LpParams lp;
        std::tie(config, report, lp) = eq::solve_equilateral_lp(norm, p, dim, tol, seed);
        params = lp;
    }

    std::string points_text = eq::point_config_to_json_text(config);
    if (!out_path.empty())
        write_text(out_path, points_text);
    else
        std::cout << points_text;

    json out = {{"report", eq::solve_report_to_json(report)}};
    if (params) {
        out["params"] = {{"p", params->p},     {"n", params->n},     {"beta", params->beta},
                         {"gamma", params->gamma}, {"theta", params->theta}, {"R", params->R}};
    }

    eq::SandwichCertificate cert = certify(norm, ref, seed);
    eq::CertifySummary summary = eq::certify_run(norm, config, cert, report.residual, params);
    out["verified"] = summary.pass;
    out["max_deviation"] = summary.max_deviation;
    std::cout << out.dump(2) << "\n";

    if (!report.converged) return kMathFail;
    return summary.pass ? kOk : kMathFail;
}

int run_radius(double p, const std::string& n_range, const std::string& out_path,
               const std::string& format) {
    auto [n_lo, n_hi] = parse_range(n_range);
    if (n_hi < n_lo) throw eq::DomainError("empty n range");
    std::ostringstream table;
    json rows = json::array();
    table << "p,n,theta_star,R,asymptotic_estimate\n";
    for (int n = n_lo; n <= n_hi; ++n) {
        eq::RadiusResult r = eq::maximize_radius(p, n);
        if (format == "csv") {
            table << fmt17(r.p) << ',' << r.n << ',' << fmt17(r.theta_star) << ',' << fmt17(r.R)
                  << ',' << fmt17(r.asymptotic_estimate) << "\n";
        } else {
            rows.push_back({{"p", r.p},
                            {"n", r.n},
                            {"theta_star", r.theta_star},
                            {"R", r.R},
                            {"asymptotic_estimate", r.asymptotic_estimate}});
        }
    }
    std::string text = format == "csv" ? table.str() : rows.dump(2) + "\n";
    if (!out_path.empty())
        write_text(out_path, text);
    else
        std::cout << text;
    return kOk;
}

int run_verify(const std::string& points_path, const std::string& norm_arg, double tol) {
    eq::PointConfig config = eq::point_config_from_json(load_json_file(points_path));
    eq::NormSpec norm = load_norm(norm_arg);
    eq::EquilateralReport rep = eq::check_equilateral(config.points, norm, tol);
    std::cout << eq::equilateral_report_to_json(rep).dump(2) << "\n";
    return rep.pass ? kOk : kMathFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilateral point sets in normed spaces near l_inf^n / l_p^n"};
    app.require_subcommand(1);

    std::string space = "linf", norm_arg, out_path, format = "csv", n_range, points_path;
    double p = 2.0, tol = 1e-12;
    int dim = 3;
    std::uint64_t seed = 0x5eed;

    auto* construct = app.add_subcommand("construct", "Build an equilateral point set");
    construct->add_option("--space", space, "Construction path: linf or lp")
        ->check(CLI::IsMember({"linf", "lp"}));
    construct->add_option("--p", p, "Exponent for the lp path");
    construct->add_option("--dim", dim, "Dimension n")->required();
    construct->add_option("--norm", norm_arg, "NormSpec JSON file or inline JSON")->required();
    construct->add_option("--tol", tol, "Fixed-point residual tolerance");
    construct->add_option("--seed", seed, "Seed for sampled certificates");
    construct->add_option("--out", out_path, "Output path for the points JSON");

    auto* radius = app.add_subcommand("radius", "Tabulate the admissible radius R(p,n)");
    radius->add_option("--p", p, "Exponent p > 1")->required();
    radius->add_option("--n", n_range, "Dimension or range, e.g. 5 or 3..6")->required();
    radius->add_option("--out", out_path, "Output path for the table");
    radius->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify", "Check a point set for equilaterality");
    verify->add_option("--points", points_path, "PointConfig JSON file")->required();
    verify->add_option("--norm", norm_arg, "NormSpec JSON file or inline JSON")->required();
    verify->add_option("--tol", tol, "Deviation tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return run_construct(space, p, dim, norm_arg, tol, seed, out_path);
        if (radius->parsed()) return run_radius(p, n_range, out_path, format);
        return run_verify(points_path, norm_arg, tol);
    } catch (const eq::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kHypothesisFail;
    } catch (const eq::NormalizationViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kHypothesisFail;
    } catch (const eq::BoxViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kHypothesisFail;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
}
