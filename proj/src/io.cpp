#include "eq/io.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace eq {

using nlohmann::json;

namespace {

std::vector<double> doubles(const json& j) {
    if (!j.is_array()) throw DomainError("expected a JSON array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

std::vector<std::vector<double>> matrix(const json& j) {
    if (!j.is_array()) throw DomainError("expected a JSON array of rows");
    std::vector<std::vector<double>> out;
    out.reserve(j.size());
    for (const auto& row : j) out.push_back(doubles(row));
    return out;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

NormSpec norm_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "weighted_lp")
        return NormSpec::weighted_lp(j.at("p").get<double>(), doubles(j.at("weights")));
    if (kind == "weighted_linf") return NormSpec::weighted_linf(doubles(j.at("weights")));
    if (kind == "polytope") return NormSpec::polytope(matrix(j.at("functionals")));
    if (kind == "composed")
        return NormSpec::composed(matrix(j.at("matrix")), norm_from_json(j.at("base")));
    throw DomainError("unknown norm kind: " + kind);
}

json norm_to_json(const NormSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, WeightedLp>) {
                return {{"kind", "weighted_lp"}, {"p", s.p}, {"weights", s.weights}};
            } else if constexpr (std::is_same_v<T, WeightedLinf>) {
                return {{"kind", "weighted_linf"}, {"weights", s.weights}};
            } else if constexpr (std::is_same_v<T, PolytopeNorm>) {
                return {{"kind", "polytope"}, {"functionals", s.functionals}};
            } else {
                return {{"kind", "composed"}, {"matrix", s.matrix}, {"base", norm_to_json(*s.base)}};
            }
        },
        spec.value);
}

PointConfig point_config_from_json(const json& j) {
    PointConfig cfg;
    cfg.gamma = j.at("gamma").get<double>();
    for (const auto& row : j.at("points")) {
        cfg.points.push_back(doubles(row));
        require_finite(cfg.points.back());
    }
    return cfg;
}

std::string point_config_to_json_text(const PointConfig& config) {
    std::string out = "{\n  \"gamma\": " + fmt17(config.gamma) + ",\n  \"points\": [\n";
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        out += "    [";
        for (std::size_t k = 0; k < config.points[i].size(); ++k) {
            if (k) out += ", ";
            out += fmt17(config.points[i][k]);
        }
        out += i + 1 < config.points.size() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

json solve_report_to_json(const SolveReport& report) {
    return {{"converged", report.converged},
            {"iterations", report.iterations},
            {"residual", report.residual},
            {"method", report.method == SolveMethod::picard ? "picard" : "anderson"},
            {"damping", report.damping}};
}

json equilateral_report_to_json(const EquilateralReport& report) {
    return {{"m", report.m},
            {"common_distance", report.common_distance},
            {"max_deviation", report.max_deviation},
            {"tolerance", report.tolerance},
            {"pass", report.pass}};
}

}  // namespace eq
