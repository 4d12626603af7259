#include "setflow/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace setflow::io {
namespace {

json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

[[noreturn]] void bad(const std::string& what) { throw DegenerateInput(what); }

}  // namespace

Body2D body_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type")) bad("body JSON needs a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    const int grid_m = j.value("grid_M", kDefaultGrid);

    if (type == "fourier") {
        const double h0 = j.at("H0").get<double>();
        std::vector<Complex> modes;
        for (const json& c : j.value("coeffs", json::array())) {
            if (!c.is_array() || c.size() != 2) bad("fourier coeffs must be [re, im] pairs");
            modes.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        const int degree = j.value("N", static_cast<int>(modes.size()));
        if (degree < static_cast<int>(modes.size()))
            bad("N is smaller than the number of coefficients");
        modes.resize(degree, Complex(0.0, 0.0));
        if (modes.empty()) modes.resize(kDefaultDegree, Complex(0.0, 0.0));
        return Body2D::from_fourier(h0, std::move(modes), grid_m);
    }
    if (type == "polygon") {
        std::vector<Vec2> vertices;
        for (const json& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 2) bad("polygon vertices must be [x, y] pairs");
            vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
        return Body2D::from_polygon(vertices, j.value("N", kDefaultDegree), grid_m);
    }
    if (type == "random") {
        return random_body(j.value("seed", std::uint64_t{1}),
                           j.value("N", kDefaultDegree), j.value("roughness", 0.1),
                           grid_m);
    }
    bad("unknown body type \"" + type + "\"");
}

json body_to_json(const Body2D& body) {
    json j;
    if (body.is_polygonal()) {
        j["type"] = "polygon";
        json verts = json::array();
        for (const Vec2& v : body.vertices()) verts.push_back(vec2_json(v));
        j["vertices"] = std::move(verts);
    } else {
        j["type"] = "fourier";
        j["H0"] = body.h0();
        json coeffs = json::array();
        for (const Complex& c : body.modes())
            coeffs.push_back(json::array({c.real(), c.imag()}));
        j["coeffs"] = std::move(coeffs);
    }
    j["N"] = body.degree();
    j["grid_M"] = body.grid_m();
    return j;
}

LinearOp2 op_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) bad("operator JSON needs a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rotation") {
        if (j.contains("angle")) return LinearOp2::rotation(j.at("angle").get<double>());
        if (j.contains("m")) return LinearOp2::rotation(2.0 * kPi / j.at("m").get<int>());
        bad("rotation needs \"angle\" or \"m\"");
    }
    if (kind == "reflection")
        return LinearOp2::reflection(j.value("axis_angle", 0.0));
    if (kind == "general") {
        const json& e = j.at("entries");
        Eigen::Matrix2d mat;
        mat << e.at(0).at(0).get<double>(), e.at(0).at(1).get<double>(),
            e.at(1).at(0).get<double>(), e.at(1).at(1).get<double>();
        return LinearOp2::general(mat);
    }
    bad("unknown operator kind \"" + kind + "\"");
}

json op_to_json(const LinearOp2& op) {
    json j;
    switch (op.kind()) {
        case LinearOp2::Kind::rotation:
            j["kind"] = "rotation";
            j["angle"] = op.angle();
            break;
        case LinearOp2::Kind::reflection:
            j["kind"] = "reflection";
            j["axis_angle"] = op.angle();
            break;
        case LinearOp2::Kind::general:
            j["kind"] = "general";
            j["entries"] = {{op.entries()(0, 0), op.entries()(0, 1)},
                            {op.entries()(1, 0), op.entries()(1, 1)}};
            break;
    }
    return j;
}

ExperimentConfig config_from_json(const json& j,
                                  std::optional<std::uint64_t> seed_override) {
    ExperimentConfig cfg;
    cfg.m = j.value("m", 4);
    if (j.contains("operator")) cfg.op = op_from_json(j.at("operator"));
    else cfg.op = LinearOp2::rotation(2.0 * kPi / cfg.m);

    json body = j.value("X0_star", json{{"type", "fourier"}, {"H0", 1.0}});
    if (seed_override && body.value("type", "") == "random")
        body["seed"] = *seed_override;
    cfg.x0_star = body_from_json(body);

    if (j.contains("perturbation")) {
        const json& p = j.at("perturbation");
        cfg.perturbation.modes = p.value("modes", std::vector<int>{});
        cfg.perturbation.amplitudes = p.value("amplitudes", std::vector<double>{});
        if (p.contains("seed"))
            cfg.perturbation.seed = p.at("seed").get<std::uint64_t>();
        if (seed_override) cfg.perturbation.seed = *seed_override;
    }

    cfg.horizon = j.value("horizon", 12.0);
    if (j.contains("sample_times"))
        cfg.sample_times = j.at("sample_times").get<std::vector<double>>();
    else if (j.contains("samples"))
        cfg.sample_times = default_sample_times(cfg.horizon, j.at("samples").get<int>());
    for (double t : cfg.sample_times) {
        if (t < 0.0 || t > cfg.horizon)
            bad("sample times must lie in [0, horizon]");
    }
    cfg.output_path = j.value("output", "");
    cfg.enforce_membership = j.value("enforce_membership", true);
    if (j.contains("ladder")) cfg.ladder = j.at("ladder").get<std::vector<double>>();
    return cfg;
}

json metric_report_json(const Body2D& x, const Body2D& y) {
    const MetricReport metric = shape_metric(x, y);
    const DeficitReport d = deficit(x, y);
    json j;
    j["rho"] = metric.rho;
    j["witness_translation"] = vec2_json(metric.witness_translation);
    j["hausdorff"] = hausdorff(x, y);
    j["deficit"] = {{"V1", d.V1}, {"VX", d.VX}, {"VY", d.VY}, {"delta", d.delta}};
    return j;
}

json spectrum_json(int m) {
    const ComparisonSystem sys = build_omega(m);
    json j;
    j["m"] = m;
    j["eigenvalues"] = spectrum(sys);
    j["formula"] = spectrum_formula(m);
    return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          bool mode_amplitudes) {
    os << "t,V,r,R,diam";
    const int degree = traj.bodies.empty() ? 0 : traj.bodies.front().degree();
    if (mode_amplitudes)
        for (int p = 1; p <= degree; ++p) os << ",abs_H" << p;
    os << "\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Body2D& b = traj.bodies[i];
        const RadiiReport radii = inradius_circumradius(b);
        os << traj.times[i] << ',' << area(b) << ',' << radii.inradius << ','
           << radii.circumradius << ',' << b.diameter();
        if (mode_amplitudes)
            for (int p = 1; p <= degree; ++p) os << ',' << std::abs(b.mode(p));
        os << "\n";
    }
}

void write_records_csv(std::ostream& os, const std::vector<StabilityRecord>& records) {
    os << "t,rho,delta,V,S_cross\n" << std::setprecision(17);
    for (const StabilityRecord& r : records)
        os << r.t << ',' << r.rho << ',' << r.delta << ',' << r.V << ','
           << r.S_cross << "\n";
}

json stability_summary_json(const StabilitySummary& s) {
    json j;
    j["ladder_rho0"] = s.ladder_rho0;
    j["ladder_sup_rho"] = s.ladder_sup_rho;
    j["scaling_exponent"] = s.scaling_exponent;
    j["conjugated"] = s.conjugated;
    double sup = 0.0;
    for (const StabilityRecord& r : s.records) sup = std::max(sup, r.rho);
    j["sup_rho"] = sup;
    return j;
}

json attraction_summary_json(const AttractionSummary& s) {
    json j;
    j["in_manifold"] = s.in_manifold;
    j["membership_residual"] = s.membership_residual;
    j["fitted_rate"] = s.fitted_rate;
    j["predicted_rate"] = s.predicted_rate;
    j["predicted_limit_rho"] = s.predicted_limit_rho;
    j["final_rho"] = s.final_rho;
    return j;
}

json probe_summary_json(const ProbeSummary& s) {
    json j;
    j["monotone_trend"] = s.monotone_trend;
    if (!s.records.empty()) {
        j["initial_rho"] = s.records.front().rho;
        j["final_rho"] = s.records.back().rho;
    }
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        bad("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

Body2D load_body_file(const std::string& path) { return body_from_json(load_json_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) bad("cannot open output file: " + path);
    out << text;
}

}  // namespace setflow::io
