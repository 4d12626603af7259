// setflow: simulate linear set differential equations on planar convex
// bodies and measure shape stability.
//
// Exit codes: 0 success, 2 invariant violation, 3 bad input.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "setflow/io.hpp"

namespace {

using setflow::io::json;

std::optional<std::uint64_t> seed_override_from_env() {
    const char* raw = std::getenv("SETFLOW_SEED");
    if (!raw) return std::nullopt;
    try {
        return std::stoull(raw);
    } catch (const std::exception&) {
        throw setflow::DegenerateInput("SETFLOW_SEED is not an unsigned integer");
    }
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) std::cout << text;
    else setflow::io::write_text_file(out_path, text);
}

int run(int argc, char** argv) {
    CLI::App app{"Linear set differential equations on convex bodies: "
                 "trajectories, shape metrics and stability experiments"};
    app.require_subcommand(1);

    // simulate ---------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "integrate one trajectory to CSV");
    std::string sim_body, sim_out, sim_integrator = "spectral";
    double sim_angle = 0.0, sim_tend = 1.0, sim_step = 1.0 / 256.0;
    double sim_reflection = std::numeric_limits<double>::quiet_NaN();
    int sim_m = 0, sim_samples = 9, sim_picard_iters = 20, sim_picard_q = 1024;
    bool sim_modes = false;
    simulate->add_option("--body", sim_body, "body JSON file")->required();
    simulate->add_option("--angle", sim_angle, "rotation angle (radians)");
    simulate->add_option("--m", sim_m, "rotation by 2*pi/m");
    simulate->add_option("--reflection-axis", sim_reflection,
                         "reflection axis angle (uses rk4/picard)");
    simulate->add_option("--t-end", sim_tend, "horizon");
    simulate->add_option("--samples", sim_samples, "number of output times");
    simulate->add_option("--integrator", sim_integrator, "spectral|rk4|picard");
    simulate->add_option("--step", sim_step, "RK4 step size");
    simulate->add_option("--picard-iterations", sim_picard_iters, "Picard iteration count");
    simulate->add_option("--picard-steps", sim_picard_q, "Picard quadrature steps");
    simulate->add_flag("--mode-amplitudes", sim_modes, "append per-mode |H_p| columns");
    simulate->add_option("--out", sim_out, "output CSV path")->required();

    // metric ------------------------------------------------------------
    auto* metric = app.add_subcommand("metric", "shape metric and deficit of two bodies");
    std::string met_x, met_y, met_out;
    metric->add_option("--x", met_x, "first body JSON file")->required();
    metric->add_option("--y", met_y, "second body JSON file")->required();
    metric->add_option("--out", met_out, "output JSON path (stdout when absent)");

    // spectrum ----------------------------------------------------------
    auto* spec = app.add_subcommand("spectrum", "comparison-matrix eigenvalues");
    int spec_m = 4;
    std::string spec_out;
    spec->add_option("--m", spec_m, "system order")->required();
    spec->add_option("--out", spec_out, "output JSON path (stdout when absent)");

    // closed-form -------------------------------------------------------
    auto* closed = app.add_subcommand("closed-form",
                                      "closed-form mixed-area evolution for a body pair");
    std::string cf_x, cf_xstar, cf_out;
    int cf_m = 4;
    std::vector<double> cf_times;
    closed->add_option("--m", cf_m, "rotation order (A = rotation by 2*pi/m)")->required();
    closed->add_option("--x", cf_x, "body JSON file")->required();
    closed->add_option("--xstar", cf_xstar, "program body JSON file")->required();
    closed->add_option("--t", cf_times, "evaluation times")->required();
    closed->add_option("--out", cf_out, "output JSON path (stdout when absent)");

    // experiment ---------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "stability/attraction/probe runs");
    std::string exp_kind, exp_config;
    experiment->add_option("kind", exp_kind, "stability|attraction|probe")->required();
    experiment->add_option("--config", exp_config, "experiment config JSON")->required();

    CLI11_PARSE(app, argc, argv);
    const std::optional<std::uint64_t> seed_override = seed_override_from_env();

    if (simulate->parsed()) {
        const setflow::Body2D body = setflow::io::load_body_file(sim_body);
        if (sim_m != 0) sim_angle = 2.0 * setflow::kPi / sim_m;
        const bool reflecting = !std::isnan(sim_reflection);
        const setflow::LinearOp2 op = reflecting
                                          ? setflow::LinearOp2::reflection(sim_reflection)
                                          : setflow::LinearOp2::rotation(sim_angle);
        std::vector<double> times = setflow::default_sample_times(sim_tend, sim_samples);
        setflow::Trajectory traj;
        if (sim_integrator == "spectral" && !reflecting) {
            traj = setflow::solve_spectral_trajectory(body, sim_angle, times);
        } else if (sim_integrator == "rk4" || (sim_integrator == "spectral" && reflecting)) {
            traj = setflow::solve_rk4(body, op, times, sim_step);
        } else if (sim_integrator == "picard") {
            setflow::Trajectory full = setflow::solve_picard(
                body, op, {sim_tend, sim_picard_iters, sim_picard_q});
            // Thin the quadrature grid down to the requested sample count.
            const std::size_t stride =
                std::max<std::size_t>(1, (full.times.size() - 1) / (sim_samples - 1));
            traj.integrator = full.integrator;
            for (std::size_t i = 0; i < full.times.size(); i += stride) {
                traj.times.push_back(full.times[i]);
                traj.bodies.push_back(full.bodies[i]);
            }
        } else {
            throw setflow::DegenerateInput("unknown integrator: " + sim_integrator);
        }
        std::ostringstream os;
        setflow::io::write_trajectory_csv(os, traj, sim_modes);
        setflow::io::write_text_file(sim_out, os.str());
        std::cout << "wrote " << traj.times.size() << " rows to " << sim_out << "\n";
        return 0;
    }

    if (metric->parsed()) {
        const setflow::Body2D x = setflow::io::load_body_file(met_x);
        const setflow::Body2D y = setflow::io::load_body_file(met_y);
        emit(setflow::io::metric_report_json(x, y), met_out);
        return 0;
    }

    if (spec->parsed()) {
        emit(setflow::io::spectrum_json(spec_m), spec_out);
        return 0;
    }

    if (closed->parsed()) {
        const setflow::Body2D x = setflow::io::load_body_file(cf_x);
        const setflow::Body2D xstar = setflow::io::load_body_file(cf_xstar);
        const setflow::LinearOp2 op = setflow::LinearOp2::rotation(2.0 * setflow::kPi / cf_m);
        const setflow::XiData data = setflow::xi_from_bodies(x, xstar, op, cf_m);
        const setflow::ComparisonSystem sys = setflow::build_omega(cf_m);
        json rows = json::array();
        for (double t : cf_times) {
            json row;
            row["t"] = t;
            row["closed_form"] = setflow::closed_form_S(cf_m, data.s0, data.cross, t);
            row["matrix_exponential"] = setflow::evolve_xi(sys, data.xi0, t)(0);
            rows.push_back(std::move(row));
        }
        json out;
        out["m"] = cf_m;
        out["S0"] = data.s0;
        out["asymptotic_coefficient"] = setflow::asymptotic_S(cf_m, data.s0, data.cross);
        out["rows"] = std::move(rows);
        emit(out, cf_out);
        return 0;
    }

    // experiment
    const json cfg_json = setflow::io::load_json_file(exp_config);
    const setflow::ExperimentConfig cfg =
        setflow::io::config_from_json(cfg_json, seed_override);
    const std::string prefix = cfg.output_path.empty() ? "experiment" : cfg.output_path;

    json summary;
    std::vector<setflow::StabilityRecord> records;
    if (exp_kind == "stability") {
        const setflow::StabilitySummary s = setflow::run_stability(cfg);
        summary = setflow::io::stability_summary_json(s);
        records = s.records;
    } else if (exp_kind == "attraction") {
        const setflow::AttractionSummary s = setflow::run_attraction(cfg);
        summary = setflow::io::attraction_summary_json(s);
        records = s.records;
    } else if (exp_kind == "probe") {
        const setflow::Body2D x0 = cfg.perturbation.modes.empty()
                                       ? cfg.x0_star
                                       : setflow::perturb(cfg.x0_star, cfg.perturbation);
        const std::vector<double> times =
            cfg.sample_times.empty() ? setflow::default_sample_times(cfg.horizon)
                                     : cfg.sample_times;
        const setflow::ProbeSummary s =
            setflow::run_hypothesis_probe(cfg.op.angle(), x0, times);
        summary = setflow::io::probe_summary_json(s);
        records = s.records;
    } else {
        throw setflow::DegenerateInput("unknown experiment kind: " + exp_kind);
    }
    summary["config"] = cfg_json;
    std::ostringstream os;
    setflow::io::write_records_csv(os, records);
    setflow::io::write_text_file(prefix + ".csv", os.str());
    setflow::io::write_text_file(prefix + ".json", summary.dump(2) + "\n");
    std::cout << "wrote " << prefix << ".csv and " << prefix << ".json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const setflow::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const setflow::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
