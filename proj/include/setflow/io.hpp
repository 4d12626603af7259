#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "setflow/comparison.hpp"
#include "setflow/lab.hpp"

namespace setflow::io {

using json = nlohmann::json;

/// Body schema: {"type":"fourier","H0":r,"coeffs":[[re,im],...]} or
/// {"type":"polygon","vertices":[[x,y],...]}; optional "N" and "grid_M".
/// Config files may also use {"type":"random","seed":s,"roughness":r,...}.
Body2D body_from_json(const json& j);
json body_to_json(const Body2D& body);

LinearOp2 op_from_json(const json& j);
json op_to_json(const LinearOp2& op);

/// seed_override (from SETFLOW_SEED) replaces every seed in the config.
ExperimentConfig config_from_json(const json& j,
                                  std::optional<std::uint64_t> seed_override);

json metric_report_json(const Body2D& x, const Body2D& y);
json spectrum_json(int m);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          bool mode_amplitudes);
void write_records_csv(std::ostream& os, const std::vector<StabilityRecord>& records);

json stability_summary_json(const StabilitySummary& s);
json attraction_summary_json(const AttractionSummary& s);
json probe_summary_json(const ProbeSummary& s);

Body2D load_body_file(const std::string& path);
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace setflow::io
