#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setflow/body.hpp"
#include "setflow/flow.hpp"
#include "setflow/functionals.hpp"

namespace setflow {

/// Random convex body: unit mean support plus modes p = 2..N with amplitude
/// roughness/p^2 * U[-1,1] per component, rejection-resampled until the
/// curvature invariant holds. Deterministic per seed.
Body2D random_body(std::uint64_t seed, int degree, double roughness,
                   int grid_m = kDefaultGrid);

struct Membership {
    bool member = false;
    double residual = 0.0;
};

/// Minkowski sum of the m rotated copies A^p X, p = 0..m-1.
Body2D rotational_sum(const Body2D& x0, const LinearOp2& a, int m);

/// X0 belongs to the attraction manifold of X0* iff the rotational sums land
/// in the same homothety orbit; the residual is their shape-metric distance.
Membership membership_in_M(const Body2D& x0, const Body2D& x0_star,
                           const LinearOp2& a, int m, double tol = 1e-8);

/// Coefficient differences |c_p(X0) - c_p(X0*)| at p = 0, m, 2m, ... <= N;
/// all below tolerance exactly when membership_in_M holds for
/// perturbation-generated pairs.
std::vector<double> fourier_condition_check(const Body2D& x0,
                                            const Body2D& x0_star, int m);

struct PerturbationSpec {
    std::vector<int> modes;
    std::vector<double> amplitudes;
    std::optional<std::uint64_t> seed;  // randomizes phases when present
};

/// Adds amplitude * e^{i phase} to each listed coefficient.
Body2D perturb(const Body2D& base, const PerturbationSpec& spec);

struct ExperimentConfig {
    int m = 4;
    LinearOp2 op = LinearOp2::rotation(0.5 * kPi);
    Body2D x0_star = Body2D::disk(1.0);
    PerturbationSpec perturbation;
    double horizon = 12.0;
    std::vector<double> sample_times;  // filled from horizon when empty
    std::string output_path;
    bool enforce_membership = true;
    std::vector<double> ladder = {1e-1, 1e-2, 1e-3, 1e-4};
};

struct StabilityRecord {
    double t = 0.0;
    double rho = 0.0;
    double delta = 0.0;
    double V = 0.0;
    double S_cross = 0.0;
};

struct StabilitySummary {
    std::vector<StabilityRecord> records;
    std::vector<double> ladder_rho0;
    std::vector<double> ladder_sup_rho;
    double scaling_exponent = 0.0;
    bool conjugated = false;
};

struct AttractionSummary {
    std::vector<StabilityRecord> records;
    bool in_manifold = false;
    double membership_residual = 0.0;
    double fitted_rate = 0.0;
    double predicted_rate = 0.0;
    /// Limit of rho(t) for non-member initial data: the shape distance of the
    /// rotational sums, which realize the leading e^{2t} mixed-area terms.
    double predicted_limit_rho = 0.0;
    double final_rho = 0.0;
    std::vector<double> mode_trace;  // normalized dominant-mode amplitude
};

struct ProbeSummary {
    std::vector<StabilityRecord> records;  // rho measured against the disk shape
    bool monotone_trend = false;
};

/// Simulates the perturbed and program trajectories with the same integrator
/// and reports rho(t), Delta(t) plus the rho_0-ladder stability proxy.
StabilitySummary run_stability(const ExperimentConfig& cfg);

/// Conditional attraction experiment for a periodic rotation; fits the decay
/// rate of the dominant perturbed mode against 1 - cos(p alpha).
AttractionSummary run_attraction(const ExperimentConfig& cfg);

/// Exploratory probe: shape distance to the disk under a generic (irrational)
/// rotation angle. Reports a trend, asserts nothing.
ProbeSummary run_hypothesis_probe(double alpha, const Body2D& x0,
                                  const std::vector<double>& times);

/// Least-squares decay rate of log(values) over the window values in [lo, hi].
double fit_decay_rate(const std::vector<double>& times,
                      const std::vector<double>& values, double lo = 1e-6,
                      double hi = 1e-2);

std::vector<double> default_sample_times(double horizon, int count = 61);

}  // namespace setflow
