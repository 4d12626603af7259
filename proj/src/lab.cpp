#include "setflow/lab.hpp"

#include <algorithm>
#include <cmath>

#include "setflow/rng.hpp"

namespace setflow {
namespace {

StabilityRecord measure(double t, const Body2D& x, const Body2D& x_star) {
    StabilityRecord rec;
    rec.t = t;
    rec.rho = shape_metric(x, x_star).rho;
    rec.delta = deficit(x, x_star).delta;
    rec.V = area(x);
    rec.S_cross = mixed_area(x, x_star);
    return rec;
}

std::vector<StabilityRecord> simulate_pair(const Body2D& x0, const Body2D& x0_star,
                                           const LinearOp2& op,
                                           const std::vector<double>& times) {
    std::vector<StabilityRecord> records;
    records.reserve(times.size());
    if (op.kind() == LinearOp2::Kind::rotation) {
        for (double t : times)
            records.push_back(measure(t, solve_spectral(x0, op.angle(), t),
                                      solve_spectral(x0_star, op.angle(), t)));
    } else {
        // Program and perturbed solutions share the integrator so that any
        // discretization bias cancels in rho(t).
        const Trajectory a = solve_rk4(x0, op, times);
        const Trajectory b = solve_rk4(x0_star, op, times);
        for (std::size_t i = 0; i < times.size(); ++i)
            records.push_back(measure(times[i], a.bodies[i], b.bodies[i]));
    }
    return records;
}

double sup_rho(const std::vector<StabilityRecord>& records) {
    double s = 0.0;
    for (const StabilityRecord& r : records) s = std::max(s, r.rho);
    return s;
}

PerturbationSpec scaled(const PerturbationSpec& spec, double factor) {
    PerturbationSpec out = spec;
    for (double& a : out.amplitudes) a *= factor;
    return out;
}

}  // namespace

std::vector<double> default_sample_times(double horizon, int count) {
    std::vector<double> times(count);
    for (int i = 0; i < count; ++i) times[i] = horizon * i / (count - 1);
    return times;
}

Body2D random_body(std::uint64_t seed, int degree, double roughness, int grid_m) {
    if (roughness < 0.0) throw DegenerateInput("roughness must be >= 0");
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // Draw the curvature modes at amplitude roughness/p^2: the total dip
        // is then at most 2*sqrt(2)*roughness*(pi^2/6 - 1) < 1 for roughness
        // up to ~0.5, so curvature positivity is guaranteed by the amplitude
        // bound (resampling stays as a safety net).
        std::vector<Complex> modes(degree, Complex(0.0, 0.0));
        for (int p = 2; p <= degree; ++p) {
            const double amp = roughness / (static_cast<double>(p) * p);
            const Complex curvature_mode(amp * rng.next_signed(),
                                         amp * rng.next_signed());
            modes[p - 1] = curvature_mode / (1.0 - static_cast<double>(p) * p);
        }
        Body2D body = Body2D::raw(1.0, std::move(modes), grid_m);
        if (body.is_convex()) return body;
    }
    throw GenerationFailed("random_body: no convex sample after 1000 rejections");
}

Body2D rotational_sum(const Body2D& x0, const LinearOp2& a, int m) {
    Body2D acc = x0;
    for (int p = 1; p < m; ++p) acc = minkowski_sum(acc, apply_op(a.power(p), x0));
    return acc;
}

Membership membership_in_M(const Body2D& x0, const Body2D& x0_star,
                           const LinearOp2& a, int m, double tol) {
    if (m < 1) throw BadOrder("membership_in_M needs m >= 1");
    const Eigen::Matrix2d power = a.power(m).entries();
    if ((power - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw NotPeriodic("membership_in_M requires A^m = I");
    const Body2D sum_x = rotational_sum(x0, a, m);
    const Body2D sum_star = rotational_sum(x0_star, a, m);
    const double residual = shape_metric(sum_x, sum_star).rho;
    return {residual <= tol, residual};
}

std::vector<double> fourier_condition_check(const Body2D& x0, const Body2D& x0_star,
                                            int m) {
    if (m < 1) throw BadOrder("fourier_condition_check needs m >= 1");
    if (!x0.same_grid(x0_star))
        throw GridMismatch("fourier_condition_check: bodies live on different grids");
    std::vector<double> residuals;
    for (int p = 0; p <= x0.degree(); p += m)
        residuals.push_back(std::abs(x0.mode(p) - x0_star.mode(p)));
    return residuals;
}

Body2D perturb(const Body2D& base, const PerturbationSpec& spec) {
    if (spec.modes.size() != spec.amplitudes.size())
        throw DegenerateInput("perturbation: modes/amplitudes size mismatch");
    std::vector<Complex> modes(base.modes());
    Rng rng(spec.seed.value_or(0));
    for (std::size_t i = 0; i < spec.modes.size(); ++i) {
        const int p = spec.modes[i];
        if (p < 1 || p > base.degree())
            throw DegenerateInput("perturbation mode outside 1..N");
        const double phase = spec.seed ? rng.next_in(0.0, 2.0 * kPi) : 0.0;
        modes[p - 1] += spec.amplitudes[i] * std::exp(Complex(0.0, phase));
    }
    Body2D out = Body2D::raw(base.h0(), std::move(modes), base.grid_m());
    if (!out.is_convex())
        throw DegenerateInput("perturbation amplitude breaks the convexity invariant");
    return out;
}

StabilitySummary run_stability(const ExperimentConfig& cfg) {
    StabilitySummary summary;

    LinearOp2 op = cfg.op;
    Body2D x0_star = cfg.x0_star;
    if (!op.is_orthogonal(1e-10)) {
        // Stable operators are handled in conjugated coordinates Y = T^-1 X.
        const Conjugation conj = conjugate_to_orthogonal(op);
        x0_star = apply_op(conj.T.inverse(), x0_star);
        op = conj.A1;
        summary.conjugated = true;
    }

    const std::vector<double> times =
        cfg.sample_times.empty() ? default_sample_times(cfg.horizon) : cfg.sample_times;

    const bool has_pert = !cfg.perturbation.modes.empty();
    const Body2D x0 = has_pert ? perturb(x0_star, cfg.perturbation) : x0_star;
    summary.records = simulate_pair(x0, x0_star, op, times);

    if (has_pert) {
        for (double rho0 : cfg.ladder) {
            // Scale the perturbation direction until rho(X0, X0*) hits rho0;
            // rho is near-linear in the amplitude, so a couple of fixed-point
            // corrections suffice.
            double factor = 1.0;
            Body2D candidate = x0;
            for (int it = 0; it < 3; ++it) {
                candidate = perturb(x0_star, scaled(cfg.perturbation, factor));
                const double measured = shape_metric(candidate, x0_star).rho;
                if (measured <= 0.0) break;
                factor *= rho0 / measured;
            }
            candidate = perturb(x0_star, scaled(cfg.perturbation, factor));
            summary.ladder_rho0.push_back(shape_metric(candidate, x0_star).rho);
            summary.ladder_sup_rho.push_back(
                sup_rho(simulate_pair(candidate, x0_star, op, times)));
        }
        // Fitted scaling exponent of sup rho against rho0 (log-log slope).
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < summary.ladder_rho0.size(); ++i) {
            if (summary.ladder_rho0[i] <= 0.0 || summary.ladder_sup_rho[i] <= 0.0)
                continue;
            const double lx = std::log(summary.ladder_rho0[i]);
            const double ly = std::log(summary.ladder_sup_rho[i]);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++n;
        }
        if (n >= 2) summary.scaling_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return summary;
}

AttractionSummary run_attraction(const ExperimentConfig& cfg) {
    if (cfg.op.kind() != LinearOp2::Kind::rotation)
        throw NotRotation("run_attraction requires a rotation operator");
    AttractionSummary summary;

    const Body2D x0 = cfg.perturbation.modes.empty()
                          ? cfg.x0_star
                          : perturb(cfg.x0_star, cfg.perturbation);
    const Membership membership = membership_in_M(x0, cfg.x0_star, cfg.op, cfg.m);
    summary.in_manifold = membership.member;
    summary.membership_residual = membership.residual;
    summary.predicted_limit_rho = membership.residual;
    if (!membership.member && cfg.enforce_membership)
        throw NotInManifold("initial body is outside the attraction manifold");

    const std::vector<double> times =
        cfg.sample_times.empty() ? default_sample_times(cfg.horizon) : cfg.sample_times;
    summary.records = simulate_pair(x0, cfg.x0_star, cfg.op, times);
    summary.final_rho = summary.records.empty() ? 0.0 : summary.records.back().rho;

    if (!cfg.perturbation.modes.empty()) {
        const int p = cfg.perturbation.modes.front();
        summary.predicted_rate = 1.0 - std::cos(p * cfg.op.angle());
        summary.mode_trace.reserve(times.size());
        for (double t : times) {
            const Body2D xt = solve_spectral(x0, cfg.op.angle(), t);
            const Body2D st = solve_spectral(cfg.x0_star, cfg.op.angle(), t);
            summary.mode_trace.push_back(std::abs(xt.mode(p) - st.mode(p)) /
                                         std::sqrt(area(st)));
        }
        summary.fitted_rate = fit_decay_rate(times, summary.mode_trace);
    }
    return summary;
}

ProbeSummary run_hypothesis_probe(double alpha, const Body2D& x0,
                                  const std::vector<double>& times) {
    // A rational angle alpha = 2 pi k / q keeps some mode from decaying; the
    // probe is meant for generic angles, so flag near-rational input.
    for (int q = 1; q <= 128; ++q) {
        const double turns = q * alpha / (2.0 * kPi);
        if (std::abs(turns - std::round(turns)) < 1e-9 && std::round(turns) != 0.0)
            throw DegenerateInput("probe angle is a rational multiple of 2*pi");
    }
    ProbeSummary summary;
    const Body2D ball = Body2D::disk(1.0, x0.degree(), x0.grid_m());
    for (double t : times) {
        const Body2D xt = solve_spectral(x0, alpha, t);
        StabilityRecord rec;
        rec.t = t;
        rec.rho = shape_metric(xt, ball).rho;
        rec.delta = deficit(xt, ball).delta;
        rec.V = area(xt);
        rec.S_cross = mixed_area(xt, ball);
        summary.records.push_back(rec);
    }
    summary.monotone_trend = true;
    for (std::size_t i = 1; i < summary.records.size(); ++i) {
        if (summary.records[i].rho > summary.records[i - 1].rho * 1.05 + 1e-12)
            summary.monotone_trend = false;
    }
    return summary;
}

double fit_decay_rate(const std::vector<double>& times,
                      const std::vector<double>& values, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    auto accumulate = [&](double t, double v) {
        const double ly = std::log(v);
        sx += t; sy += ly; sxx += t * t; sxy += t * ly;
        ++n;
    };
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (values[i] >= lo && values[i] <= hi) accumulate(times[i], values[i]);
    }
    if (n < 2) {
        // Window empty: fall back to every positive sample.
        sx = sy = sxx = sxy = 0; n = 0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (values[i] > 0.0) accumulate(times[i], values[i]);
        }
    }
    if (n < 2) return 0.0;
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

}  // namespace setflow
