// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Total runtime is a few seconds.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "setflow/comparison.hpp"
#include "setflow/flow.hpp"
#include "setflow/functionals.hpp"
#include "setflow/lab.hpp"
#include "setflow/rng.hpp"

using namespace setflow;

namespace {

constexpr int kDeg = 24;
constexpr int kGrid = 120;  // closed under the rotations used below

struct Outcome {
    bool pass = true;
    std::string detail;
};

double sup_distance(const Body2D& x, const Body2D& y) {
    double d = 0.0;
    for (int j = 0; j < x.grid_m(); ++j) {
        const double theta = x.grid_theta(j);
        d = std::max(d, std::abs(x.fourier_support(theta) - y.fourier_support(theta)));
    }
    return d;
}

std::vector<Vec2> unit_square() {
    return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

Outcome criterion_1_reflection() {
    Outcome out;
    const Interval1D x0(0.0, 1.0);
    const Interval1D x1 = solve_reflection_1d(x0, 1.0);
    double err = std::max(std::abs(x1.lo + std::sinh(1.0)),
                          std::abs(x1.hi - std::cosh(1.0)));
    double diam_err = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const Interval1D xt = solve_reflection_1d(x0, t);
        diam_err = std::max(diam_err,
                            std::abs(xt.diameter() / x0.diameter() - std::exp(t)));
    }
    out.pass = err <= 1e-12 && diam_err <= 1e-12;
    out.detail = "endpoint err " + fmt(err) + ", diam-ratio err " + fmt(diam_err);
    return out;
}

Outcome criterion_2_ball() {
    Outcome out;
    const Body2D ball = Body2D::disk(1.0, kDeg, kGrid);
    double spectral_err = 0.0;
    std::vector<double> times;
    for (int i = 1; i <= 12; ++i) times.push_back(0.25 * i);
    for (double t : times) {
        const double expected = std::exp(2.0 * t) * kPi;
        spectral_err = std::max(spectral_err,
                                std::abs(area(solve_spectral(ball, 0.9, t)) - expected) /
                                    expected);
    }
    const Trajectory rk =
        solve_rk4(ball, LinearOp2::rotation(2.0 * kPi / 4), times, 1.0 / 256.0);
    double rk_err = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = std::exp(2.0 * times[i]) * kPi;
        rk_err = std::max(rk_err, std::abs(area(rk.bodies[i]) - expected) / expected);
    }
    out.pass = spectral_err <= 1e-8 && rk_err <= 1e-6;
    out.detail = "spectral rel err " + fmt(spectral_err) + " (tol 1e-8), rk4 " +
                 fmt(rk_err) + " (tol 1e-6)";
    return out;
}

Outcome criterion_3_spectrum() {
    Outcome out;
    double worst = 0.0;
    for (int m = 3; m <= 12; ++m) {
        const std::vector<double> got = spectrum(build_omega(m));
        const std::vector<double> expected = spectrum_formula(m);
        if (got.size() != expected.size()) {
            out.pass = false;
            out.detail = "eigenvalue count mismatch at m = " + std::to_string(m);
            return out;
        }
        for (std::size_t i = 0; i < got.size(); ++i)
            worst = std::max(worst, std::abs(got[i] - expected[i]));
    }
    out.pass = worst <= 1e-9;
    out.detail = "max |eig - 2cos(2 pi q/m)| = " + fmt(worst) + " over m = 3..12";
    return out;
}

Outcome criterion_4_closed_form() {
    Outcome out;
    double expm_err = 0.0, geo_err = 0.0;
    int pair_index = 0;
    for (int m : {3, 4, 5, 6}) {
        const LinearOp2 op = LinearOp2::rotation(2.0 * kPi / m);
        const ComparisonSystem sys = build_omega(m);
        for (int k = 0; k < 5; ++k, ++pair_index) {
            const Body2D x0 = random_body(9000 + pair_index, kDeg, 0.3, kGrid);
            const Body2D x0s = random_body(9500 + pair_index, kDeg, 0.3, kGrid);
            const XiData data = xi_from_bodies(x0, x0s, op, m);
            for (double t : {0.5, 1.0, 2.0, 3.0}) {
                const double closed = closed_form_S(m, data.s0, data.cross, t);
                const double via_expm = evolve_xi(sys, data.xi0, t)(0);
                expm_err = std::max(expm_err,
                                    std::abs(closed - via_expm) / std::abs(via_expm));
                const double measured =
                    mixed_area(solve_spectral(x0, op.angle(), t),
                               solve_spectral(x0s, op.angle(), t));
                geo_err = std::max(geo_err, std::abs(closed - measured) / measured);
            }
        }
    }
    // Even-m leading-factor resolution: the cross-mixed-area reading matches
    // the matrix exponential; the volume reading does not. Scaling one body
    // separates V[X0] from S[X0, X0*] so the two readings differ by O(1).
    const Body2D a =
        scale_translate(random_body(77, kDeg, 0.3, kGrid), 2.0, Vec2::Zero());
    const Body2D b = random_body(78, kDeg, 0.2, kGrid);
    const LinearOp2 op4 = LinearOp2::rotation(2.0 * kPi / 4);
    const XiData data4 = xi_from_bodies(a, b, op4, 4);
    const double oracle = evolve_xi(build_omega(4), data4.xi0, 1.0)(0);
    const double cross_reading =
        std::abs(closed_form_S(4, data4.s0, data4.cross, 1.0) - oracle) / oracle;
    const double volume_reading =
        std::abs(closed_form_S(4, area(a), data4.cross, 1.0) - oracle) / oracle;

    out.pass = expm_err <= 1e-6 && geo_err <= 1e-4 && cross_reading <= 1e-6 &&
               volume_reading > 1e-2;
    out.detail = "closed-form vs expm " + fmt(expm_err) +
                 " (tol 1e-6), vs simulation " + fmt(geo_err) +
                 " (tol 1e-4); even-m factor: cross reading err " +
                 fmt(cross_reading) + ", volume reading err " + fmt(volume_reading);
    return out;
}

Outcome criterion_5_volume_bounds() {
    Outcome out;
    double worst_low = std::numeric_limits<double>::infinity();
    double worst_high = std::numeric_limits<double>::infinity();
    int index = 0;
    bool ok = true;
    for (int m : {3, 4, 6}) {
        const LinearOp2 op = LinearOp2::rotation(2.0 * kPi / m);
        const int runs = m == 4 ? 34 : 33;
        for (int k = 0; k < runs; ++k, ++index) {
            const Body2D x0 = random_body(20000 + index, kDeg, 0.3, kGrid);
            const double v0 = area(x0);
            double m_bound = 0.0;
            for (int p = 0; p < m; ++p)
                m_bound = std::max(m_bound, mixed_area(apply_op(op.power(p), x0), x0));
            for (double t : {0.75, 1.5, 3.0}) {
                const double v = area(solve_spectral(x0, op.angle(), t));
                const double e2t = std::exp(2.0 * t);
                const double lo_slack = v / (v0 * e2t) - 1.0;
                const double hi_slack = 1.0 - v / (m_bound * e2t);
                worst_low = std::min(worst_low, lo_slack);
                worst_high = std::min(worst_high, hi_slack);
                ok = ok && lo_slack >= -1e-8 && hi_slack >= -1e-8;
            }
        }
    }
    out.pass = ok;
    out.detail = "100 trajectories; min slack lower " + fmt(worst_low) +
                 ", upper " + fmt(worst_high) + " (allowed -1e-8)";
    return out;
}

Outcome criterion_6_support_bounds() {
    Outcome out;
    double worst = std::numeric_limits<double>::infinity();
    int index = 0;
    bool ok = true;
    for (int m : {3, 4, 6}) {
        const int runs = m == 4 ? 17 : 17;
        for (int k = 0; k < runs; ++k, ++index) {
            const Body2D raw = random_body(30000 + index, kDeg, 0.3, kGrid);
            const RadiiReport rad = inradius_circumradius(raw);
            const Body2D x0 = scale_translate(raw, 1.0, -rad.incenter);
            double r0 = std::numeric_limits<double>::infinity(), big_r0 = 0.0;
            for (int j = 0; j < kGrid; ++j) {
                const double h = x0.fourier_support(x0.grid_theta(j));
                r0 = std::min(r0, h);
                big_r0 = std::max(big_r0, h);
            }
            for (double t : {1.0, 3.0}) {
                const Body2D xt = solve_spectral(x0, 2.0 * kPi / m, t);
                const double et = std::exp(t);
                for (int j = 0; j < kGrid; ++j) {
                    const double h = xt.fourier_support(xt.grid_theta(j));
                    const double lo = h / (et * r0) - 1.0;
                    const double hi = 1.0 - h / (et * big_r0);
                    worst = std::min(worst, std::min(lo, hi));
                    ok = ok && lo >= -1e-9 && hi >= -1e-9;
                }
            }
        }
    }
    out.pass = ok;
    out.detail = "51 trajectories, all grid directions; min slack " + fmt(worst) +
                 " (allowed -1e-9)";
    return out;
}

Outcome criterion_7_upper_bound() {
    Outcome out;
    double worst_margin = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int k = 0; k < 200; ++k) {
        const Body2D x = normalize(random_body(40000 + k, kDeg, 0.35, kGrid)).body;
        const Body2D y = normalize(random_body(41000 + k, kDeg, 0.35, kGrid)).body;
        const double rho = shape_metric(x, y).rho;
        const double delta = deficit(x, y).delta;
        const double big_r = std::max(inradius_circumradius(x).circumradius,
                                      inradius_circumradius(y).circumradius);
        const double margin = kPi * big_r * rho - delta;
        worst_margin = std::min(worst_margin, margin);
        ok = ok && margin >= -1e-10;
    }
    out.pass = ok;
    out.detail = "200 normalized pairs; min (pi R rho - Delta) = " + fmt(worst_margin) +
                 " (allowed -1e-10)";
    return out;
}

Outcome criterion_8_deficit_identities() {
    Outcome out;
    Rng rng(314159);
    double homothet_worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Body2D x = random_body(50000 + k, kDeg, 0.3, kGrid);
        const double lambda = rng.next_in(0.1, 10.0);
        const Vec2 b(rng.next_in(-3, 3), rng.next_in(-3, 3));
        homothet_worst = std::max(homothet_worst,
                                  std::abs(deficit(x, scale_translate(x, lambda, b)).delta));
    }

    const double square_disk =
        deficit(Body2D::from_polygon(unit_square()), Body2D::disk(1.0)).delta;
    const double square_err = std::abs(square_disk - (4.0 / kPi - 1.0));

    double bm_worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Body2D x = random_body(60000 + k, kDeg, 0.35, kGrid);
        const Body2D y = random_body(61000 + k, kDeg, 0.35, kGrid);
        const double s = mixed_area(x, y);
        const double vv = area(x) * area(y);
        bm_worst = std::max(bm_worst, 1.0 - s * s / vv);
    }

    out.pass = homothet_worst <= 1e-9 && square_err <= 1e-9 && bm_worst <= 1e-10;
    out.detail = "max Delta[X, lX+b] = " + fmt(homothet_worst) +
                 " (tol 1e-9); |Delta(square,disk) - (4/pi-1)| = " + fmt(square_err) +
                 " (tol 1e-9); max BM violation " + fmt(bm_worst) + " (tol 1e-10)";
    return out;
}

Outcome criterion_9_shape_metric() {
    Outcome out;
    Rng rng(2718);
    double orbit_worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Body2D x = random_body(70000 + k, kDeg, 0.3, kGrid);
        const double lambda = rng.next_in(0.1, 10.0);
        const Vec2 b(rng.next_in(-3, 3), rng.next_in(-3, 3));
        orbit_worst = std::max(orbit_worst,
                               shape_metric(x, scale_translate(x, lambda, b)).rho);
    }

    const double square_disk =
        shape_metric(Body2D::from_polygon(unit_square()), Body2D::disk(1.0)).rho;
    const double square_err = std::abs(square_disk - 0.14290);

    double sym_worst = 0.0, tri_worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Body2D a = random_body(80000 + k, kDeg, 0.3, kGrid);
        const Body2D b = random_body(81000 + k, kDeg, 0.3, kGrid);
        const Body2D c = random_body(82000 + k, kDeg, 0.3, kGrid);
        const double ab = shape_metric(a, b).rho;
        const double ba = shape_metric(b, a).rho;
        const double bc = shape_metric(b, c).rho;
        const double ac = shape_metric(a, c).rho;
        sym_worst = std::max(sym_worst, std::abs(ab - ba));
        tri_worst = std::max(tri_worst, ac - ab - bc);
    }

    out.pass = orbit_worst <= 1e-9 && square_err <= 1e-3 && sym_worst <= 1e-8 &&
               tri_worst <= 1e-8;
    out.detail = "max rho on orbits " + fmt(orbit_worst) +
                 " (tol 1e-9); |rho(square,disk) - 0.14290| = " + fmt(square_err) +
                 " (tol 1e-3); symmetry " + fmt(sym_worst) + ", triangle excess " +
                 fmt(tri_worst) + " (tol 1e-8)";
    return out;
}

Outcome criterion_10_attraction() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.m = 4;
    cfg.op = LinearOp2::rotation(2.0 * kPi / 4);
    cfg.x0_star = Body2D::disk(1.0, kDeg, kGrid);
    cfg.horizon = 12.0;
    cfg.sample_times = default_sample_times(12.0, 49);

    cfg.perturbation = {{1}, {0.05}, std::nullopt};
    const AttractionSummary inside = run_attraction(cfg);
    const bool in_ok = inside.in_manifold && inside.final_rho < 1e-3 &&
                       std::abs(inside.fitted_rate - 1.0) <= 0.1;

    cfg.perturbation = {{4}, {0.01}, std::nullopt};
    cfg.enforce_membership = false;
    const AttractionSummary outside = run_attraction(cfg);
    const double limit_err =
        std::abs(outside.final_rho - outside.predicted_limit_rho) /
        outside.predicted_limit_rho;
    const bool out_ok = !outside.in_manifold && limit_err <= 0.05;

    // Same escape through a mixed perturbation whose transient really decays.
    cfg.perturbation = {{4, 2}, {0.01, 0.02}, std::nullopt};
    const AttractionSummary mixed = run_attraction(cfg);
    const double mixed_err =
        std::abs(mixed.final_rho - mixed.predicted_limit_rho) / mixed.predicted_limit_rho;
    const bool mixed_ok = !mixed.in_manifold && mixed_err <= 0.05;

    out.pass = in_ok && out_ok && mixed_ok;
    out.detail = "in-manifold (p,m)=(1,4): rho(12) = " + fmt(inside.final_rho) +
                 " (tol 1e-3), fitted rate " + fmt(inside.fitted_rate) +
                 " vs 1; escape p=4: |rho(12)/limit - 1| = " + fmt(limit_err) +
                 ", mixed p={4,2}: " + fmt(mixed_err) + " (tol 5e-2)";
    return out;
}

Outcome criterion_11_stability_proxy() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.m = 4;
    cfg.op = LinearOp2::rotation(2.0 * kPi / 4);
    cfg.x0_star = random_body(90210, kDeg, 0.05, kGrid);
    cfg.perturbation = {{2}, {0.01}, std::nullopt};
    cfg.horizon = 10.0;
    cfg.sample_times = default_sample_times(10.0, 41);
    const StabilitySummary s = run_stability(cfg);

    bool monotone = true;
    for (std::size_t i = 1; i < s.ladder_sup_rho.size(); ++i)
        monotone = monotone && s.ladder_sup_rho[i] <= s.ladder_sup_rho[i - 1] * (1.0 + 1e-9);
    out.pass = monotone && s.scaling_exponent >= 0.20;
    std::ostringstream os;
    os << "sup rho ladder:";
    for (double v : s.ladder_sup_rho) os << " " << fmt(v);
    os << "; exponent " << s.scaling_exponent << " (needs >= 0.20)";
    out.detail = os.str();
    return out;
}

Outcome criterion_12_integrator_triangle() {
    Outcome out;
    const double alpha = 2.0 * kPi / 4;
    const LinearOp2 op = LinearOp2::rotation(alpha);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Body2D x0 = random_body(95000 + k, kDeg, 0.3, kGrid);
        const Body2D a = solve_spectral(x0, alpha, 1.0);
        const Body2D b = solve_rk4(x0, op, {1.0}, 1.0 / 256.0).bodies[0];
        const Body2D c = solve_picard(x0, op, {1.0, 20, 1024}).bodies.back();
        worst = std::max({worst, sup_distance(a, b), sup_distance(a, c),
                          sup_distance(b, c)});
    }
    out.pass = worst <= 1e-4;
    out.detail = "20 bodies; max pairwise sup distance " + fmt(worst) + " (tol 1e-4)";
    return out;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries = {
        {"1D reflection closed form and diameter growth", criterion_1_reflection},
        {"ball trajectory volume e^{2t} pi (spectral and RK4)", criterion_2_ball},
        {"comparison-matrix spectrum 2 cos(2 pi q/m), m = 3..12", criterion_3_spectrum},
        {"closed-form mixed area vs expm and vs simulation", criterion_4_closed_form},
        {"volume bounds V0 e^{2t} <= V(t) <= M0 e^{2t}", criterion_5_volume_bounds},
        {"support bounds e^t r <= H <= e^t R from the incenter", criterion_6_support_bounds},
        {"deficit upper bound Delta <= pi R rho", criterion_7_upper_bound},
        {"deficit identities and Brunn-Minkowski positivity", criterion_8_deficit_identities},
        {"shape metric: orbits, square-disk value, metric axioms", criterion_9_shape_metric},
        {"conditional attraction: decay rate and escape limit", criterion_10_attraction},
        {"stability proxy: rho0 ladder monotone, exponent >= 0.20", criterion_11_stability_proxy},
        {"integrator triangle at t = 1", criterion_12_integrator_triangle},
    };

    int failures = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        Outcome out;
        try {
            out = entries[i].run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("[%s] %2zu. %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                    entries[i].name, out.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
                entries.size());
    return failures == 0 ? 0 : 1;
}
