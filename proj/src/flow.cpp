#include "setflow/flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace setflow {

void Trajectory::validate() const {
    if (times.size() != bodies.size())
        throw InvariantError("trajectory: times/bodies size mismatch");
    double prev_diam = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1]))
            throw InvariantError("trajectory: times not strictly increasing");
        bodies[i].require_convex("trajectory step");
        const double d = bodies[i].diameter();
        if (d < prev_diam * (1.0 - 1e-9) - 1e-12)
            throw InvariantError("trajectory: diameter decreased along the flow");
        prev_diam = std::max(prev_diam, d);
    }
}

Body2D solve_spectral(const Body2D& x0, double alpha, double t) {
    if (t == 0.0) return x0;
    std::vector<Complex> modes(x0.degree());
    for (int p = 1; p <= x0.degree(); ++p) {
        const Complex growth = std::exp(t * std::exp(Complex(0.0, -p * alpha)));
        modes[p - 1] = growth * x0.mode(p);
    }
    Body2D out = Body2D::raw(std::exp(t) * x0.h0(), std::move(modes), x0.grid_m());
    out.require_convex("spectral step");
    return out;
}

Body2D solve_spectral(const Body2D& x0, const LinearOp2& a, double t) {
    if (a.kind() != LinearOp2::Kind::rotation) {
        // Accept matrices that are numerically rotations.
        const Eigen::Matrix2d& m = a.entries();
        if (!a.is_orthogonal(1e-12) || m.determinant() < 0.0)
            throw NotRotation("solve_spectral requires a rotation operator");
        return solve_spectral(x0, std::atan2(m(1, 0), m(0, 0)), t);
    }
    return solve_spectral(x0, a.angle(), t);
}

Trajectory solve_spectral_trajectory(const Body2D& x0, double alpha,
                                     const std::vector<double>& times) {
    Trajectory traj;
    traj.integrator = Trajectory::Integrator::spectral;
    traj.times = times;
    traj.bodies.reserve(times.size());
    for (double t : times) traj.bodies.push_back(solve_spectral(x0, alpha, t));
    traj.validate();
    return traj;
}

namespace detail {

std::vector<int> grid_permutation(const LinearOp2& a, int grid_m) {
    const Eigen::Matrix2d at = a.entries().transpose();
    const double dtheta = 2.0 * kPi / grid_m;
    std::vector<int> perm(grid_m);
    for (int j = 0; j < grid_m; ++j) {
        const Vec2 w = at * unit_dir(dtheta * j);
        const double psi = std::atan2(w.y(), w.x());
        const double idx = psi / dtheta;
        const double nearest = std::round(idx);
        if (std::abs(idx - nearest) > 1e-9)
            throw GridIncompatible(
                "operator does not permute the grid directions (choose grid_M "
                "divisible by the rotation order)");
        int k = static_cast<int>(nearest) % grid_m;
        if (k < 0) k += grid_m;
        perm[j] = k;
    }
    return perm;
}

Body2D body_from_samples(const std::vector<double>& samples, int degree, int grid_m) {
    // Alias-free DFT: samples of a trig polynomial of degree <= N on
    // grid_m >= 2N+2 points determine the coefficients exactly.
    std::vector<Complex> modes(degree);
    double h0 = 0.0;
    for (int j = 0; j < grid_m; ++j) h0 += samples[j];
    h0 /= grid_m;
    for (int p = 1; p <= degree; ++p) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < grid_m; ++j) {
            const double theta = 2.0 * kPi * j * p / grid_m;
            acc += samples[j] * Complex(std::cos(theta), -std::sin(theta));
        }
        modes[p - 1] = acc / static_cast<double>(grid_m);
    }
    return Body2D::raw(h0, std::move(modes), grid_m);
}

}  // namespace detail

namespace {

std::vector<double> permuted(const std::vector<double>& h, const std::vector<int>& perm) {
    std::vector<double> out(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) out[j] = h[perm[j]];
    return out;
}

void check_orthogonal(const LinearOp2& a, const char* who) {
    if (!a.is_orthogonal(1e-10)) {
        std::ostringstream os;
        os << who << " requires an orthogonal operator";
        throw NotStableOperator(os.str());
    }
}

}  // namespace

Trajectory solve_rk4(const Body2D& x0, const LinearOp2& a,
                     const std::vector<double>& t_grid, double step) {
    check_orthogonal(a, "solve_rk4");
    if (step <= 0.0) throw NegativeTime("solve_rk4: step must be positive");
    const std::vector<int> perm = detail::grid_permutation(a, x0.grid_m());
    const int m = x0.grid_m();

    std::vector<double> h = x0.fourier_support_samples();
    double t = 0.0;

    Trajectory traj;
    traj.integrator = Trajectory::Integrator::rk4;
    traj.times = t_grid;
    traj.bodies.reserve(t_grid.size());

    for (double target : t_grid) {
        if (target < t) throw NegativeTime("solve_rk4: output times must be nondecreasing");
        const double span = target - t;
        const int n = std::max(1, static_cast<int>(std::ceil(span / step)));
        const double hstep = span / n;
        for (int s = 0; s < n && span > 0.0; ++s) {
            const std::vector<double> k1 = permuted(h, perm);
            std::vector<double> tmp(m);
            for (int j = 0; j < m; ++j) tmp[j] = h[j] + 0.5 * hstep * k1[j];
            const std::vector<double> k2 = permuted(tmp, perm);
            for (int j = 0; j < m; ++j) tmp[j] = h[j] + 0.5 * hstep * k2[j];
            const std::vector<double> k3 = permuted(tmp, perm);
            for (int j = 0; j < m; ++j) tmp[j] = h[j] + hstep * k3[j];
            const std::vector<double> k4 = permuted(tmp, perm);
            for (int j = 0; j < m; ++j)
                h[j] += hstep / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        t = target;
        traj.bodies.push_back(detail::body_from_samples(h, x0.degree(), m));
    }
    traj.validate();
    return traj;
}

Trajectory solve_picard(const Body2D& x0, const LinearOp2& a, const PicardConfig& cfg) {
    if (!(cfg.horizon > 0.0)) throw NegativeTime("picard: horizon must be positive");
    if (cfg.m_max < 1) throw DegenerateInput("picard: m_max must be >= 1");
    if (cfg.quadrature_steps < 2) throw DegenerateInput("picard: too few quadrature steps");
    check_orthogonal(a, "solve_picard");
    const std::vector<int> perm = detail::grid_permutation(a, x0.grid_m());

    const int m = x0.grid_m();
    const int q = cfg.quadrature_steps;
    const double dt = cfg.horizon / q;
    const std::vector<double> h0 = x0.fourier_support_samples();

    // cur[k][j]: iterate value at time k*dt, direction j.
    std::vector<std::vector<double>> cur(q + 1, h0);
    std::vector<std::vector<double>> next(q + 1, std::vector<double>(m));
    for (int it = 0; it < cfg.m_max; ++it) {
        for (int j = 0; j < m; ++j) {
            const int pj = perm[j];
            double integral = 0.0;
            next[0][j] = h0[j];
            for (int k = 1; k <= q; ++k) {
                integral += 0.5 * dt * (cur[k - 1][pj] + cur[k][pj]);
                next[k][j] = h0[j] + integral;
            }
        }
        std::swap(cur, next);
    }

    Trajectory traj;
    traj.integrator = Trajectory::Integrator::picard;
    traj.times.resize(q + 1);
    traj.bodies.reserve(q + 1);
    for (int k = 0; k <= q; ++k) {
        traj.times[k] = k * dt;
        traj.bodies.push_back(detail::body_from_samples(cur[k], x0.degree(), m));
    }
    // The k-th iterate is a Minkowski combination of rotated copies of X0, so
    // convexity and diameter monotonicity hold for every iterate, not just in
    // the limit.
    traj.validate();
    return traj;
}

Interval1D solve_reflection_1d(const Interval1D& x0, double t) {
    if (t < 0.0) throw NegativeTime("solve_reflection_1d: t must be >= 0");
    const double ch = std::cosh(t), sh = std::sinh(t);
    return Interval1D(x0.lo * ch - x0.hi * sh, x0.hi * ch - x0.lo * sh);
}

Conjugation conjugate_to_orthogonal(const LinearOp2& a) {
    if (a.is_orthogonal(1e-12)) return {LinearOp2::identity(), a};

    const Eigen::Matrix2d m = a.entries();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double tr = m.trace();
    const double det = m.determinant();
    const double disc = tr * tr - 4.0 * det;
    const double tol = 1e-10 * scale * scale;

    auto classify = [](const Eigen::Matrix2d& q) {
        if (q.determinant() > 0.0)
            return LinearOp2::rotation(std::atan2(q(1, 0), q(0, 0)));
        return LinearOp2::reflection(0.5 * std::atan2(q(1, 0), q(0, 0)));
    };

    Eigen::Matrix2d t_mat;
    if (disc < -tol) {
        // Complex pair; modulus sqrt(det) must be 1.
        if (std::abs(det - 1.0) > 1e-10)
            throw NotStableOperator("complex spectrum off the unit circle");
        const double im = 0.5 * std::sqrt(-disc);
        const Complex lambda(0.5 * tr, im);
        // Eigenvector of the better-conditioned row.
        Eigen::Vector2cd v;
        if (std::abs(m(0, 1)) >= std::abs(m(1, 0)))
            v << Complex(m(0, 1), 0.0), lambda - Complex(m(0, 0), 0.0);
        else
            v << lambda - Complex(m(1, 1), 0.0), Complex(m(1, 0), 0.0);
        v /= v.norm();
        // Phase-balance the real pair (preserves similarity, conditions T).
        const Eigen::Vector2d vr0 = v.real(), vi0 = v.imag();
        const double phi = 0.5 * std::atan2(2.0 * vr0.dot(vi0),
                                            vr0.squaredNorm() - vi0.squaredNorm());
        v *= std::exp(Complex(0.0, -phi));
        t_mat.col(0) = v.real();
        t_mat.col(1) = v.imag();
    } else if (disc > tol) {
        const double root = std::sqrt(disc);
        const double l1 = 0.5 * (tr + root), l2 = 0.5 * (tr - root);
        if (std::abs(std::abs(l1) - 1.0) > 1e-10 || std::abs(std::abs(l2) - 1.0) > 1e-10)
            throw NotStableOperator("real spectrum off the unit circle");
        auto eigvec = [&](double l) {
            Eigen::Vector2d v;
            if (std::abs(m(0, 1)) + std::abs(m(0, 0) - l) >=
                std::abs(m(1, 0)) + std::abs(m(1, 1) - l)) {
                v << m(0, 1), l - m(0, 0);
            } else {
                v << l - m(1, 1), m(1, 0);
            }
            const double n = v.norm();
            if (n <= 1e-14 * scale) v << 1.0, 0.0;
            else v /= n;
            return v;
        };
        t_mat.col(0) = eigvec(l1);
        t_mat.col(1) = eigvec(l2);
    } else {
        // Double eigenvalue tr/2; bounded powers require A = lambda I.
        const double lambda = 0.5 * tr;
        if (std::abs(std::abs(lambda) - 1.0) > 1e-10)
            throw NotStableOperator("double eigenvalue off the unit circle");
        if ((m - lambda * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() >
            1e-10 * scale)
            throw NotStableOperator("defective unit-modulus eigenvalue: powers are unbounded");
        return {LinearOp2::identity(), classify(m)};
    }

    if (std::abs(t_mat.determinant()) <= 1e-12)
        throw NotStableOperator("conjugating transform is numerically singular");
    const Eigen::Matrix2d a1 = t_mat.inverse() * m * t_mat;
    if ((a1.transpose() * a1 - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() >
        1e-10)
        throw NotStableOperator("conjugated operator failed the orthogonality check");
    return {LinearOp2::general(t_mat), classify(a1)};
}

}  // namespace setflow
