#include "setflow/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace setflow {
namespace {

Complex arc_integral(int q, double a, double b) {
    // Int_a^b e^{i q t} dt
    if (q == 0) return {b - a, 0.0};
    const Complex iq(0.0, static_cast<double>(q));
    return (std::exp(iq * b) - std::exp(iq * a)) / iq;
}

void check_sizes(int degree, int grid_m) {
    if (degree < 1) throw DegenerateInput("degree must be >= 1");
    if (grid_m < 2 * degree + 2) {
        std::ostringstream os;
        os << "grid_M = " << grid_m << " too small for degree " << degree
           << " (need >= 2N+2)";
        throw GridMismatch(os.str());
    }
    if (grid_m % 2 != 0) throw GridMismatch("grid_M must be even");
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearOp2

LinearOp2 LinearOp2::identity() { return rotation(0.0); }

LinearOp2 LinearOp2::rotation(double angle) {
    Eigen::Matrix2d m;
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return LinearOp2(Kind::rotation, angle, m);
}

LinearOp2 LinearOp2::reflection(double axis_angle) {
    const double c = std::cos(2.0 * axis_angle), s = std::sin(2.0 * axis_angle);
    Eigen::Matrix2d m;
    m << c, s, s, -c;
    return LinearOp2(Kind::reflection, axis_angle, m);
}

LinearOp2 LinearOp2::general(const Eigen::Matrix2d& entries) {
    return LinearOp2(Kind::general, 0.0, entries);
}

bool LinearOp2::is_orthogonal(double tol) const {
    return (entries_.transpose() * entries_ - Eigen::Matrix2d::Identity())
               .cwiseAbs()
               .maxCoeff() <= tol;
}

LinearOp2 LinearOp2::times(const LinearOp2& other) const {
    if (kind_ == Kind::rotation && other.kind_ == Kind::rotation)
        return rotation(angle_ + other.angle_);
    return general(entries_ * other.entries_);
}

LinearOp2 LinearOp2::power(int k) const {
    if (kind_ == Kind::rotation) return rotation(angle_ * k);
    LinearOp2 acc = identity();
    LinearOp2 base = k >= 0 ? *this : inverse();
    for (int i = 0; i < std::abs(k); ++i) acc = acc.times(base);
    return acc;
}

LinearOp2 LinearOp2::inverse() const {
    if (kind_ == Kind::rotation) return rotation(-angle_);
    if (kind_ == Kind::reflection) return *this;
    const double d = entries_.determinant();
    if (std::abs(d) <= 1e-12 * entries_.cwiseAbs().maxCoeff())
        throw SingularOperator("cannot invert a singular operator");
    return general(entries_.inverse());
}

// ---------------------------------------------------------------------------
// Polygon helpers

namespace detail {

std::vector<Vec2> normalize_polygon(const std::vector<Vec2>& vertices) {
    if (vertices.size() < 3)
        throw DegenerateInput("polygon needs at least 3 vertices");
    double signed_area = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& a = vertices[k];
        const Vec2& b = vertices[(k + 1) % n];
        signed_area += a.x() * b.y() - b.x() * a.y();
    }
    signed_area *= 0.5;

    std::vector<Vec2> ccw = vertices;
    if (signed_area < 0.0) std::reverse(ccw.begin(), ccw.end());

    double scale = 0.0;
    for (const Vec2& v : ccw) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    const double tol = 1e-12 * std::max(1.0, scale * scale);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 e1 = ccw[(k + 1) % n] - ccw[k];
        const Vec2 e2 = ccw[(k + 2) % n] - ccw[(k + 1) % n];
        const double cross = e1.x() * e2.y() - e1.y() * e2.x();
        if (cross <= tol)
            throw NonConvexInput("vertices not in strictly convex position");
    }
    if (std::abs(signed_area) <= tol)
        throw DegenerateInput("polygon area is not positive");
    return ccw;
}

double polygon_area(const std::vector<Vec2>& v) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Vec2& a = v[k];
        const Vec2& b = v[(k + 1) % v.size()];
        s += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * s;
}

double polygon_support(const std::vector<Vec2>& v, double theta) {
    const Vec2 u = unit_dir(theta);
    double best = v[0].dot(u);
    for (std::size_t k = 1; k < v.size(); ++k) best = std::max(best, v[k].dot(u));
    return best;
}

std::vector<Complex> polygon_fourier(const std::vector<Vec2>& v, int degree) {
    const std::size_t n = v.size();
    // Outward edge normal angles, unwrapped to an increasing sequence: the
    // support function equals <v_{k+1}, u(theta)> on [phi_k, phi_{k+1}].
    std::vector<double> phi(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 e = v[(k + 1) % n] - v[k];
        phi[k] = std::atan2(e.y(), e.x()) - 0.5 * kPi;
    }
    for (std::size_t k = 1; k < n; ++k) {
        while (phi[k] <= phi[k - 1]) phi[k] += 2.0 * kPi;
    }

    std::vector<Complex> coeffs(degree + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        const double a = phi[k];
        const double b = (k + 1 < n) ? phi[k + 1] : phi[0] + 2.0 * kPi;
        const Vec2& vert = v[(k + 1) % n];
        const Complex w(vert.x(), -vert.y());
        for (int p = 0; p <= degree; ++p) {
            coeffs[p] += 0.5 * (w * arc_integral(1 - p, a, b) +
                                std::conj(w) * arc_integral(-(1 + p), a, b));
        }
    }
    for (Complex& c : coeffs) c /= 2.0 * kPi;
    coeffs[0] = Complex(coeffs[0].real(), 0.0);
    return coeffs;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Body2D

Body2D Body2D::raw(double h0, std::vector<Complex> modes, int grid_m) {
    Body2D b;
    b.h0_ = h0;
    b.modes_ = std::move(modes);
    b.grid_m_ = grid_m;
    return b;
}

Body2D Body2D::from_fourier(double h0, std::vector<Complex> modes, int grid_m) {
    check_sizes(static_cast<int>(modes.size()), grid_m);
    Body2D b = raw(h0, std::move(modes), grid_m);
    if (!b.is_convex())
        throw NonConvexInput("support coefficients violate the curvature invariant");
    return b;
}

Body2D Body2D::disk(double radius, int degree, int grid_m) {
    if (radius < 0.0) throw DegenerateInput("disk radius must be >= 0");
    check_sizes(degree, grid_m);
    return raw(radius, std::vector<Complex>(degree, Complex(0, 0)), grid_m);
}

Body2D Body2D::point(const Vec2& position, int degree, int grid_m) {
    check_sizes(degree, grid_m);
    std::vector<Complex> modes(degree, Complex(0, 0));
    modes[0] = Complex(position.x(), -position.y()) * 0.5;
    return raw(0.0, std::move(modes), grid_m);
}

Body2D Body2D::from_polygon(const std::vector<Vec2>& vertices, int degree,
                            int grid_m) {
    std::vector<Vec2> ccw = detail::normalize_polygon(vertices);
    check_sizes(degree, grid_m);

    std::vector<Complex> exact = detail::polygon_fourier(ccw, degree);
    std::vector<Complex> modes(exact.begin() + 1, exact.end());
    for (int p = 2; p <= degree; ++p)
        modes[p - 1] *= 1.0 - static_cast<double>(p) / (degree + 1);

    Body2D b = raw(exact[0].real(), std::move(modes), grid_m);
    b.vertices_ = std::move(ccw);

    // Sup-norm residual over all directions: sampled max plus a slack of one
    // maximal consecutive jump, covering the gaps between samples.
    const int fine = 4 * grid_m;
    std::vector<double> diff(fine);
    for (int j = 0; j < fine; ++j) {
        const double theta = 2.0 * kPi * j / fine;
        diff[j] = detail::polygon_support(b.vertices_, theta) -
                  b.fourier_support(theta);
    }
    double residual = 0.0, jump = 0.0;
    for (int j = 0; j < fine; ++j) {
        residual = std::max(residual, std::abs(diff[j]));
        jump = std::max(jump, std::abs(diff[(j + 1) % fine] - diff[j]));
    }
    b.projection_residual_ = residual + jump;
    b.require_convex("from_polygon");
    return b;
}

Complex Body2D::mode(int p) const {
    if (p == 0) return {h0_, 0.0};
    if (p < 0 || p > degree()) return {0.0, 0.0};
    return modes_[p - 1];
}

double Body2D::support(double theta) const {
    if (is_polygonal()) return detail::polygon_support(vertices_, theta);
    return fourier_support(theta);
}

double Body2D::fourier_support(double theta) const {
    const Complex z = std::exp(Complex(0.0, theta));
    Complex zp = z;
    double s = h0_;
    for (const Complex& c : modes_) {
        s += 2.0 * (c * zp).real();
        zp *= z;
    }
    return s;
}

double Body2D::fourier_curvature(double theta) const {
    const Complex z = std::exp(Complex(0.0, theta));
    Complex zp = z;
    double s = h0_;
    for (int p = 1; p <= degree(); ++p) {
        s += (1.0 - static_cast<double>(p) * p) * 2.0 * (modes_[p - 1] * zp).real();
        zp *= z;
    }
    return s;
}

std::vector<double> Body2D::support_samples() const {
    std::vector<double> out(grid_m_);
    for (int j = 0; j < grid_m_; ++j) out[j] = support(grid_theta(j));
    return out;
}

std::vector<double> Body2D::fourier_support_samples() const {
    std::vector<double> out(grid_m_);
    for (int j = 0; j < grid_m_; ++j) out[j] = fourier_support(grid_theta(j));
    return out;
}

std::vector<double> Body2D::curvature_samples() const {
    std::vector<double> out(grid_m_);
    for (int j = 0; j < grid_m_; ++j) out[j] = fourier_curvature(grid_theta(j));
    return out;
}

double Body2D::sup_norm() const {
    double s = std::abs(h0_);
    for (const Complex& c : modes_) s += 2.0 * std::abs(c);
    return s;
}

double Body2D::min_curvature() const {
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_m_; ++j)
        m = std::min(m, fourier_curvature(grid_theta(j)));
    return m;
}

void Body2D::require_convex(const char* context) const {
    const double m = min_curvature();
    if (m < -convexity_tol()) {
        std::ostringstream os;
        os << context << ": curvature invariant violated (min H+H'' = " << m
           << ", tol = " << convexity_tol() << ")";
        throw ConvexityLost(os.str());
    }
}

double Body2D::diameter() const {
    const int half = grid_m_ / 2;
    const std::vector<double> h = support_samples();
    double d = 0.0;
    for (int j = 0; j < half; ++j) d = std::max(d, h[j] + h[j + half]);
    return d;
}

Vec2 Body2D::steiner_point() const {
    const Complex c1 = mode(1);
    return {2.0 * c1.real(), -2.0 * c1.imag()};
}

// ---------------------------------------------------------------------------
// Minkowski algebra

Body2D minkowski_sum(const Body2D& x, const Body2D& y) {
    if (!x.same_grid(y))
        throw GridMismatch("minkowski_sum: bodies live on different grids");
    std::vector<Complex> modes(x.degree());
    for (int p = 0; p < x.degree(); ++p) modes[p] = x.modes_[p] + y.modes_[p];
    return Body2D::raw(x.h0_ + y.h0_, std::move(modes), x.grid_m_);
}

namespace {

struct Projection {
    Body2D body;
    double residual;
};

Projection reprojected(const Eigen::Matrix2d& at, const Body2D& x) {
    // h_{AX}(u(theta)) = |A^T u| * H_X(arg(A^T u)); analytic in theta, so a
    // plain truncated projection from a fine grid is adequate. Convexity is
    // asserted, not repaired, and the sup-norm residual is reported on the
    // result.
    const int degree = x.degree();
    const int fine = std::max(4 * x.grid_m(), 16 * (degree + 1));
    std::vector<double> f(fine);
    for (int j = 0; j < fine; ++j) {
        const double theta = 2.0 * kPi * j / fine;
        const Vec2 w = at * unit_dir(theta);
        const double r = w.norm();
        f[j] = r * x.fourier_support(std::atan2(w.y(), w.x()));
    }
    std::vector<Complex> coeffs(degree + 1, Complex(0, 0));
    for (int p = 0; p <= degree; ++p) {
        Complex acc(0, 0);
        for (int j = 0; j < fine; ++j) {
            const double theta = 2.0 * kPi * j / fine;
            acc += f[j] * std::exp(Complex(0.0, -p * theta));
        }
        coeffs[p] = acc / static_cast<double>(fine);
    }
    std::vector<Complex> modes(coeffs.begin() + 1, coeffs.end());
    Body2D out = Body2D::raw(coeffs[0].real(), std::move(modes), x.grid_m());
    out.require_convex("apply_op projection");
    std::vector<double> diff(fine);
    for (int j = 0; j < fine; ++j)
        diff[j] = f[j] - out.fourier_support(2.0 * kPi * j / fine);
    double residual = 0.0, jump = 0.0;
    for (int j = 0; j < fine; ++j) {
        residual = std::max(residual, std::abs(diff[j]));
        jump = std::max(jump, std::abs(diff[(j + 1) % fine] - diff[j]));
    }
    // One maximal consecutive jump covers the gaps between samples.
    return {std::move(out), residual + jump};
}

}  // namespace

Body2D apply_op(const LinearOp2& a, const Body2D& x) {
    const double op_scale = a.entries().cwiseAbs().maxCoeff();
    if (std::abs(a.det()) <= 1e-12 * std::max(1.0, op_scale * op_scale))
        throw SingularOperator("apply_op: operator is singular");

    if (x.is_polygonal()) {
        std::vector<Vec2> verts(x.vertices().size());
        for (std::size_t k = 0; k < verts.size(); ++k)
            verts[k] = a.entries() * x.vertices()[k];
        return Body2D::from_polygon(verts, x.degree(), x.grid_m());
    }

    auto rotate_modes = [&x](double alpha) {
        std::vector<Complex> modes(x.degree());
        for (int p = 1; p <= x.degree(); ++p)
            modes[p - 1] = x.modes()[p - 1] * std::exp(Complex(0.0, -p * alpha));
        return modes;
    };
    auto reflect_modes = [&x](double axis) {
        std::vector<Complex> modes(x.degree());
        for (int p = 1; p <= x.degree(); ++p)
            modes[p - 1] =
                std::conj(x.modes()[p - 1]) * std::exp(Complex(0.0, -2.0 * p * axis));
        return modes;
    };

    if (a.kind() == LinearOp2::Kind::rotation)
        return Body2D::raw(x.h0(), rotate_modes(a.angle()), x.grid_m());
    if (a.kind() == LinearOp2::Kind::reflection)
        return Body2D::raw(x.h0(), reflect_modes(a.angle()), x.grid_m());

    // General matrix: conformal (lambda * orthogonal) maps stay exact in
    // coefficient space; everything else is reprojected.
    const Eigen::Matrix2d gram = a.entries().transpose() * a.entries();
    const double lambda2 = 0.5 * (gram(0, 0) + gram(1, 1));
    const bool conformal =
        std::abs(gram(0, 1)) <= 1e-12 * lambda2 &&
        std::abs(gram(0, 0) - gram(1, 1)) <= 1e-12 * lambda2;
    if (conformal && lambda2 > 0.0) {
        const double lambda = std::sqrt(lambda2);
        const Eigen::Matrix2d q = a.entries() / lambda;
        Body2D mapped;
        if (q.determinant() > 0.0) {
            const double alpha = std::atan2(q(1, 0), q(0, 0));
            mapped = Body2D::raw(x.h0(), rotate_modes(alpha), x.grid_m());
        } else {
            const double axis = 0.5 * std::atan2(q(1, 0), q(0, 0));
            mapped = Body2D::raw(x.h0(), reflect_modes(axis), x.grid_m());
        }
        return scale_translate(mapped, lambda, Vec2::Zero());
    }
    Projection proj = reprojected(a.entries().transpose(), x);
    proj.body.projection_residual_ = proj.residual;
    return proj.body;
}

Body2D scale_translate(const Body2D& x, double lambda, const Vec2& b) {
    if (!(lambda > 0.0)) throw NonPositiveScale("scale factor must be positive");
    if (x.is_polygonal()) {
        std::vector<Vec2> verts(x.vertices().size());
        for (std::size_t k = 0; k < verts.size(); ++k)
            verts[k] = lambda * x.vertices()[k] + b;
        return Body2D::from_polygon(verts, x.degree(), x.grid_m());
    }
    std::vector<Complex> modes(x.degree());
    for (int p = 0; p < x.degree(); ++p) modes[p] = lambda * x.modes()[p];
    modes[0] += Complex(b.x(), -b.y()) * 0.5;
    return Body2D::raw(lambda * x.h0(), std::move(modes), x.grid_m());
}

}  // namespace setflow
