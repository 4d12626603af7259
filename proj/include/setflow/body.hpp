#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "setflow/errors.hpp"

namespace setflow {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;

inline constexpr int kDefaultDegree = 32;
inline constexpr int kDefaultGrid = 128;
inline constexpr double kPi = 3.14159265358979323846;

inline Vec2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Closed interval [lo, hi] on the line; the one-dimensional convex compact.
struct Interval1D {
    double lo = 0.0;
    double hi = 0.0;

    Interval1D() = default;
    Interval1D(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (hi < lo) throw DegenerateInput("Interval1D: hi < lo");
    }
    double diameter() const { return hi - lo; }
};

/// A 2x2 linear operator acting on bodies through the support identity
/// h_{AX}(p) = h_X(A^T p). Rotations and reflections carry their angle so the
/// coefficient-space action can be applied exactly.
class LinearOp2 {
public:
    enum class Kind { rotation, reflection, general };

    static LinearOp2 identity();
    static LinearOp2 rotation(double angle);
    /// Reflection across the line through the origin at `axis_angle`.
    static LinearOp2 reflection(double axis_angle);
    static LinearOp2 general(const Eigen::Matrix2d& entries);

    Kind kind() const { return kind_; }
    double angle() const { return angle_; }
    const Eigen::Matrix2d& entries() const { return entries_; }
    bool is_orthogonal(double tol = 1e-12) const;
    double det() const { return entries_.determinant(); }
    LinearOp2 times(const LinearOp2& other) const;
    LinearOp2 power(int k) const;
    LinearOp2 inverse() const;

private:
    LinearOp2(Kind kind, double angle, const Eigen::Matrix2d& entries)
        : kind_(kind), angle_(angle), entries_(entries) {}

    Kind kind_ = Kind::general;
    double angle_ = 0.0;  // rotation angle or reflection axis angle
    Eigen::Matrix2d entries_ = Eigen::Matrix2d::Identity();
};

/// Planar convex compact represented by a truncated Fourier support function
///
///   H(theta) = h0 + sum_{p=1..N} 2 Re(c_p e^{i p theta}).
///
/// Bodies ingested from polygons additionally retain their exact vertices;
/// geometric functionals use those for exact evaluation while the Fourier
/// side feeds the Minkowski algebra and the flow solvers. The projection of a
/// polygon uses exact arc integrals for the coefficients with a positive
/// (Fejer-type) taper on modes p >= 2, which keeps the curvature measure
/// nonnegative; the sup-norm projection residual is stored on the body.
class Body2D {
public:
    Body2D() = default;

    static Body2D from_fourier(double h0, std::vector<Complex> modes,
                               int grid_m = kDefaultGrid);
    static Body2D disk(double radius, int degree = kDefaultDegree,
                       int grid_m = kDefaultGrid);
    /// Degenerate singleton {position}; valid for Minkowski algebra, rejected
    /// by functionals that require interior.
    static Body2D point(const Vec2& position, int degree = kDefaultDegree,
                        int grid_m = kDefaultGrid);
    static Body2D from_polygon(const std::vector<Vec2>& vertices,
                               int degree = kDefaultDegree,
                               int grid_m = kDefaultGrid);

    double h0() const { return h0_; }
    /// modes()[p-1] is the coefficient of e^{i p theta}, p = 1..degree().
    const std::vector<Complex>& modes() const { return modes_; }
    Complex mode(int p) const;
    int degree() const { return static_cast<int>(modes_.size()); }
    int grid_m() const { return grid_m_; }

    bool is_polygonal() const { return !vertices_.empty(); }
    const std::vector<Vec2>& vertices() const { return vertices_; }
    double projection_residual() const { return projection_residual_; }

    double grid_theta(int j) const { return 2.0 * kPi * j / grid_m_; }

    /// Support value; exact for polygon-tagged bodies, Fourier otherwise.
    double support(double theta) const;
    double fourier_support(double theta) const;
    /// Curvature radius H + H'' of the Fourier representation.
    double fourier_curvature(double theta) const;

    std::vector<double> support_samples() const;
    std::vector<double> fourier_support_samples() const;
    std::vector<double> curvature_samples() const;

    double sup_norm() const;
    double convexity_tol() const { return 1e-9 * std::abs(h0_) + 1e-15; }
    double min_curvature() const;
    bool is_convex() const { return min_curvature() >= -convexity_tol(); }
    void require_convex(const char* context) const;
    bool same_grid(const Body2D& other) const {
        return grid_m_ == other.grid_m_ && degree() == other.degree();
    }

    /// Max width over grid directions (requires even grid_m).
    double diameter() const;
    Vec2 steiner_point() const;

    /// Unchecked assembly from raw coefficients; used by solvers whose output
    /// is convex by theory and is asserted separately.
    static Body2D raw(double h0, std::vector<Complex> modes, int grid_m);

private:
    friend Body2D minkowski_sum(const Body2D&, const Body2D&);
    friend Body2D apply_op(const LinearOp2&, const Body2D&);
    friend Body2D scale_translate(const Body2D&, double, const Vec2&);

    double h0_ = 0.0;
    std::vector<Complex> modes_;
    int grid_m_ = kDefaultGrid;

    std::vector<Vec2> vertices_;  // exact source polygon, CCW; may be empty
    double projection_residual_ = 0.0;
};

/// Coefficientwise Minkowski sum; support functions add exactly at every
/// direction. Polygon tags do not survive (the sum is a Fourier body).
Body2D minkowski_sum(const Body2D& x, const Body2D& y);

/// h_{AX}(p) = h_X(A^T p). Exact in coefficient space for rotations,
/// reflections and scalar multiples of those; general invertible operators
/// transform retained polygons exactly and are otherwise reprojected.
Body2D apply_op(const LinearOp2& a, const Body2D& x);

/// lambda * X + b. Exact on both representations.
Body2D scale_translate(const Body2D& x, double lambda, const Vec2& b);

namespace detail {
/// Exact Fourier coefficients of a convex polygon's support function,
/// c_p = (1/2pi) Int h(theta) e^{-ip theta} dtheta for p = 0..degree.
std::vector<Complex> polygon_fourier(const std::vector<Vec2>& ccw_vertices,
                                     int degree);
double polygon_support(const std::vector<Vec2>& vertices, double theta);
double polygon_area(const std::vector<Vec2>& ccw_vertices);
/// Validates convex position and returns the vertices in CCW order.
std::vector<Vec2> normalize_polygon(const std::vector<Vec2>& vertices);
}  // namespace detail

}  // namespace setflow
