#include "setflow/functionals.hpp"

#include <cmath>
#include <limits>

#include "setflow/lp.hpp"

namespace setflow {
namespace {

struct Edge {
    double normal_angle;
    double length;
};

std::vector<Edge> polygon_edges(const std::vector<Vec2>& v) {
    std::vector<Edge> edges(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Vec2 e = v[(k + 1) % v.size()] - v[k];
        edges[k] = {std::atan2(e.y(), e.x()) - 0.5 * kPi, e.norm()};
    }
    return edges;
}

// (1/2) Int h_X dS_P over the atomic surface measure of polygon P.
double mixed_area_against_polygon(const Body2D& x, const std::vector<Vec2>& poly) {
    double s = 0.0;
    for (const Edge& e : polygon_edges(poly)) s += x.support(e.normal_angle) * e.length;
    return 0.5 * s;
}

double quadrature_mixed_area(const Body2D& x, const Body2D& y) {
    const int m = x.grid_m();
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
        const double theta = x.grid_theta(j);
        s += x.fourier_support(theta) * y.fourier_curvature(theta);
    }
    return kPi / m * s;
}

}  // namespace

double area(const Body2D& x) {
    if (x.is_polygonal()) return detail::polygon_area(x.vertices());
    return quadrature_mixed_area(x, x);
}

double mixed_area(const Body2D& x, const Body2D& y) {
    if (!x.same_grid(y))
        throw GridMismatch("mixed_area: bodies live on different grids");
    if (y.is_polygonal()) return mixed_area_against_polygon(x, y.vertices());
    if (x.is_polygonal()) return mixed_area_against_polygon(y, x.vertices());
    return quadrature_mixed_area(x, y);
}

DeficitReport deficit(const Body2D& x, const Body2D& y) {
    DeficitReport r;
    r.V1 = mixed_area(x, y);
    r.VX = area(x);
    r.VY = area(y);
    const double scale = x.sup_norm() + y.sup_norm();
    if (r.VX <= 1e-14 * scale * scale || r.VY <= 1e-14 * scale * scale)
        throw DegenerateBody("deficit needs bodies with interior");
    r.delta = r.V1 * r.V1 / (r.VX * r.VY) - 1.0;
    if (r.delta < -1e-10)
        throw InvariantError("Brunn-Minkowski deficit came out negative");
    return r;
}

RadiiReport inradius_circumradius(const Body2D& x) {
    const std::vector<double> h = x.support_samples();
    const int m = x.grid_m();
    const double box = 4.0 * x.sup_norm() + 1.0;

    std::vector<Eigen::Vector3d> rows(m);
    std::vector<double> rhs(m);

    // max r : <c, u_j> + r <= H_j
    for (int j = 0; j < m; ++j) {
        const Vec2 u = unit_dir(x.grid_theta(j));
        rows[j] = {u.x(), u.y(), 1.0};
        rhs[j] = h[j];
    }
    const lp::Result in = lp::solve3(rows, rhs, {0.0, 0.0, -1.0}, box);
    if (!in.feasible)
        throw LPInfeasible("inradius program infeasible: convexity invariant violated upstream");

    // min R : H_j - <c, u_j> <= R
    for (int j = 0; j < m; ++j) {
        const Vec2 u = unit_dir(x.grid_theta(j));
        rows[j] = {-u.x(), -u.y(), -1.0};
        rhs[j] = -h[j];
    }
    const lp::Result out = lp::solve3(rows, rhs, {0.0, 0.0, 1.0}, box);
    if (!out.feasible)
        throw LPInfeasible("circumradius program infeasible: convexity invariant violated upstream");

    RadiiReport rep;
    rep.inradius = in.x(2);
    rep.incenter = {in.x(0), in.x(1)};
    rep.circumradius = out.x(2);
    rep.circumcenter = {out.x(0), out.x(1)};
    if (rep.inradius <= 0.0)
        throw DegenerateBody("body has empty interior (inradius <= 0)");
    if (rep.circumradius < rep.inradius - 1e-9 * box)
        throw InvariantError("circumradius came out below inradius");
    return rep;
}

double hausdorff(const Body2D& x, const Body2D& y) {
    if (!x.same_grid(y))
        throw GridMismatch("hausdorff: bodies live on different grids");
    double d = 0.0;
    for (int j = 0; j < x.grid_m(); ++j) {
        const double theta = x.grid_theta(j);
        d = std::max(d, std::abs(x.support(theta) - y.support(theta)));
    }
    return d;
}

ShapeRep normalize(const Body2D& x) {
    const double v = area(x);
    const double scale = x.sup_norm();
    if (v <= 1e-14 * std::max(1.0, scale * scale))
        throw DegenerateBody("cannot normalize a body without interior");
    return {scale_translate(x, 1.0 / std::sqrt(v), Vec2::Zero()), v};
}

MetricReport shape_metric(const Body2D& x, const Body2D& y) {
    if (!x.same_grid(y))
        throw GridMismatch("shape_metric: bodies live on different grids");
    const Body2D xn = normalize(x).body;
    const Body2D yn = normalize(y).body;

    const int m = xn.grid_m();
    std::vector<double> diff(m);
    for (int j = 0; j < m; ++j) {
        const double theta = xn.grid_theta(j);
        diff[j] = xn.support(theta) - yn.support(theta);
    }

    const double box = 4.0 * (xn.sup_norm() + yn.sup_norm()) + 1.0;
    std::vector<Eigen::Vector3d> rows;
    std::vector<double> rhs;
    rows.reserve(2 * m + 4);
    rhs.reserve(2 * m + 4);
    for (int j = 0; j < m; ++j) {
        const Vec2 u = unit_dir(xn.grid_theta(j));
        rows.push_back({-u.x(), -u.y(), -1.0});
        rhs.push_back(-diff[j]);
        rows.push_back({u.x(), u.y(), -1.0});
        rhs.push_back(diff[j]);
    }

    const lp::Result eps = lp::solve3(rows, rhs, {0.0, 0.0, 1.0}, box);
    if (!eps.feasible) throw LPInfeasible("shape metric program infeasible");

    // Lexicographically smallest optimal witness: pin the optimum, then
    // minimize x1, then x2.
    const double slack = 1e-12 * (1.0 + std::abs(eps.value)) + 1e-15;
    rows.push_back({0.0, 0.0, 1.0});
    rhs.push_back(eps.value + slack);
    const lp::Result w1 = lp::solve3(rows, rhs, {1.0, 0.0, 0.0}, box);
    rows.push_back({1.0, 0.0, 0.0});
    rhs.push_back(w1.feasible ? w1.value + slack : box);
    const lp::Result w2 = lp::solve3(rows, rhs, {0.0, 1.0, 0.0}, box);

    MetricReport rep;
    rep.rho = std::max(eps.value, 0.0);
    if (w2.feasible) rep.witness_translation = {w2.x(0), w2.x(1)};
    else rep.witness_translation = {eps.x(0), eps.x(1)};
    return rep;
}

}  // namespace setflow
