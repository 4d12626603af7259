#pragma once

#include "setflow/body.hpp"

namespace setflow {

struct RadiiReport {
    double inradius = 0.0;
    double circumradius = 0.0;
    Vec2 incenter = Vec2::Zero();
    Vec2 circumcenter = Vec2::Zero();
};

struct DeficitReport {
    double V1 = 0.0;  // first mixed volume = mixed area S[X,Y]
    double VX = 0.0;
    double VY = 0.0;
    double delta = 0.0;
};

/// Body rescaled to unit area: X / sqrt(V[X]).
struct ShapeRep {
    Body2D body;
    double source_volume = 0.0;
};

struct MetricReport {
    double rho = 0.0;
    /// Translation applied to the normalized second body at the optimum,
    /// i.e. rho = max_j |H_X~(theta_j) - H_Y~(theta_j) - <x, u_j>|.
    Vec2 witness_translation = Vec2::Zero();
};

/// V[X] = (1/2) Int H (H + H'') dtheta. Exact trapezoid quadrature on the
/// grid for Fourier bodies (exact for the truncated series), shoelace for
/// polygon-tagged bodies.
double area(const Body2D& x);

/// Mixed area S[X,Y]: symmetric bilinear, V(X+tY) = V(X) + 2t S + t^2 V(Y).
/// Exact for polygon operands through the edge/surface-measure formula.
double mixed_area(const Body2D& x, const Body2D& y);

/// Brunn-Minkowski deficit Delta[X,Y] = S^2/(V[X] V[Y]) - 1 (n = 2).
DeficitReport deficit(const Body2D& x, const Body2D& y);

/// Largest inscribed and smallest circumscribed disks over the grid
/// directions, as two 3-variable linear programs.
RadiiReport inradius_circumradius(const Body2D& x);

/// Hausdorff distance: sup-norm of the support difference over the grid.
double hausdorff(const Body2D& x, const Body2D& y);

ShapeRep normalize(const Body2D& x);

/// Quotient metric of the homothety group: both bodies are normalized to
/// unit area and the remaining translation is optimized by a minimax linear
/// program. Ties in the witness translation are broken lexicographically.
MetricReport shape_metric(const Body2D& x, const Body2D& y);

}  // namespace setflow
