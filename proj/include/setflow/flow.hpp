#pragma once

#include <vector>

#include "setflow/body.hpp"

namespace setflow {

/// Time series of bodies under the Hukuhara flow D_H X = A X. Trajectories
/// validate strictly increasing times, per-body convexity and the
/// nondecreasing-diameter necessary condition on construction.
struct Trajectory {
    enum class Integrator { spectral, rk4, picard };

    std::vector<double> times;
    std::vector<Body2D> bodies;
    Integrator integrator = Integrator::spectral;

    void validate() const;
};

/// Exact evolution for a rotation by alpha: the Fourier coefficients follow
/// c_p(t) = exp(t e^{-i p alpha}) c_p(0). This closed form is cross-checked
/// against the RK4 and Picard integrators in the test suite before being
/// trusted as the fast path.
Body2D solve_spectral(const Body2D& x0, double alpha, double t);
Body2D solve_spectral(const Body2D& x0, const LinearOp2& a, double t);
Trajectory solve_spectral_trajectory(const Body2D& x0, double alpha,
                                     const std::vector<double>& times);

/// Classic RK4 on the grid samples: dH(theta_j)/dt = H(theta_{sigma(j)}) where
/// A^T permutes the grid directions. Requires an orthogonal operator whose
/// action closes on the grid (GridIncompatible otherwise).
Trajectory solve_rk4(const Body2D& x0, const LinearOp2& a,
                     const std::vector<double>& t_grid, double step = 1.0 / 256.0);

struct PicardConfig {
    double horizon = 1.0;
    int m_max = 20;
    int quadrature_steps = 1024;
};

/// Successive approximations X_m(t) = X_0 + Int_0^t A X_{m-1}(s) ds evaluated
/// with cumulative trapezoid quadrature; the reference integrator.
Trajectory solve_picard(const Body2D& x0, const LinearOp2& a,
                        const PicardConfig& cfg);

/// Closed-form solution of the 1D reflection equation D_H X = JX.
Interval1D solve_reflection_1d(const Interval1D& x0, double t);

struct Conjugation {
    LinearOp2 T;
    LinearOp2 A1;  // orthogonal, A1 = T^-1 A T
};

/// Similarity transform of a stable operator (bounded powers: unit-modulus
/// semisimple spectrum) to an orthogonal one.
Conjugation conjugate_to_orthogonal(const LinearOp2& a);

namespace detail {
/// perm[j] with A^T u(theta_j) = u(theta_{perm[j]}).
std::vector<int> grid_permutation(const LinearOp2& a, int grid_m);
Body2D body_from_samples(const std::vector<double>& samples, int degree, int grid_m);
}  // namespace detail

}  // namespace setflow
