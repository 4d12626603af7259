#pragma once

#include <Eigen/Dense>
#include <vector>

#include "setflow/body.hpp"

namespace setflow {

/// The m-th order comparison system governing the cross mixed areas
/// xi_k(t) = (S[X(t), A^k X*(t)] + S[X*(t), A^k X(t)]) / 2 under a periodic
/// orthogonal flow (A^m = I, n = 2): d xi/dt = Omega xi.
struct ComparisonSystem {
    int m = 0;
    Eigen::MatrixXd omega;

    bool even() const { return m % 2 == 0; }
};

/// Nonzero pattern: omega_12 = 2, omega_ij = 1 for |i-j| = 1 with
/// (i,j) != (1,2), and omega_m1 = 1.
ComparisonSystem build_omega(int m);

/// Numerical eigenvalues, deduplicated, descending. Matches
/// {2 cos(2 pi q / m) : q = 0..floor(m/2)}.
std::vector<double> spectrum(const ComparisonSystem& sys);
std::vector<double> spectrum_formula(int m);

/// Scaling-and-squaring matrix exponential (Pade 13), fixed double-precision
/// accuracy for the small dense matrices used here.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// xi(t) = exp(Omega t) xi(0).
Eigen::VectorXd evolve_xi(const ComparisonSystem& sys, const Eigen::VectorXd& xi0,
                          double t);

/// Closed-form S[X(t), X*(t)] from the initial mixed areas:
/// s0 = S[X0, X0*], cross[p-1] = S[X0, A^p X0*] + S[X0*, A^p X0].
/// The even-m variant multiplies its leading factor by S[X0, X0*]; the
/// alternative reading S[X0, X0] fails the matrix-exponential cross-check
/// (see tests), which pins this choice.
double closed_form_S(int m, double s0, const std::vector<double>& cross, double t);

/// Coefficient of e^{2t} in the t -> infinity expansion of S[X(t), X*(t)]:
/// (1/m) s0 + (1/m^2) sum_p (m-p) cross[p-1].
double asymptotic_S(int m, double s0, const std::vector<double>& cross);

struct XiData {
    double s0 = 0.0;
    std::vector<double> cross;  // size m-1
    Eigen::VectorXd xi0;        // size m
};

/// Initial data measured geometrically from a body pair.
XiData xi_from_bodies(const Body2D& x0, const Body2D& x0_star, const LinearOp2& a,
                      int m);

}  // namespace setflow
