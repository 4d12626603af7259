#include "setflow/comparison.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "setflow/functionals.hpp"

namespace setflow {

ComparisonSystem build_omega(int m) {
    if (m < 3) throw BadOrder("comparison system needs m >= 3");
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (std::abs(i - j) == 1) omega(i, j) = 1.0;
        }
    }
    omega(0, 1) = 2.0;
    omega(m - 1, 0) = 1.0;
    return {m, std::move(omega)};
}

std::vector<double> spectrum(const ComparisonSystem& sys) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(sys.omega);
    if (solver.info() != Eigen::Success)
        throw InvariantError("eigenvalue computation failed");
    std::vector<double> vals;
    vals.reserve(sys.m);
    for (int i = 0; i < sys.m; ++i) {
        const std::complex<double> l = solver.eigenvalues()(i);
        // The repeated interior eigenvalues are defective, so QR resolves
        // them only to O(sqrt(eps)) and may split a pair into +-i noise.
        if (std::abs(l.imag()) > 1e-6)
            throw InvariantError("comparison matrix produced a complex eigenvalue");
        vals.push_back(l.real());
    }
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    // Cluster means are stable to O(eps) (trace of the invariant block), so
    // average each cluster instead of keeping a representative.
    std::vector<double> unique_vals;
    std::size_t i = 0;
    while (i < vals.size()) {
        std::size_t j = i + 1;
        double sum = vals[i];
        while (j < vals.size() && vals[j - 1] - vals[j] <= 1e-5) sum += vals[j++];
        unique_vals.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return unique_vals;
}

std::vector<double> spectrum_formula(int m) {
    if (m < 3) throw BadOrder("comparison system needs m >= 3");
    std::vector<double> vals;
    for (int q = 0; q <= m / 2; ++q) vals.push_back(2.0 * std::cos(2.0 * kPi * q / m));
    return vals;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
    // Pade 13 with scaling and squaring.
    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const double theta13 = 5.371920351148152;

    const int n = static_cast<int>(a.rows());
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    Eigen::MatrixXd as = a;
    if (norm1 > theta13) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
        as /= std::pow(2.0, squarings);
    }

    const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd a2 = as * as;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a2 * a4;
    const Eigen::MatrixXd u =
        as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
              b[3] * a2 + b[1] * ident);
    const Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                              b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    Eigen::MatrixXd f = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) f = f * f;
    return f;
}

Eigen::VectorXd evolve_xi(const ComparisonSystem& sys, const Eigen::VectorXd& xi0,
                          double t) {
    if (t < 0.0) throw NegativeTime("evolve_xi: t must be >= 0");
    if (xi0.size() != sys.m) throw BadOrder("evolve_xi: state size must equal m");
    return expm(sys.omega * t) * xi0;
}

double closed_form_S(int m, double s0, const std::vector<double>& cross, double t) {
    if (m < 3) throw BadOrder("closed_form_S needs m >= 3");
    if (static_cast<int>(cross.size()) != m - 1)
        throw BadOrder("closed_form_S needs m-1 cross terms");

    const double e2t = std::exp(2.0 * t);
    double value = 0.0;
    if (m % 2 == 1) {
        const int qmax = m / 2;
        double lead = e2t;
        for (int q = 1; q <= qmax; ++q) lead += 2.0 * std::exp(2.0 * t * std::cos(2.0 * kPi * q / m));
        value = lead / m * s0;
        for (int p = 1; p <= m - 1; ++p) {
            double coef = (m - p) * e2t;
            for (int q = 1; q <= qmax; ++q) {
                const double cq = std::cos(2.0 * kPi * q / m);
                coef += 2.0 *
                        ((m - p) * std::cos(2.0 * kPi * p * q / m) +
                         2.0 * t * std::sin(2.0 * kPi * p * q / m) * std::sin(2.0 * kPi * q / m)) *
                        std::exp(2.0 * t * cq);
            }
            value += coef / (static_cast<double>(m) * m) * cross[p - 1];
        }
    } else {
        const int qmax = (m - 2) / 2;
        const double em2t = std::exp(-2.0 * t);
        double lead = e2t + em2t;
        for (int q = 1; q <= qmax; ++q) lead += 2.0 * std::exp(2.0 * t * std::cos(2.0 * kPi * q / m));
        value = lead / m * s0;
        for (int p = 1; p <= m - 1; ++p) {
            const double sign = (p % 2 == 0) ? 1.0 : -1.0;
            double coef = (m - p) * (e2t + sign * em2t);
            for (int q = 1; q <= qmax; ++q) {
                const double cq = std::cos(2.0 * kPi * q / m);
                coef += 2.0 *
                        ((m - p) * std::cos(2.0 * kPi * p * q / m) +
                         2.0 * t * std::sin(2.0 * kPi * p * q / m) * std::sin(2.0 * kPi * q / m)) *
                        std::exp(2.0 * t * cq);
            }
            value += coef / (static_cast<double>(m) * m) * cross[p - 1];
        }
    }
    return value;
}

double asymptotic_S(int m, double s0, const std::vector<double>& cross) {
    if (m < 3) throw BadOrder("asymptotic_S needs m >= 3");
    if (static_cast<int>(cross.size()) != m - 1)
        throw BadOrder("asymptotic_S needs m-1 cross terms");
    double acc = s0 / m;
    for (int p = 1; p <= m - 1; ++p)
        acc += static_cast<double>(m - p) / (static_cast<double>(m) * m) * cross[p - 1];
    return acc;
}

XiData xi_from_bodies(const Body2D& x0, const Body2D& x0_star, const LinearOp2& a,
                      int m) {
    if (m < 3) throw BadOrder("xi_from_bodies needs m >= 3");
    XiData data;
    data.xi0.resize(m);
    data.cross.resize(m - 1);
    for (int k = 0; k < m; ++k) {
        const LinearOp2 ak = a.power(k);
        const double s_xy = mixed_area(x0, apply_op(ak, x0_star));
        const double s_yx = mixed_area(x0_star, apply_op(ak, x0));
        data.xi0(k) = 0.5 * (s_xy + s_yx);
        if (k == 0) data.s0 = data.xi0(0);
        else data.cross[k - 1] = s_xy + s_yx;
    }
    return data;
}

}  // namespace setflow
