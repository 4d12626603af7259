#pragma once

#include <Eigen/Dense>
#include <vector>

namespace setflow::lp {

struct Result {
    bool feasible = false;
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    double value = 0.0;
};

/// Minimize c.x subject to rows[i].x <= rhs[i] and |x_j| <= box.
///
/// Seidel's randomized incremental algorithm specialized to three variables,
/// with a fixed-seed shuffle so identical inputs always return identical
/// optima. Intended for the small support-function programs used here
/// (hundreds of constraints); the box keeps every subproblem bounded.
Result solve3(const std::vector<Eigen::Vector3d>& rows,
              const std::vector<double>& rhs,
              const Eigen::Vector3d& c,
              double box);

}  // namespace setflow::lp
