#include "setflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "setflow/rng.hpp"

namespace setflow::lp {
namespace {

constexpr double kEps = 1e-11;

struct Row1 {
    double a, b;  // a*z <= b
};

// min c*z on [-box, box] under rows. Returns nullopt when infeasible.
std::optional<double> solve1(const std::vector<Row1>& rows, double c, double box) {
    double lo = -box, hi = box;
    for (const Row1& r : rows) {
        const double scale = 1.0 + std::abs(r.b);
        if (std::abs(r.a) <= kEps * scale) {
            if (r.b < -kEps * scale) return std::nullopt;
            continue;
        }
        const double z = r.b / r.a;
        if (r.a > 0.0) hi = std::min(hi, z);
        else lo = std::max(lo, z);
    }
    if (lo > hi + kEps * (1.0 + std::abs(lo) + std::abs(hi))) return std::nullopt;
    hi = std::max(hi, lo);
    if (c > 0.0) return lo;
    if (c < 0.0) return hi;
    return std::clamp(0.0, lo, hi);
}

struct Row2 {
    Eigen::Vector2d a;
    double b;
};

std::optional<Eigen::Vector2d> solve2(const std::vector<Row2>& rows,
                                      const Eigen::Vector2d& c, double box, Rng& rng) {
    Eigen::Vector2d x;
    x.x() = c.x() > 0.0 ? -box : (c.x() < 0.0 ? box : 0.0);
    x.y() = c.y() > 0.0 ? -box : (c.y() < 0.0 ? box : 0.0);

    std::vector<int> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(static_cast<std::uint32_t>(i))]);

    for (std::size_t k = 0; k < order.size(); ++k) {
        const Row2& r = rows[order[k]];
        const double scale = 1.0 + std::abs(r.b) + r.a.norm() * x.norm();
        if (r.a.dot(x) <= r.b + kEps * scale) continue;

        // Optimum lies on r.a.dot(x) == r.b. Parameterize by the tangent.
        const double na = r.a.norm();
        if (na <= kEps) return std::nullopt;  // 0 <= b violated above
        const Eigen::Vector2d n = r.a / na;
        const Eigen::Vector2d t(-n.y(), n.x());
        const Eigen::Vector2d p = n * (r.b / na);

        std::vector<Row1> sub;
        sub.reserve(k + 4);
        for (std::size_t j = 0; j < k; ++j) {
            const Row2& q = rows[order[j]];
            sub.push_back({q.a.dot(t), q.b - q.a.dot(p)});
        }
        // Original box |x_i| <= box restated on the line.
        sub.push_back({t.x(), box - p.x()});
        sub.push_back({-t.x(), box + p.x()});
        sub.push_back({t.y(), box - p.y()});
        sub.push_back({-t.y(), box + p.y()});

        auto z = solve1(sub, c.dot(t), 2.0 * box);
        if (!z) return std::nullopt;
        x = p + t * (*z);
    }
    return x;
}

}  // namespace

Result solve3(const std::vector<Eigen::Vector3d>& rows,
              const std::vector<double>& rhs,
              const Eigen::Vector3d& c, double box) {
    Rng rng(0x5e7f70c1u ^ (static_cast<std::uint64_t>(rows.size()) << 32));

    Eigen::Vector3d x;
    for (int i = 0; i < 3; ++i)
        x(i) = c(i) > 0.0 ? -box : (c(i) < 0.0 ? box : 0.0);

    std::vector<int> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(static_cast<std::uint32_t>(i))]);

    Result res;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Eigen::Vector3d& a = rows[order[k]];
        const double b = rhs[order[k]];
        const double scale = 1.0 + std::abs(b) + a.norm() * x.norm();
        if (a.dot(x) <= b + kEps * scale) continue;

        const double na = a.norm();
        if (na <= kEps) return res;  // infeasible: 0 <= negative
        const Eigen::Vector3d n = a / na;
        // Orthonormal basis of the constraint plane.
        Eigen::Vector3d u = n.cross(std::abs(n.z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                          : Eigen::Vector3d::UnitX());
        u.normalize();
        const Eigen::Vector3d v = n.cross(u);
        const Eigen::Vector3d p = n * (b / na);

        std::vector<Row2> sub;
        sub.reserve(k + 6);
        for (std::size_t j = 0; j < k; ++j) {
            const Eigen::Vector3d& q = rows[order[j]];
            sub.push_back({{q.dot(u), q.dot(v)}, rhs[order[j]] - q.dot(p)});
        }
        for (int i = 0; i < 3; ++i) {
            Eigen::Vector3d e = Eigen::Vector3d::Zero();
            e(i) = 1.0;
            sub.push_back({{u(i), v(i)}, box - p(i)});
            sub.push_back({{-u(i), -v(i)}, box + p(i)});
        }

        auto z = solve2(sub, {c.dot(u), c.dot(v)}, 2.0 * box, rng);
        if (!z) return res;
        x = p + u * z->x() + v * z->y();
    }
    res.feasible = true;
    res.x = x;
    res.value = c.dot(x);
    return res;
}

}  // namespace setflow::lp
