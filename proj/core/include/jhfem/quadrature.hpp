#pragma once

#include <cstddef>
#include <vector>

namespace jhfem {

/// Gauss-Legendre rule on the reference interval [0, 1].
struct QuadratureRule {
    std::vector<double> points;  ///< strictly increasing, inside (0, 1)
    std::vector<double> weights; ///< positive, summing to 1
    int exactness = 0;           ///< highest monomial degree integrated exactly (2n - 1)

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

inline constexpr int kMaxGaussPoints = 16;

/// The n-point rule, 1 <= n <= 16. Rules are built once and cached for the
/// lifetime of the process; the returned reference never dangles.
const QuadratureRule& gauss_legendre(int n);

/// Minimal point count whose rule integrates degree 3p - 1 exactly, which is
/// what the Jeffery-Hamel residual and Jacobian need: ceil(3p / 2).
int required_points(int degree);

/// Minimal point count n with 2n - 1 >= degree.
int points_for_exactness(int degree);

} // namespace jhfem
