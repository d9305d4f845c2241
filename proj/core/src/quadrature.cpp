#include "jhfem/quadrature.hpp"

#include "jhfem/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace jhfem {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x)
{
    double p_prev = 1.0;
    double p = x;
    for (int k = 2; k <= n; ++k) {
        const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = p_next;
    }
    const double dp = n * (x * p - p_prev) / (x * x - 1.0);
    return {p, dp};
}

QuadratureRule build_rule(int n)
{
    QuadratureRule rule;
    rule.points.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    rule.exactness = 2 * n - 1;

    if (n == 1) {
        rule.points[0] = 0.5;
        rule.weights[0] = 1.0;
        return rule;
    }

    // Roots come in +/- pairs; solve for the positive half and mirror.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            auto [p, d] = legendre_with_derivative(n, x);
            dp = d;
            const double dx = p / d;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                break;
            }
        }
        dp = legendre_with_derivative(n, x).second;
        const double w = 1.0 / ((1.0 - x * x) * dp * dp); // 2/(...) halved for [0,1]

        // x > 0 here; i-th largest root. Map [-1,1] -> [0,1].
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        const auto lo = static_cast<std::size_t>(i);
        rule.points[hi] = 0.5 * (1.0 + x);
        rule.points[lo] = 0.5 * (1.0 - x);
        rule.weights[hi] = w;
        rule.weights[lo] = w;
    }
    if (n % 2 == 1) {
        rule.points[static_cast<std::size_t>(n / 2)] = 0.5;
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre(int n)
{
    if (n < 1 || n > kMaxGaussPoints) {
        throw InvalidArgument("gauss_legendre: point count " + std::to_string(n) +
                              " outside [1, " + std::to_string(kMaxGaussPoints) + "]");
    }
    static const std::array<QuadratureRule, kMaxGaussPoints> cache = [] {
        std::array<QuadratureRule, kMaxGaussPoints> rules;
        for (int k = 1; k <= kMaxGaussPoints; ++k) {
            rules[static_cast<std::size_t>(k - 1)] = build_rule(k);
        }
        return rules;
    }();
    return cache[static_cast<std::size_t>(n - 1)];
}

int points_for_exactness(int degree)
{
    if (degree < 0) {
        return 1;
    }
    return (degree + 2) / 2; // ceil((degree + 1) / 2)
}

int required_points(int degree)
{
    if (degree < 1) {
        throw InvalidArgument("required_points: degree must be >= 1");
    }
    return points_for_exactness(3 * degree - 1);
}

} // namespace jhfem
