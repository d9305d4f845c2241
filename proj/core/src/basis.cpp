#include "jhfem/basis.hpp"

#include "jhfem/errors.hpp"

#include <cmath>
#include <string>

namespace jhfem {

ElementFamily ElementFamily::hermite(int degree)
{
    if (degree < 3 || degree > 5) {
        throw InvalidArgument("Hermite C1 elements support degree 3..5, got " +
                              std::to_string(degree));
    }
    return {ElementKind::HermiteC1, degree};
}

ElementFamily ElementFamily::hierarchic(int degree)
{
    if (degree < 1 || degree > 5) {
        throw InvalidArgument("hierarchic C0 elements support degree 1..5, got " +
                              std::to_string(degree));
    }
    return {ElementKind::HierarchicC0, degree};
}

ShapeEval eval_hermite(int degree, double t)
{
    if (degree < 3 || degree > 5) {
        throw InvalidArgument("eval_hermite: unsupported degree " + std::to_string(degree));
    }
    const auto n = static_cast<std::size_t>(degree + 1);
    ShapeEval s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};

    const double t2 = t * t;
    const double t3 = t2 * t;

    s.values[0] = 1.0 - 3.0 * t2 + 2.0 * t3;
    s.values[1] = t - 2.0 * t2 + t3;
    s.values[2] = 3.0 * t2 - 2.0 * t3;
    s.values[3] = -t2 + t3;

    s.first_derivs[0] = -6.0 * t + 6.0 * t2;
    s.first_derivs[1] = 1.0 - 4.0 * t + 3.0 * t2;
    s.first_derivs[2] = 6.0 * t - 6.0 * t2;
    s.first_derivs[3] = -2.0 * t + 3.0 * t2;

    s.second_derivs[0] = -6.0 + 12.0 * t;
    s.second_derivs[1] = -4.0 + 6.0 * t;
    s.second_derivs[2] = 6.0 - 12.0 * t;
    s.second_derivs[3] = -2.0 + 6.0 * t;

    if (degree >= 4) {
        const double b = t2 * (1.0 - t) * (1.0 - t);
        const double db = 2.0 * t - 6.0 * t2 + 4.0 * t3;
        const double d2b = 2.0 - 12.0 * t + 12.0 * t2;
        s.values[4] = b;
        s.first_derivs[4] = db;
        s.second_derivs[4] = d2b;

        if (degree == 5) {
            const double odd = 2.0 * t - 1.0;
            s.values[5] = b * odd;
            s.first_derivs[5] = db * odd + 2.0 * b;
            s.second_derivs[5] = d2b * odd + 4.0 * db;
        }
    }
    return s;
}

ShapeEval eval_hierarchic(int degree, double t)
{
    if (degree < 1 || degree > 5) {
        throw InvalidArgument("eval_hierarchic: unsupported degree " + std::to_string(degree));
    }
    const auto n = static_cast<std::size_t>(degree + 1);
    ShapeEval s{std::vector<double>(n), std::vector<double>(n), {}};

    s.values[0] = 1.0 - t;
    s.values[1] = t;
    s.first_derivs[0] = -1.0;
    s.first_derivs[1] = 1.0;

    if (degree >= 2) {
        // Legendre P_0..P_degree at xi.
        const double xi = 2.0 * t - 1.0;
        std::vector<double> leg(n);
        leg[0] = 1.0;
        leg[1] = xi;
        for (std::size_t k = 2; k < n; ++k) {
            const double kk = static_cast<double>(k);
            leg[k] = ((2.0 * kk - 1.0) * xi * leg[k - 1] - (kk - 1.0) * leg[k - 2]) / kk;
        }
        // (P_{k-2} - P_k) / sqrt(2(2k-1)): positive quadratic bubble; its
        // xi-derivative is -sqrt((2k-1)/2) P_{k-1}.
        for (std::size_t k = 2; k < n; ++k) {
            const double kk = static_cast<double>(k);
            const double scale = std::sqrt(2.0 * (2.0 * kk - 1.0));
            s.values[k] = (leg[k - 2] - leg[k]) / scale;
            s.first_derivs[k] = -2.0 * (2.0 * kk - 1.0) * leg[k - 1] / scale;
        }
    }
    return s;
}

ShapeEval eval_reference(const ElementFamily& family, double t)
{
    return family.kind() == ElementKind::HermiteC1 ? eval_hermite(family.degree(), t)
                                                   : eval_hierarchic(family.degree(), t);
}

ValuePair value_pair(const ElementFamily& family)
{
    return family.kind() == ElementKind::HermiteC1 ? ValuePair{0, 2} : ValuePair{0, 1};
}

ShapeEval eval_physical(const ElementFamily& family, double t, double h)
{
    ShapeEval s = eval_reference(family, t);
    const double inv_h = 1.0 / h;
    const double inv_h2 = inv_h * inv_h;
    for (auto& d : s.first_derivs) {
        d *= inv_h;
    }
    for (auto& d : s.second_derivs) {
        d *= inv_h2;
    }
    if (family.kind() == ElementKind::HermiteC1) {
        for (std::size_t i : {std::size_t{1}, std::size_t{3}}) {
            s.values[i] *= h;
            s.first_derivs[i] *= h;
            s.second_derivs[i] *= h;
        }
        // Bubbles scale like h^2 so their rows of the third-order residual
        // stay O(1) under refinement instead of O(1/h^2).
        const double h2 = h * h;
        for (std::size_t i = 4; i < s.values.size(); ++i) {
            s.values[i] *= h2;
            s.first_derivs[i] *= h2;
            s.second_derivs[i] *= h2;
        }
    }
    return s;
}

} // namespace jhfem
