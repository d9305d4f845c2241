#pragma once

#include <cstddef>
#include <vector>

namespace jhfem {

enum class ElementKind { HermiteC1, HierarchicC0 };

/// Element family and polynomial degree. Construct through the factories;
/// they reject degrees this library cannot evaluate.
class ElementFamily {
public:
    static ElementFamily hermite(int degree);    // p in {3, 4, 5}
    static ElementFamily hierarchic(int degree); // p in {1, ..., 5}

    [[nodiscard]] ElementKind kind() const noexcept { return kind_; }
    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int functions_per_element() const noexcept { return degree_ + 1; }
    [[nodiscard]] int dofs_per_node() const noexcept { return kind_ == ElementKind::HermiteC1 ? 2 : 1; }
    [[nodiscard]] int bubbles_per_element() const noexcept
    {
        return functions_per_element() - 2 * dofs_per_node();
    }

    friend bool operator==(const ElementFamily&, const ElementFamily&) = default;

private:
    ElementFamily(ElementKind kind, int degree) : kind_(kind), degree_(degree) {}

    ElementKind kind_;
    int degree_;
};

/// Shape function values and derivatives at one point. Derivatives are with
/// respect to whichever coordinate the producer documents (reference t or
/// physical x). second_derivs is empty for the C0 family.
struct ShapeEval {
    std::vector<double> values;
    std::vector<double> first_derivs;
    std::vector<double> second_derivs;
};

/// C1 Hermite shape functions on [0, 1], ordered
/// (value-left, slope-left, value-right, slope-right, bubbles...).
/// Bubbles: t^2 (1-t)^2 for p = 4, plus t^2 (1-t)^2 (2t - 1) for p = 5.
ShapeEval eval_hermite(int degree, double t);

/// Hierarchic C0 shape functions on [0, 1], ordered (1 - t, t, bubbles of
/// degree 2..p). Bubbles are integrated Legendre polynomials in xi = 2t - 1.
ShapeEval eval_hierarchic(int degree, double t);

ShapeEval eval_reference(const ElementFamily& family, double t);

/// Local indices of the value-left and value-right functions. Their
/// derivatives are exact negatives of each other (partition of unity), which
/// lets derivative evaluation use the coefficient difference.
struct ValuePair {
    std::size_t left;
    std::size_t right;
};
ValuePair value_pair(const ElementFamily& family);

/// sum_a c[a] * d[a] for a derivative table d (first or second), grouping the
/// two value functions as (c_right - c_left) * d_right. This removes the
/// O(1/h) cancellation that otherwise limits residual accuracy on fine meshes.
template <class Coeff>
double combine_derivative(const ValuePair& vp, const std::vector<double>& d, Coeff&& c)
{
    double sum = (c(vp.right) - c(vp.left)) * d[vp.right];
    for (std::size_t a = 0; a < d.size(); ++a) {
        if (a != vp.left && a != vp.right) {
            sum += c(a) * d[a];
        }
    }
    return sum;
}

/// Shape functions of an element of length h, differentiated in the physical
/// coordinate. Hermite slope functions carry a factor h so that their DOFs
/// are physical derivatives df/dx; Hermite bubbles carry h^2.
ShapeEval eval_physical(const ElementFamily& family, double t, double h);

} // namespace jhfem
