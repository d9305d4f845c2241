#include "jhfem/fe_function.hpp"

#include "jhfem/errors.hpp"

#include <string>

namespace jhfem {

FeFunction::FeFunction(DofMap dofs, std::vector<double> coeffs)
    : dofs_(std::move(dofs)), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != static_cast<std::size_t>(dofs_.n_global())) {
        throw InvalidArgument("FeFunction: " + std::to_string(coeffs_.size()) +
                              " coefficients for " + std::to_string(dofs_.n_global()) + " DOFs");
    }
}

PointValue FeFunction::eval_in_element(int elem, double t) const
{
    const ShapeEval s = eval_physical(family(), t, mesh().h());
    const auto idx = dofs_.element_dofs(elem);
    auto c = [&](std::size_t a) { return coeffs_[static_cast<std::size_t>(idx[a])]; };
    const ValuePair vp = value_pair(family());
    PointValue out;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        out.f += c(a) * s.values[a];
    }
    out.fp = combine_derivative(vp, s.first_derivs, c);
    if (!s.second_derivs.empty()) {
        out.fpp = combine_derivative(vp, s.second_derivs, c);
    }
    return out;
}

PointValue FeFunction::eval(double x) const
{
    const auto loc = mesh().locate(x);
    return eval_in_element(loc.elem, loc.t);
}

FeFunction interpolate_nodal(const DofMap& dofs, const std::function<double(double)>& f,
                             const std::function<double(double)>& fp)
{
    std::vector<double> c(static_cast<std::size_t>(dofs.n_global()), 0.0);
    const auto& nodes = dofs.mesh().nodes();
    const bool hermite = dofs.family().kind() == ElementKind::HermiteC1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int node = static_cast<int>(i);
        c[static_cast<std::size_t>(dofs.nodal_dof(node, NodalDof::Value))] = f(nodes[i]);
        if (hermite && fp) {
            c[static_cast<std::size_t>(dofs.nodal_dof(node, NodalDof::Slope))] = fp(nodes[i]);
        }
    }
    return FeFunction(dofs, std::move(c));
}

} // namespace jhfem
