#include "jhfem/jeffery_hamel.hpp"

#include "jhfem/errors.hpp"
#include "shape_table.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace jhfem {

FluidProps FluidProps::from_nu_rho(double nu, double rho)
{
    if (!(nu > 0.0) || !(rho > 0.0) || !std::isfinite(nu) || !std::isfinite(rho)) {
        throw InvalidArgument("FluidProps: nu and rho must be positive and finite");
    }
    return {nu, rho, rho * nu};
}

JhProblem JhProblem::make(double reynolds, double alpha_radians)
{
    JhProblem p{reynolds, alpha_radians, std::nullopt};
    p.validate();
    return p;
}

JhProblem JhProblem::from_degrees(double reynolds, double alpha_degrees)
{
    return make(reynolds, degrees_to_radians(alpha_degrees));
}

void JhProblem::validate() const
{
    if (!std::isfinite(reynolds)) {
        throw InvalidArgument("JhProblem: Reynolds number must be finite");
    }
    if (!(alpha >= 0.0 && alpha < std::numbers::pi / 2)) {
        throw InvalidArgument("JhProblem: alpha must lie in [0, pi/2), got " +
                              std::to_string(alpha));
    }
}

double JhProblem::lambda(double nu) const
{
    if (!(alpha > 0.0)) {
        throw InvalidArgument("JhProblem::lambda: alpha must be positive");
    }
    return reynolds * nu / alpha;
}

double degrees_to_radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

namespace {

void check_inputs(const DofMap& dofs, std::span<const double> coeffs, const QuadratureRule& rule)
{
    const int p = dofs.family().degree();
    if (dofs.family().kind() != ElementKind::HermiteC1) {
        throw InvalidArgument("Jeffery-Hamel assembly requires a Hermite C1 family");
    }
    if (rule.exactness < 3 * p - 1) {
        throw InvalidArgument("Jeffery-Hamel assembly: quadrature exact to degree " +
                              std::to_string(rule.exactness) + " < 3p - 1 = " +
                              std::to_string(3 * p - 1));
    }
    if (coeffs.size() != static_cast<std::size_t>(dofs.n_global())) {
        throw InvalidArgument("Jeffery-Hamel assembly: coefficient vector length mismatch");
    }
}

} // namespace

std::vector<double> assemble_residual(const JhProblem& problem, const DofMap& dofs,
                                      std::span<const double> coeffs,
                                      const QuadratureRule& rule, const AssemblyOptions& opts)
{
    check_inputs(dofs, coeffs, rule);
    const double nonlin = 2.0 * problem.reynolds * problem.alpha;
    const double lin = 4.0 * problem.alpha * problem.alpha;
    const auto n = static_cast<std::size_t>(dofs.n_global());
    const int n_elem = dofs.mesh().n_elem();
    const detail::ShapeTable table(dofs.family(), dofs.mesh().h(), rule);
    const ValuePair vp = value_pair(dofs.family());

    // int f' phi_i'' is evaluated as int (f' - m) phi_i'' + m [phi_i'] with m
    // the element mean of f'. The rule integrates phi_i'' exactly, so this is
    // the same sum, but its terms are O(h |f''|) instead of O(|f'| / h).
    const std::size_t nq = table.at_points.size();
    std::vector<double> f_q(nq);
    std::vector<double> fp_q(nq);
    std::vector<double> r(n, 0.0);
    for (int e = 0; e < n_elem; ++e) {
        const auto idx = dofs.element_dofs(e);
        auto c = [&](std::size_t a) { return coeffs[static_cast<std::size_t>(idx[a])]; };
        double mean = 0.0;
        for (std::size_t q = 0; q < nq; ++q) {
            const ShapeEval& s = table.at_points[q];
            double f = 0.0;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                f += c(a) * s.values[a];
            }
            f_q[q] = f;
            fp_q[q] = combine_derivative(vp, s.first_derivs, c);
            mean += rule.weights[q] * fp_q[q];
        }
        for (std::size_t a = 0; a < idx.size(); ++a) {
            const double jump = table.right_end.first_derivs[a] - table.left_end.first_derivs[a];
            double sum = mean * jump;
            for (std::size_t q = 0; q < nq; ++q) {
                const ShapeEval& s = table.at_points[q];
                sum += table.weights[q] * ((fp_q[q] - mean) * s.second_derivs[a] +
                                           fp_q[q] * (nonlin * f_q[q] + lin) * s.values[a]);
            }
            r[static_cast<std::size_t>(idx[a])] += sum;
        }
    }

    if (opts.boundary_term) {
        const auto idx = dofs.element_dofs(n_elem - 1);
        const ShapeEval& s = table.right_end;
        const double fp1 = combine_derivative(
            vp, s.first_derivs, [&](std::size_t a) { return coeffs[static_cast<std::size_t>(idx[a])]; });
        for (std::size_t a = 0; a < idx.size(); ++a) {
            r[static_cast<std::size_t>(idx[a])] -= fp1 * s.first_derivs[a];
        }
    }

    for (const auto& [dof, value] : dofs.constraints()) {
        r[static_cast<std::size_t>(dof)] = coeffs[static_cast<std::size_t>(dof)] - value;
    }
    return r;
}

BandedMatrix assemble_jacobian(const JhProblem& problem, const DofMap& dofs,
                               std::span<const double> coeffs, const QuadratureRule& rule,
                               const AssemblyOptions& opts)
{
    check_inputs(dofs, coeffs, rule);
    const double nonlin = 2.0 * problem.reynolds * problem.alpha;
    const double lin = 4.0 * problem.alpha * problem.alpha;
    const int n_elem = dofs.mesh().n_elem();
    const detail::ShapeTable table(dofs.family(), dofs.mesh().h(), rule);
    const ValuePair vp = value_pair(dofs.family());

    BandedMatrix jac(static_cast<std::size_t>(dofs.n_global()),
                     static_cast<std::size_t>(dofs.half_bandwidth()));
    for (int e = 0; e < n_elem; ++e) {
        const auto idx = dofs.element_dofs(e);
        for (std::size_t q = 0; q < table.at_points.size(); ++q) {
            const ShapeEval& s = table.at_points[q];
            auto c = [&](std::size_t a) { return coeffs[static_cast<std::size_t>(idx[a])]; };
            double f = 0.0;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                f += c(a) * s.values[a];
            }
            const double fp = combine_derivative(vp, s.first_derivs, c);
            const double w = table.weights[q];
            const double zeroth = nonlin * f + lin;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                const double test = s.second_derivs[i] + zeroth * s.values[i];
                const double coupling = fp * nonlin * s.values[i];
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    jac.add(static_cast<std::size_t>(idx[i]), static_cast<std::size_t>(idx[j]),
                            w * (coupling * s.values[j] + s.first_derivs[j] * test));
                }
            }
        }
    }

    if (opts.boundary_term) {
        const auto idx = dofs.element_dofs(n_elem - 1);
        const ShapeEval& s = table.right_end;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            for (std::size_t j = 0; j < idx.size(); ++j) {
                jac.add(static_cast<std::size_t>(idx[i]), static_cast<std::size_t>(idx[j]),
                        -s.first_derivs[j] * s.first_derivs[i]);
            }
        }
    }

    for (const auto& [dof, value] : dofs.constraints()) {
        jac.set_identity_row(static_cast<std::size_t>(dof));
    }
    return jac;
}

std::vector<double> poiseuille_initial_guess(const DofMap& dofs)
{
    std::vector<double> c = interpolate_nodal(
                                dofs, [](double x) { return 1.0 - x * x; },
                                [](double x) { return -2.0 * x; })
                                .coeffs();
    for (const auto& [dof, value] : dofs.constraints()) {
        c[static_cast<std::size_t>(dof)] = value;
    }
    return c;
}

FemSolution newton_solve(const JhProblem& problem, const Mesh1D& mesh,
                         const ElementFamily& family, const SolverOptions& opts)
{
    problem.validate();
    if (family.kind() != ElementKind::HermiteC1) {
        throw InvalidArgument("newton_solve: Jeffery-Hamel needs a Hermite C1 family");
    }
    const auto conditions = jeffery_hamel_conditions();
    DofMap dofs(mesh, family, conditions);
    const int n_points =
        opts.quadrature_points > 0 ? opts.quadrature_points : required_points(family.degree());
    const QuadratureRule& rule = gauss_legendre(n_points);

    NewtonResult nr = newton_iterate(
        [&](std::span<const double> c) { return assemble_residual(problem, dofs, c, rule); },
        [&](std::span<const double> c) { return assemble_jacobian(problem, dofs, c, rule); },
        dofs, poiseuille_initial_guess(dofs), opts.newton);

    return FemSolution{FeFunction(std::move(dofs), std::move(nr.x)), nr.converged, nr.iterations,
                       nr.final_norm, std::move(nr.history)};
}

} // namespace jhfem
