#include "jhfem/newton.hpp"

#include "jhfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jhfem {

double free_residual_norm(const DofMap& dofs, std::span<const double> r)
{
    double norm = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!dofs.is_constrained(static_cast<int>(i))) {
            const double v = std::abs(r[i]);
            // NaN must not compare as converged.
            if (std::isnan(v)) {
                return std::numeric_limits<double>::infinity();
            }
            norm = std::max(norm, v);
        }
    }
    return norm;
}

NewtonResult newton_iterate(const ResidualFn& residual, const JacobianFn& jacobian,
                            const DofMap& dofs, std::vector<double> x0,
                            const NewtonOptions& opts)
{
    if (opts.max_iter < 0 || !(opts.tol > 0.0) || !(opts.damping > 0.0)) {
        throw InvalidArgument("newton_iterate: need max_iter >= 0, tol > 0, damping > 0");
    }
    NewtonResult result;
    std::vector<double> x = std::move(x0);
    std::vector<double> best_x = x;
    double best_norm = std::numeric_limits<double>::infinity();

    for (int it = 0;; ++it) {
        const std::vector<double> r = residual(x);
        const double norm = free_residual_norm(dofs, r);
        result.history.push_back(norm);
        if (norm < best_norm) {
            best_norm = norm;
            best_x = x;
        }
        result.iterations = it;
        if (norm <= opts.tol) {
            result.converged = true;
            result.final_norm = norm;
            result.x = std::move(x);
            return result;
        }
        if (it == opts.max_iter || !std::isfinite(norm)) {
            break;
        }
        const std::vector<double> dx = solve_banded(jacobian(x), r);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] -= opts.damping * dx[i];
        }
        // Pivoting leaves rounding noise in the constrained rows of dx; the
        // exact update puts those entries on their prescribed values.
        for (const auto& [dof, value] : dofs.constraints()) {
            x[static_cast<std::size_t>(dof)] = value;
        }
    }
    result.final_norm = best_norm;
    result.x = std::move(best_x);
    return result;
}

} // namespace jhfem
