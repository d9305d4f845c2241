#pragma once

#include "jhfem/mesh_dof.hpp"

#include <functional>
#include <vector>

namespace jhfem {

/// Value and first two derivatives at a point.
struct PointValue {
    double f = 0.0;
    double fp = 0.0;
    double fpp = 0.0;
};

/// A finite element function: DOF map plus coefficient vector.
class FeFunction {
public:
    FeFunction(DofMap dofs, std::vector<double> coeffs);

    [[nodiscard]] const DofMap& dofs() const noexcept { return dofs_; }
    [[nodiscard]] const Mesh1D& mesh() const noexcept { return dofs_.mesh(); }
    [[nodiscard]] const ElementFamily& family() const noexcept { return dofs_.family(); }
    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /// f, f', f'' at x in [0, 1]. Interior nodes are evaluated from the
    /// element on the right, so eval(0).fpp is f''(0+) and eval(1).fpp is
    /// f''(1-). fpp is 0 for the C0 family.
    [[nodiscard]] PointValue eval(double x) const;

    /// Same, restricted to element `elem` at reference coordinate t.
    [[nodiscard]] PointValue eval_in_element(int elem, double t) const;

private:
    DofMap dofs_;
    std::vector<double> coeffs_;
};

/// Interpolate (f, f') into the nodal DOFs of `dofs`; bubbles are zero. For
/// the C0 family only f is used.
FeFunction interpolate_nodal(const DofMap& dofs, const std::function<double(double)>& f,
                             const std::function<double(double)>& fp = {});

/// Result of a finite element solve. A non-converged result still carries the
/// best iterate and the full residual history.
struct FemSolution {
    FeFunction solution;
    bool converged = false;
    int newton_iters = 0;
    double final_residual_norm = 0.0;
    std::vector<double> residual_history;

    [[nodiscard]] const Mesh1D& mesh() const noexcept { return solution.mesh(); }
    [[nodiscard]] const ElementFamily& family() const noexcept { return solution.family(); }
    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return solution.coeffs(); }
    [[nodiscard]] PointValue eval(double x) const { return solution.eval(x); }
};

} // namespace jhfem
