#pragma once

#include "jhfem/jeffery_hamel.hpp"
#include "jhfem/mesh_dof.hpp"

#include <cstdint>

namespace jhfem {

/// Worst entrywise disagreement between assemble_jacobian and a central
/// difference of assemble_residual, measured as |J - FD| / max(1, |FD|).
/// Coefficients are drawn uniformly from [-1, 1] (constrained slots keep
/// their prescribed values). The step for DOF j is step * max(1, |c_j|).
struct JacobianCheck {
    double max_violation = 0.0;
    int vectors = 0;
};

JacobianCheck jacobian_fd_check(const JhProblem& problem, const DofMap& dofs, int n_vectors,
                                std::uint64_t seed, double step = 1e-6);

/// max_k |Q(x^k) - 1/(k+1)| over 0 <= k <= 2n - 1 for the n-point rule.
double quadrature_exactness_defect(int n_points);

} // namespace jhfem
