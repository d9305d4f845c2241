#pragma once

#include "jhfem/banded.hpp"
#include "jhfem/mesh_dof.hpp"

#include <functional>
#include <span>
#include <vector>

namespace jhfem {

struct NewtonOptions {
    double tol = 1e-12;   ///< on the infinity norm of unconstrained residual entries
    int max_iter = 25;
    double damping = 1.0; ///< update scale; 1 is plain Newton
};

struct NewtonResult {
    std::vector<double> x; ///< final iterate if converged, else the best one seen
    bool converged = false;
    int iterations = 0;    ///< linear solves performed
    double final_norm = 0.0;
    std::vector<double> history; ///< residual norm at every iterate, starting with x0
};

using ResidualFn = std::function<std::vector<double>(std::span<const double>)>;
using JacobianFn = std::function<BandedMatrix(std::span<const double>)>;

/// Infinity norm over the unconstrained entries of r.
double free_residual_norm(const DofMap& dofs, std::span<const double> r);

/// Newton iteration x <- x - damping * J(x)^{-1} R(x) with a banded LU per
/// step. Constrained rows are expected to carry (x_i - prescribed_i) in R and
/// identity rows in J; after every update they are reset to their prescribed
/// values exactly. SingularMatrixError from the factorization propagates.
NewtonResult newton_iterate(const ResidualFn& residual, const JacobianFn& jacobian,
                            const DofMap& dofs, std::vector<double> x0,
                            const NewtonOptions& opts = {});

} // namespace jhfem
