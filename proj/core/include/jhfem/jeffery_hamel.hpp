#pragma once

#include "jhfem/banded.hpp"
#include "jhfem/fe_function.hpp"
#include "jhfem/mesh_dof.hpp"
#include "jhfem/newton.hpp"
#include "jhfem/quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace jhfem {

struct FluidProps {
    double nu = 0.0;  ///< kinematic viscosity, L^2/T
    double rho = 0.0; ///< density, M/L^3
    double mu = 0.0;  ///< dynamic viscosity rho * nu

    static FluidProps from_nu_rho(double nu, double rho);
};

/// Reynolds number and wedge half-angle (radians). alpha = 0 is accepted as
/// the Poiseuille limit of the ODE (f''' = 0 when Re = 0); everything that
/// divides by alpha rejects it.
struct JhProblem {
    double reynolds = 0.0;
    double alpha = 0.0;
    std::optional<FluidProps> fluid;

    static JhProblem make(double reynolds, double alpha_radians);
    static JhProblem from_degrees(double reynolds, double alpha_degrees);

    void validate() const;

    /// lambda = Re * nu / alpha.
    [[nodiscard]] double lambda(double nu) const;
};

double degrees_to_radians(double degrees);

struct AssemblyOptions {
    /// Include the natural boundary term -f'(1) phi_i'(1). Only switched off
    /// to isolate that term in tests.
    bool boundary_term = true;
};

/// R_i = int f'(phi_i'' + 2 Re alpha f phi_i + 4 alpha^2 phi_i) - f'(1) phi_i'(1)
/// for free i; constrained rows carry (coeff - prescribed).
std::vector<double> assemble_residual(const JhProblem& problem, const DofMap& dofs,
                                      std::span<const double> coeffs,
                                      const QuadratureRule& rule,
                                      const AssemblyOptions& opts = {});

/// dR_i/dc_j; constrained rows are identity rows.
BandedMatrix assemble_jacobian(const JhProblem& problem, const DofMap& dofs,
                               std::span<const double> coeffs, const QuadratureRule& rule,
                               const AssemblyOptions& opts = {});

/// Hermite interpolant of 1 - eta^2 (bubbles zero).
std::vector<double> poiseuille_initial_guess(const DofMap& dofs);

struct SolverOptions {
    NewtonOptions newton;
    /// Gauss points per element; 0 selects required_points(p).
    int quadrature_points = 0;
};

/// Newton solve on a Hermite discretization. Non-convergence is reported via
/// FemSolution::converged, not thrown.
FemSolution newton_solve(const JhProblem& problem, const Mesh1D& mesh,
                         const ElementFamily& family, const SolverOptions& opts = {});

} // namespace jhfem
