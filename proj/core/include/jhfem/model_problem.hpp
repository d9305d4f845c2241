#pragma once

#include "jhfem/analysis.hpp"
#include "jhfem/banded.hpp"
#include "jhfem/fe_function.hpp"
#include "jhfem/mesh_dof.hpp"
#include "jhfem/newton.hpp"
#include "jhfem/quadrature.hpp"

#include <span>
#include <string>
#include <vector>

namespace jhfem {

// Linear first-order model problem u' + u = g on (0, 1), u(0) = 1, with
// exact solution u = cos(5 pi x / 2).

enum class Formulation { Galerkin, LeastSquares };

std::string to_string(Formulation f);
Formulation parse_formulation(const std::string& name); // "galerkin" | "least-squares"

struct ModelConfig {
    int degree = 1;
    int n_elem = 1;
    Formulation formulation = Formulation::Galerkin;
};

double forcing(double x);
double model_exact(double x);
double model_exact_derivative(double x);

/// Raw system matrix and load vector, before the u(0) = 1 constraint.
struct LinearSystem {
    BandedMatrix matrix;
    std::vector<double> rhs;
};

/// A_ij = int(-phi_j phi_i' + phi_j phi_i) + phi_j(1) phi_i(1), b_i = int g phi_i.
LinearSystem assemble_galerkin(const ModelConfig& cfg, const DofMap& dofs,
                               const QuadratureRule& rule);

/// A_ij = int(phi_j' + phi_j)(phi_i' + phi_i), b_i = int g (phi_i' + phi_i).
LinearSystem assemble_least_squares(const ModelConfig& cfg, const DofMap& dofs,
                                    const QuadratureRule& rule);

/// The ten-point rule used for every model-problem integral.
const QuadratureRule& model_rule();

/// Hierarchic discretization solved through the Newton driver; converges in
/// one iteration because the residual is affine.
FemSolution solve_model(const ModelConfig& cfg, const NewtonOptions& opts = {});

ErrorNorms model_error(const FemSolution& sol);

/// Convergence study over at least five meshes.
ConvergenceReport model_convergence(int degree, Formulation formulation,
                                    std::span<const int> n_elems, int threads = 1);

} // namespace jhfem
