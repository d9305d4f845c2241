#pragma once

#include "jhfem/fe_function.hpp"
#include "jhfem/jeffery_hamel.hpp"
#include "jhfem/quadrature.hpp"
#include "jhfem/shooting.hpp"

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jhfem {

struct ErrorNorms {
    double l2 = 0.0;
    double h1 = 0.0; ///< full norm sqrt(|e|_0^2 + |e'|_0^2)
    int n_elem = 0;
    int degree = 0;
};

/// Element-wise quadrature of (u_h - u)^2 and (u_h' - u')^2.
ErrorNorms error_norms_exact(const FeFunction& uh, const std::function<double(double)>& u,
                             const std::function<double(double)>& du,
                             const QuadratureRule& rule);

/// Error of a finite element solution against the shooting reference. The
/// rule must be exact to degree 2p + 4.
ErrorNorms error_norms(const FemSolution& fem, const ReferenceSolution& ref,
                       const QuadratureRule& rule);

struct RateFit {
    double slope_l2 = 0.0;
    double slope_h1 = 0.0;
    std::vector<std::string> notices; ///< rows dropped because an error was zero
};

/// Least-squares slope of log(error) against log(1/N) over the finest four
/// rows (all rows if fewer). Needs at least three rows.
RateFit fit_rates(std::span<const ErrorNorms> rows);

struct ConvergenceReport {
    std::string case_label;
    int degree = 0;
    std::vector<ErrorNorms> rows; ///< ascending n_elem
    double slope_l2 = 0.0;
    double slope_h1 = 0.0;
    std::vector<std::string> notices;
};

/// Solves at each mesh size with Hermite elements of the given degree and
/// measures errors against `ref`. Independent meshes run on up to `threads`
/// workers. Throws ConvergenceError if any Newton solve fails.
ConvergenceReport jh_convergence(const JhProblem& problem, int degree,
                                 std::span<const int> n_elems, const ReferenceSolution& ref,
                                 int threads = 1);

/// Pressure constant from the slope at the wall.
double compute_K(const JhProblem& problem, double fp1);

struct WedgeFieldConfig {
    JhProblem problem;
    FluidProps fluid;
    double p_star = 0.0; ///< pinned pressure constant (Pa)
    double K = 0.0;
    double lambda = 0.0; ///< Re * nu / alpha

    static WedgeFieldConfig make(const JhProblem& problem, const FluidProps& fluid,
                                 double p_star, double fp1);
};

struct FieldSample {
    double r = 0.0;
    double theta = 0.0;
    double u_r = 0.0;
    double p = 0.0;
};

using Profile = std::function<double(double)>;

/// u_r = (lambda / r) f(|theta| / alpha), p = p* + (2 mu lambda / r^2)(f + K).
std::vector<FieldSample> wedge_fields(const WedgeFieldConfig& cfg, const Profile& f,
                                      std::span<const std::pair<double, double>> points);

Profile profile_of(const FemSolution& fem);
Profile profile_of(const ReferenceSolution& ref);

struct DualityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double difference = 0.0;
};

/// Evaluates <A(f_h), f_h> by quadrature (rule exact to degree 3p) plus its
/// boundary terms, and the closed form obtained by integrating exactly.
DualityCheck duality_pairing_check(const FemSolution& fem, const JhProblem& problem);

} // namespace jhfem
