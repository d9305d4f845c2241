#pragma once

#include "jhfem/fe_function.hpp"
#include "jhfem/jeffery_hamel.hpp"

#include <vector>

namespace jhfem {

/// (f, f', f'') as the state of the first-order system.
struct IvpState {
    double y0 = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;
};

/// y' = (y1, y2, -2 Re alpha y0 y1 - 4 alpha^2 y1).
IvpState ivp_rhs(const JhProblem& problem, const IvpState& y);

struct IntegrationOptions {
    int grid_intervals = 4096;
    double rel_tol = 1e-12;
    double abs_tol = 1e-13;
};

struct Trajectory {
    std::vector<double> grid; ///< uniform on [0, 1], grid_intervals + 1 points
    std::vector<IvpState> states;
};

/// Integrates from (1, 0, s) at eta = 0 with an adaptive embedded
/// Runge-Kutta-Fehlberg 7(8) pair, landing exactly on every grid point.
/// Throws IntegrationError on step-size underflow.
Trajectory integrate(const JhProblem& problem, double s, const IntegrationOptions& opts = {});

struct ShootingOptions {
    double end_tol = 1e-13;
    int max_iter = 50;
    double s0 = -2.0;
    double s1 = -2.5;
    IntegrationOptions integration;
};

/// Dense, converged shooting solution.
struct ReferenceSolution {
    JhProblem problem;
    double s = 0.0;            ///< y2(0)
    std::vector<double> grid;
    std::vector<IvpState> states;
    double achieved_tol = 0.0; ///< |y0(1)|
    int secant_iterations = 0;

    /// Piecewise quintic Hermite interpolation per grid cell: f from (y0, y1, y2),
    /// f' and f'' from their own derivatives, the higher ones taken from the ODE.
    [[nodiscard]] PointValue eval(double eta) const;
};

/// Secant iteration on g(s) = y0(1; s) until |g| <= end_tol. Throws
/// ShootingError (with the (s, g) history) after max_iter iterations.
ReferenceSolution shoot(const JhProblem& problem, const ShootingOptions& opts = {});

/// Same as ref.eval(eta); throws InvalidArgument outside [0, 1].
PointValue evaluate_reference(const ReferenceSolution& ref, double eta);

} // namespace jhfem
