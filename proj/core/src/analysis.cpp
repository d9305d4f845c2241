#include "jhfem/analysis.hpp"

#include "jhfem/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>

namespace jhfem {

ErrorNorms error_norms_exact(const FeFunction& uh, const std::function<double(double)>& u,
                             const std::function<double(double)>& du,
                             const QuadratureRule& rule)
{
    const Mesh1D& mesh = uh.mesh();
    const double h = mesh.h();
    double l2_sq = 0.0;
    double d1_sq = 0.0;
    for (int e = 0; e < mesh.n_elem(); ++e) {
        const double x0 = mesh.left(e);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double t = rule.points[q];
            const double x = x0 + t * h;
            const PointValue v = uh.eval_in_element(e, t);
            const double w = rule.weights[q] * h;
            const double e0 = v.f - u(x);
            const double e1 = v.fp - du(x);
            l2_sq += w * e0 * e0;
            d1_sq += w * e1 * e1;
        }
    }
    return {std::sqrt(l2_sq), std::sqrt(l2_sq + d1_sq), mesh.n_elem(), uh.family().degree()};
}

ErrorNorms error_norms(const FemSolution& fem, const ReferenceSolution& ref,
                       const QuadratureRule& rule)
{
    const int p = fem.family().degree();
    if (rule.exactness < 2 * p + 4) {
        throw InvalidArgument("error_norms: rule must be exact to degree 2p + 4");
    }
    return error_norms_exact(
        fem.solution, [&ref](double x) { return ref.eval(x).f; },
        [&ref](double x) { return ref.eval(x).fp; }, rule);
}

namespace {

// Least-squares slope of y against x; NaN when fewer than two points.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    if (n < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

std::string format_case(const JhProblem& problem)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "Re=%g,alpha=%gdeg", problem.reynolds,
                  problem.alpha * 180.0 / std::numbers::pi);
    return buf;
}

} // namespace

RateFit fit_rates(std::span<const ErrorNorms> rows)
{
    if (rows.size() < 3) {
        throw InvalidArgument("fit_rates: need at least 3 rows");
    }
    std::vector<ErrorNorms> sorted(rows.begin(), rows.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const ErrorNorms& a, const ErrorNorms& b) { return a.n_elem < b.n_elem; });
    const std::size_t first = sorted.size() > 4 ? sorted.size() - 4 : 0;

    RateFit fit;
    std::vector<double> x_l2, y_l2, x_h1, y_h1;
    for (std::size_t i = first; i < sorted.size(); ++i) {
        const ErrorNorms& r = sorted[i];
        const double x = -std::log(static_cast<double>(r.n_elem));
        if (r.l2 > 0.0) {
            x_l2.push_back(x);
            y_l2.push_back(std::log(r.l2));
        } else {
            fit.notices.push_back("L2 error is zero at N=" + std::to_string(r.n_elem) +
                                  "; row excluded from the L2 fit");
        }
        if (r.h1 > 0.0) {
            x_h1.push_back(x);
            y_h1.push_back(std::log(r.h1));
        } else {
            fit.notices.push_back("H1 error is zero at N=" + std::to_string(r.n_elem) +
                                  "; row excluded from the H1 fit");
        }
    }
    fit.slope_l2 = ls_slope(x_l2, y_l2);
    fit.slope_h1 = ls_slope(x_h1, y_h1);
    return fit;
}

ConvergenceReport jh_convergence(const JhProblem& problem, int degree,
                                 std::span<const int> n_elems, const ReferenceSolution& ref,
                                 int threads)
{
    const ElementFamily family = ElementFamily::hermite(degree);
    const QuadratureRule& rule = gauss_legendre(points_for_exactness(2 * degree + 4));

    ConvergenceReport report;
    report.case_label = format_case(problem);
    report.degree = degree;
    report.rows.resize(n_elems.size());
    detail::parallel_for(static_cast<int>(n_elems.size()), threads, [&](int i) {
        const int n = n_elems[static_cast<std::size_t>(i)];
        const FemSolution fem = newton_solve(problem, Mesh1D(n), family);
        if (!fem.converged) {
            throw ConvergenceError("Newton did not converge for N=" + std::to_string(n) +
                                       ", p=" + std::to_string(degree),
                                   fem.residual_history);
        }
        report.rows[static_cast<std::size_t>(i)] = error_norms(fem, ref, rule);
    });
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ErrorNorms& a, const ErrorNorms& b) { return a.n_elem < b.n_elem; });
    if (report.rows.size() >= 3) {
        RateFit fit = fit_rates(report.rows);
        report.slope_l2 = fit.slope_l2;
        report.slope_h1 = fit.slope_h1;
        report.notices = std::move(fit.notices);
    } else {
        report.slope_l2 = report.slope_h1 = std::numeric_limits<double>::quiet_NaN();
        report.notices.emplace_back("fewer than 3 meshes; rates not fitted");
    }
    return report;
}

double compute_K(const JhProblem& problem, double fp1)
{
    const double a = problem.alpha;
    if (!(a > 0.0)) {
        throw InvalidArgument("compute_K: alpha must be positive");
    }
    return (0.5 * fp1 * fp1 - a * problem.reynolds / 3.0 - 2.0 * a * a) / (4.0 * a * a);
}

WedgeFieldConfig WedgeFieldConfig::make(const JhProblem& problem, const FluidProps& fluid,
                                        double p_star, double fp1)
{
    return {problem, fluid, p_star, compute_K(problem, fp1), problem.lambda(fluid.nu)};
}

std::vector<FieldSample> wedge_fields(const WedgeFieldConfig& cfg, const Profile& f,
                                      std::span<const std::pair<double, double>> points)
{
    const double alpha = cfg.problem.alpha;
    const double two_mu_lambda = 2.0 * cfg.fluid.mu * cfg.lambda;
    std::vector<FieldSample> out;
    out.reserve(points.size());
    for (const auto& [r, theta] : points) {
        if (!(r > 0.0)) {
            throw InvalidArgument("wedge_fields: r must be positive (the origin is singular)");
        }
        if (!(std::abs(theta) <= alpha)) {
            throw OutOfWedgeError("wedge_fields: |theta| = " + std::to_string(std::abs(theta)) +
                                  " exceeds alpha = " + std::to_string(alpha));
        }
        const double eta = std::min(std::abs(theta) / alpha, 1.0);
        const double fv = f(eta);
        out.push_back({r, theta, cfg.lambda / r * fv, cfg.p_star + two_mu_lambda / (r * r) * (fv + cfg.K)});
    }
    return out;
}

Profile profile_of(const FemSolution& fem)
{
    auto held = std::make_shared<const FemSolution>(fem);
    return [held](double eta) { return held->eval(eta).f; };
}

Profile profile_of(const ReferenceSolution& ref)
{
    auto held = std::make_shared<const ReferenceSolution>(ref);
    return [held](double eta) { return held->eval(eta).f; };
}

DualityCheck duality_pairing_check(const FemSolution& fem, const JhProblem& problem)
{
    const int p = fem.family().degree();
    const QuadratureRule& rule = gauss_legendre(points_for_exactness(3 * p));
    const Mesh1D& mesh = fem.mesh();
    const double h = mesh.h();
    const double nonlin = 2.0 * problem.reynolds * problem.alpha;
    const double lin = 4.0 * problem.alpha * problem.alpha;

    double integral = 0.0;
    for (int e = 0; e < mesh.n_elem(); ++e) {
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const PointValue v = fem.solution.eval_in_element(e, rule.points[q]);
            integral += rule.weights[q] * h * v.fp * (v.fpp + nonlin * v.f * v.f + lin * v.f);
        }
    }
    const PointValue left = fem.solution.eval_in_element(0, 0.0);
    const PointValue right = fem.solution.eval_in_element(mesh.n_elem() - 1, 1.0);

    DualityCheck out;
    out.lhs = integral + (right.fpp * right.f - left.fpp * left.f) -
              (right.fp * right.fp - left.fp * left.fp);
    out.rhs = -0.5 * right.fp * right.fp - nonlin / 3.0 - 0.5 * lin - left.fpp;
    out.difference = out.lhs - out.rhs;
    return out;
}

} // namespace jhfem
