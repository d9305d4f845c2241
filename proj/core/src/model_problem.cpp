#include "jhfem/model_problem.hpp"

#include "jhfem/errors.hpp"
#include "parallel.hpp"
#include "shape_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace jhfem {

namespace {

constexpr double kWave = 2.5 * std::numbers::pi;

void check_config(const ModelConfig& cfg, const DofMap& dofs, const QuadratureRule& rule)
{
    if (dofs.family().kind() != ElementKind::HierarchicC0 ||
        dofs.family().degree() != cfg.degree || dofs.mesh().n_elem() != cfg.n_elem) {
        throw InvalidArgument("model problem: DOF map does not match the configuration");
    }
    if (rule.exactness < 2 * cfg.degree) {
        throw InvalidArgument("model problem: quadrature rule too weak");
    }
}

// Band storage with long double accumulation. The least-squares matrix has
// the conditioning of a second-order operator, so at high p and fine meshes
// the rounding of double sums alone sets an error floor near 1e-13.
struct ExtendedSystem {
    std::size_t n;
    std::size_t k;
    std::vector<long double> a;
    std::vector<long double> b;

    ExtendedSystem(std::size_t n_, std::size_t k_) : n(n_), k(k_), a(n_ * (2 * k_ + 1), 0.0L), b(n_, 0.0L) {}

    long double& at(std::size_t i, std::size_t j) { return a[i * (2 * k + 1) + (j + k - i)]; }

    LinearSystem rounded() const
    {
        LinearSystem sys{BandedMatrix(n, k), std::vector<double>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            sys.rhs[i] = static_cast<double>(b[i]);
            const std::size_t lo = i > k ? i - k : 0;
            const std::size_t hi = std::min(n - 1, i + k);
            for (std::size_t j = lo; j <= hi; ++j) {
                sys.matrix.at(i, j) = static_cast<double>(a[i * (2 * k + 1) + (j + k - i)]);
            }
        }
        return sys;
    }

    // A u - b, accumulated in long double and rounded once.
    std::vector<double> residual(std::span<const double> u) const
    {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            long double acc = -b[i];
            const std::size_t lo = i > k ? i - k : 0;
            const std::size_t hi = std::min(n - 1, i + k);
            for (std::size_t j = lo; j <= hi; ++j) {
                acc += a[i * (2 * k + 1) + (j + k - i)] * static_cast<long double>(u[j]);
            }
            r[i] = static_cast<double>(acc);
        }
        return r;
    }
};

template <class Integrand>
ExtendedSystem assemble(const DofMap& dofs, const QuadratureRule& rule, Integrand&& integrand)
{
    const Mesh1D& mesh = dofs.mesh();
    const detail::ShapeTable table(dofs.family(), mesh.h(), rule);
    ExtendedSystem sys(static_cast<std::size_t>(dofs.n_global()),
                       static_cast<std::size_t>(dofs.half_bandwidth()));
    for (int e = 0; e < mesh.n_elem(); ++e) {
        const auto idx = dofs.element_dofs(e);
        for (std::size_t q = 0; q < table.at_points.size(); ++q) {
            const double x = mesh.left(e) + rule.points[q] * mesh.h();
            integrand(sys, idx, table.at_points[q], table.weights[q], forcing(x));
        }
    }
    return sys;
}

ExtendedSystem galerkin_system(const DofMap& dofs, const QuadratureRule& rule)
{
    ExtendedSystem sys = assemble(dofs, rule, [](ExtendedSystem& s, std::span<const int> idx,
                                                 const ShapeEval& sh, double w, double g) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const auto gi = static_cast<std::size_t>(idx[i]);
            s.b[gi] += static_cast<long double>(w) * g * sh.values[i];
            const long double ti = static_cast<long double>(sh.values[i]) - sh.first_derivs[i];
            for (std::size_t j = 0; j < idx.size(); ++j) {
                s.at(gi, static_cast<std::size_t>(idx[j])) += w * sh.values[j] * ti;
            }
        }
    });
    // u(1) v(1): only the right hat of the last element is nonzero at x = 1.
    const auto last = dofs.element_dofs(dofs.mesh().n_elem() - 1);
    const ShapeEval end = eval_physical(dofs.family(), 1.0, dofs.mesh().h());
    for (std::size_t i = 0; i < last.size(); ++i) {
        for (std::size_t j = 0; j < last.size(); ++j) {
            const double v = end.values[j] * end.values[i];
            if (v != 0.0) {
                sys.at(static_cast<std::size_t>(last[i]), static_cast<std::size_t>(last[j])) += v;
            }
        }
    }
    return sys;
}

ExtendedSystem least_squares_system(const DofMap& dofs, const QuadratureRule& rule)
{
    return assemble(dofs, rule, [](ExtendedSystem& s, std::span<const int> idx,
                                   const ShapeEval& sh, double w, double g) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const auto gi = static_cast<std::size_t>(idx[i]);
            const long double li = static_cast<long double>(sh.first_derivs[i]) + sh.values[i];
            s.b[gi] += w * g * li;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                const long double lj = static_cast<long double>(sh.first_derivs[j]) + sh.values[j];
                s.at(gi, static_cast<std::size_t>(idx[j])) += w * lj * li;
            }
        }
    });
}

} // namespace

std::string to_string(Formulation f)
{
    return f == Formulation::Galerkin ? "galerkin" : "least-squares";
}

Formulation parse_formulation(const std::string& name)
{
    if (name == "galerkin") {
        return Formulation::Galerkin;
    }
    if (name == "least-squares" || name == "least_squares" || name == "ls") {
        return Formulation::LeastSquares;
    }
    throw InvalidArgument("unknown formulation '" + name + "'");
}

double forcing(double x) { return std::cos(kWave * x) - kWave * std::sin(kWave * x); }
double model_exact(double x) { return std::cos(kWave * x); }
double model_exact_derivative(double x) { return -kWave * std::sin(kWave * x); }

const QuadratureRule& model_rule() { return gauss_legendre(10); }

LinearSystem assemble_galerkin(const ModelConfig& cfg, const DofMap& dofs,
                               const QuadratureRule& rule)
{
    check_config(cfg, dofs, rule);
    return galerkin_system(dofs, rule).rounded();
}

LinearSystem assemble_least_squares(const ModelConfig& cfg, const DofMap& dofs,
                                    const QuadratureRule& rule)
{
    check_config(cfg, dofs, rule);
    return least_squares_system(dofs, rule).rounded();
}

FemSolution solve_model(const ModelConfig& cfg, const NewtonOptions& opts)
{
    const auto conditions = model_problem_conditions();
    DofMap dofs(Mesh1D(cfg.n_elem), ElementFamily::hierarchic(cfg.degree), conditions);
    const QuadratureRule& rule = model_rule();
    check_config(cfg, dofs, rule);
    const ExtendedSystem ext = cfg.formulation == Formulation::Galerkin
                                   ? galerkin_system(dofs, rule)
                                   : least_squares_system(dofs, rule);

    BandedMatrix jac = ext.rounded().matrix;
    for (const auto& [dof, value] : dofs.constraints()) {
        jac.set_identity_row(static_cast<std::size_t>(dof));
    }
    auto residual = [&](std::span<const double> u) {
        std::vector<double> r = ext.residual(u);
        for (const auto& [dof, value] : dofs.constraints()) {
            r[static_cast<std::size_t>(dof)] = u[static_cast<std::size_t>(dof)] - value;
        }
        return r;
    };
    NewtonResult nr = newton_iterate(
        residual, [&](std::span<const double>) { return jac; }, dofs, dofs.seeded_vector(), opts);

    // The Newton step is one linear solve; polish it by iterative refinement
    // against the extended-precision residual. Not counted as iterations.
    if (nr.converged) {
        const BandedLU lu(jac);
        double prev = std::numeric_limits<double>::infinity();
        for (int sweep = 0; sweep < 3; ++sweep) {
            const std::vector<double> r = residual(nr.x);
            const std::vector<double> dx = lu.solve(r);
            double step = 0.0;
            for (std::size_t i = 0; i < dx.size(); ++i) {
                nr.x[i] -= dx[i];
                step = std::max(step, std::abs(dx[i]));
            }
            for (const auto& [dof, value] : dofs.constraints()) {
                nr.x[static_cast<std::size_t>(dof)] = value;
            }
            if (step == 0.0 || step > 0.5 * prev) {
                break;
            }
            prev = step;
        }
        nr.final_norm = free_residual_norm(dofs, residual(nr.x));
    }
    return FemSolution{FeFunction(std::move(dofs), std::move(nr.x)), nr.converged, nr.iterations,
                       nr.final_norm, std::move(nr.history)};
}

ErrorNorms model_error(const FemSolution& sol)
{
    return error_norms_exact(sol.solution, model_exact, model_exact_derivative, model_rule());
}

ConvergenceReport model_convergence(int degree, Formulation formulation,
                                    std::span<const int> n_elems, int threads)
{
    if (n_elems.size() < 5) {
        throw InvalidArgument("model_convergence: need a sequence of at least 5 meshes");
    }
    ConvergenceReport report;
    report.case_label = "model-" + to_string(formulation);
    report.degree = degree;
    report.rows.resize(n_elems.size());
    detail::parallel_for(static_cast<int>(n_elems.size()), threads, [&](int i) {
        const ModelConfig cfg{degree, n_elems[static_cast<std::size_t>(i)], formulation};
        const FemSolution sol = solve_model(cfg);
        if (!sol.converged) {
            throw ConvergenceError("model problem solve did not converge", sol.residual_history);
        }
        report.rows[static_cast<std::size_t>(i)] = model_error(sol);
    });
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ErrorNorms& a, const ErrorNorms& b) { return a.n_elem < b.n_elem; });
    RateFit fit = fit_rates(report.rows);
    report.slope_l2 = fit.slope_l2;
    report.slope_h1 = fit.slope_h1;
    report.notices = std::move(fit.notices);
    return report;
}

} // namespace jhfem
