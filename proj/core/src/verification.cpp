#include "jhfem/verification.hpp"

#include "jhfem/errors.hpp"
#include "jhfem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace jhfem {

JacobianCheck jacobian_fd_check(const JhProblem& problem, const DofMap& dofs, int n_vectors,
                                std::uint64_t seed, double step)
{
    if (n_vectors < 1 || !(step > 0.0)) {
        throw InvalidArgument("jacobian_fd_check: need n_vectors >= 1 and step > 0");
    }
    const QuadratureRule& rule = gauss_legendre(required_points(dofs.family().degree()));
    const auto n = static_cast<std::size_t>(dofs.n_global());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);

    JacobianCheck out;
    for (int v = 0; v < n_vectors; ++v) {
        std::vector<double> c = dofs.seeded_vector();
        for (std::size_t i = 0; i < n; ++i) {
            if (!dofs.is_constrained(static_cast<int>(i))) {
                c[i] = coeff(rng);
            }
        }
        const BandedMatrix jac = assemble_jacobian(problem, dofs, c, rule);
        // The residual is quadratic in c, so central differences are exact
        // up to rounding.
        for (std::size_t j = 0; j < n; ++j) {
            const double dj = step * std::max(1.0, std::abs(c[j]));
            std::vector<double> up = c;
            std::vector<double> dn = c;
            up[j] += dj;
            dn[j] -= dj;
            const auto rp = assemble_residual(problem, dofs, up, rule);
            const auto rm = assemble_residual(problem, dofs, dn, rule);
            for (std::size_t i = 0; i < n; ++i) {
                const double fd = (rp[i] - rm[i]) / (2.0 * dj);
                const double viol = std::abs(jac(i, j) - fd) / std::max(1.0, std::abs(fd));
                out.max_violation = std::max(out.max_violation, viol);
            }
        }
        ++out.vectors;
    }
    return out;
}

double quadrature_exactness_defect(int n_points)
{
    const QuadratureRule& rule = gauss_legendre(n_points);
    double worst = 0.0;
    for (int k = 0; k <= 2 * n_points - 1; ++k) {
        double q = 0.0;
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
            q += rule.weights[i] * std::pow(rule.points[i], k);
        }
        worst = std::max(worst, std::abs(q - 1.0 / (k + 1)));
    }
    return worst;
}

} // namespace jhfem
