// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "jhfem/jhfem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

using namespace jhfem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct BenchmarkCase {
    double re;
    double alpha_deg;
    double K;
    std::array<double, 9> f; // eta = 0.1 .. 0.9
};

const BenchmarkCase kCases[] = {
    {30, 15, -9.7822146449,
     {9.7312740682e-1, 8.9663878283e-1, 7.8170458993e-1, 6.4348113118e-1, 4.9758671435e-1,
      3.5738880303e-1, 2.3268829344e-1, 1.2967274302e-1, 5.1642634908e-2}},
    {110, 3, -1.4387160807e2,
     {9.7923570652e-1, 9.1926588558e-1, 8.2653361228e-1, 7.1022118323e-1, 5.8049945880e-1,
      4.4693506704e-1, 3.1740842757e-1, 1.9764109452e-1, 9.1230421098e-2}},
    {-80, 5, 2.5439853775e2,
     {9.9596062766e-1, 9.8327553811e-1, 9.6017991246e-1, 9.2352159094e-1, 8.6845887923e-1,
      7.8809092167e-1, 6.7314363566e-1, 5.1199108961e-1, 2.9155874262e-1}},
};

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string fmt(const char* f, double a)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string label(const BenchmarkCase& c)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "(%g,%g)", c.re, c.alpha_deg);
    return buf;
}

JhProblem problem_of(const BenchmarkCase& c) { return JhProblem::from_degrees(c.re, c.alpha_deg); }

FemSolution fem320(const BenchmarkCase& c)
{
    FemSolution s = newton_solve(problem_of(c), Mesh1D(320), ElementFamily::hermite(4));
    if (!s.converged) {
        throw ConvergenceError("Newton failed for " + label(c), s.residual_history);
    }
    return s;
}

void check(Outcome& o, bool ok, const std::string& what)
{
    if (!ok) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + what;
    }
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// ---------------------------------------------------------------------------

Outcome k_values()
{
    Outcome o;
    double worst_fem = 0.0;
    double worst_ora = 0.0;
    for (const auto& c : kCases) {
        const JhProblem p = problem_of(c);
        const double kf = compute_K(p, fem320(c).eval(1.0).fp);
        const double ko = compute_K(p, shoot(p).states.back().y1);
        const double rf = std::abs(kf - c.K) / std::abs(c.K);
        const double ro = std::abs(ko - c.K) / std::abs(c.K);
        worst_fem = std::max(worst_fem, rf);
        worst_ora = std::max(worst_ora, ro);
        check(o, rf <= 1e-6, label(c) + " FEM K " + fmt("%.11g", kf));
        check(o, ro <= 1e-8, label(c) + " oracle K " + fmt("%.11g", ko));
    }
    if (o.pass) {
        o.detail = "max rel. error FEM " + fmt("%.1e", worst_fem) + ", oracle " + fmt("%.1e", worst_ora);
    }
    return o;
}

Outcome profile_values()
{
    Outcome o;
    double worst = 0.0;
    for (const auto& c : kCases) {
        const FemSolution s = fem320(c);
        for (int i = 1; i <= 9; ++i) {
            const double got = s.eval(i / 10.0).f;
            const double err = std::abs(got - c.f[static_cast<std::size_t>(i - 1)]);
            worst = std::max(worst, err);
            check(o, err <= 1e-8, label(c) + fmt(" eta=0.%g", i) + fmt(" off by %.2e", err));
        }
        check(o, s.eval(0.0).f == 1.0 && s.eval(1.0).f == 0.0, label(c) + " endpoint rows not exact");
    }
    if (o.pass) {
        o.detail = "27 values, max abs. error " + fmt("%.1e", worst) + "; endpoints exact";
    }
    return o;
}

std::string slopes(const ConvergenceReport& r)
{
    return fmt("L2 %.3f", r.slope_l2) + fmt(" H1 %.3f", r.slope_h1);
}

Outcome quartic_rates()
{
    Outcome o;
    const std::vector<int> ns{20, 40, 80, 160, 320};
    std::string summary;
    for (const auto& c : kCases) {
        const JhProblem p = problem_of(c);
        const ConvergenceReport r = jh_convergence(p, 4, ns, shoot(p), threads());
        check(o, within(r.slope_l2, 4.0, 0.25) && within(r.slope_h1, 4.0, 0.25), label(c) + " " + slopes(r));
        summary += (summary.empty() ? "" : ", ") + label(c) + " " + slopes(r);
    }
    if (o.pass) {
        o.detail = summary;
    }
    return o;
}

Outcome cubic_rates()
{
    Outcome o;
    const std::vector<int> ns{20, 40, 80, 160, 320};
    const double l2_target[] = {2.0, 3.0, NAN}; // third case: no L2 claim
    std::string summary;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& c = kCases[i];
        const JhProblem p = problem_of(c);
        const ConvergenceReport r = jh_convergence(p, 3, ns, shoot(p), threads());
        bool ok = within(r.slope_h1, 2.0, 0.3);
        if (!std::isnan(l2_target[i])) {
            ok = ok && within(r.slope_l2, l2_target[i], 0.3);
        }
        check(o, ok, label(c) + " " + slopes(r));
        summary += (summary.empty() ? "" : ", ") + label(c) + " " + slopes(r);
    }
    if (o.pass) {
        o.detail = summary;
    }
    return o;
}

Outcome model_rates(Formulation form)
{
    Outcome o;
    const std::vector<int> ns{8, 16, 32, 64, 128};
    std::string summary;
    for (int p = 1; p <= 5; ++p) {
        const ConvergenceReport r = model_convergence(p, form, ns, threads());
        double l2 = p + 1;
        double h1 = p;
        double tol = 0.25;
        if (form == Formulation::Galerkin) {
            const bool odd = p % 2 == 1;
            l2 = odd ? p + 1 : p;
            h1 = odd ? p : p - 1;
            tol = odd ? 0.2 : 0.25;
        }
        const std::string tag = "p=" + std::to_string(p) + " " + slopes(r);
        check(o, within(r.slope_l2, l2, tol) && within(r.slope_h1, h1, tol), tag);
        summary += (summary.empty() ? "" : ", ") + tag;
    }
    if (o.pass) {
        o.detail = summary;
    }
    return o;
}

Outcome closed_form_oracle()
{
    Outcome o;
    const double a = std::numbers::pi / 12;
    const double denom = 1 - std::cos(2 * a);
    const ReferenceSolution ref = shoot(JhProblem::make(0.0, a));
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.grid.size(); ++i) {
        const double exact = (std::cos(2 * a * ref.grid[i]) - std::cos(2 * a)) / denom;
        worst = std::max(worst, std::abs(ref.states[i].y0 - exact));
    }
    const double s_err = std::abs(ref.s - (-4 * a * a / denom));
    const double k_err = std::abs(compute_K(ref.problem, ref.states.back().y1) - (3 + 2 * std::sqrt(3.0)));
    check(o, worst <= 1e-11, fmt("trajectory off by %.2e", worst));
    check(o, s_err <= 1e-11, fmt("s off by %.2e", s_err));
    check(o, k_err <= 1e-9, fmt("K off by %.2e", k_err));
    if (o.pass) {
        o.detail = fmt("f %.1e", worst) + fmt(", s %.1e", s_err) + fmt(", K %.1e", k_err);
    }
    return o;
}

Outcome jacobian_consistency()
{
    Outcome o;
    double worst = 0.0;
    const auto bcs = jeffery_hamel_conditions();
    std::uint64_t seed = 1;
    for (const auto& c : kCases) {
        for (int p = 3; p <= 5; ++p) {
            const DofMap d(Mesh1D(6), ElementFamily::hermite(p), bcs);
            const JacobianCheck j = jacobian_fd_check(problem_of(c), d, 20, seed++);
            worst = std::max(worst, j.max_violation);
            check(o, j.max_violation <= 1e-6, label(c) + " p=" + std::to_string(p) + fmt(" %.2e", j.max_violation));
        }
    }
    if (o.pass) {
        o.detail = "20 vectors x 3 cases x p=3..5, worst " + fmt("%.1e", worst);
    }
    return o;
}

Outcome duality()
{
    Outcome o;
    double worst = 0.0;
    int solves = 0;
    for (const auto& c : kCases) {
        for (int p = 3; p <= 5; ++p) {
            for (int n : {10, 40, 160, 320}) {
                const FemSolution s = newton_solve(problem_of(c), Mesh1D(n), ElementFamily::hermite(p));
                check(o, s.converged, label(c) + " did not converge");
                const double d = std::abs(duality_pairing_check(s, problem_of(c)).difference);
                worst = std::max(worst, d);
                ++solves;
                check(o, d <= 1e-9, label(c) + fmt(" diff %.2e", d));
            }
        }
    }
    if (o.pass) {
        o.detail = std::to_string(solves) + " solves, worst |lhs - rhs| " + fmt("%.1e", worst);
    }
    return o;
}

Outcome oracle_self_convergence()
{
    Outcome o;
    double worst_change = 0.0;
    double worst_end = 0.0;
    for (const auto& c : kCases) {
        const JhProblem p = problem_of(c);
        const ReferenceSolution a = shoot(p);
        // end_tol is already at its floor (1e-13); halve the integrator's.
        ShootingOptions tight;
        tight.integration.rel_tol /= 2;
        tight.integration.abs_tol /= 2;
        const ReferenceSolution b = shoot(p, tight);
        for (std::size_t i = 0; i < a.grid.size(); ++i) {
            worst_change = std::max(worst_change, std::abs(a.states[i].y0 - b.states[i].y0));
        }
        worst_end = std::max(worst_end, std::abs(a.states.back().y0));
    }
    check(o, worst_change < 1e-11, fmt("tolerance halving moved f by %.2e", worst_change));
    check(o, worst_end <= 1e-13, fmt("|f(1)| = %.2e", worst_end));
    if (o.pass) {
        o.detail = fmt("max change %.1e", worst_change) + fmt(", max |f(1)| %.1e", worst_end);
    }
    return o;
}

Outcome field_consistency()
{
    Outcome o;
    const FluidProps water = FluidProps::from_nu_rho(1e-6, 1000.0);
    double worst_flux = 0.0;
    double worst_ray = 0.0;
    for (const auto& c : kCases) {
        const JhProblem prob = problem_of(c);
        const FemSolution s = fem320(c);
        const WedgeFieldConfig cfg = WedgeFieldConfig::make(prob, water, 0.0, s.eval(1.0).fp);
        const std::vector<double> radii{0.01, 0.1, 1.0, 3.7, 50.0};
        std::vector<std::pair<double, double>> pts;
        for (double r : radii) {
            for (int j = 0; j <= 8; ++j) {
                pts.emplace_back(r, prob.alpha * (j / 4.0 - 1.0));
            }
        }
        const auto samples = wedge_fields(cfg, profile_of(s), pts);
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const auto& sm = samples[k];
            if (sm.theta == 0.0) {
                worst_flux = std::max(worst_flux, std::abs(sm.r * sm.u_r - cfg.lambda) / std::abs(cfg.lambda));
            }
            const auto& first = samples[k % 9]; // same ray at the smallest radius
            const double a = first.p * first.r * first.r;
            const double b = sm.p * sm.r * sm.r;
            if (a != 0.0) {
                worst_ray = std::max(worst_ray, std::abs(b - a) / std::abs(a));
            }
        }
    }
    check(o, worst_flux <= 1e-12, fmt("r u_r(r,0) off by %.2e rel.", worst_flux));
    check(o, worst_ray <= 1e-10, fmt("(p - p*) r^2 varies by %.2e rel.", worst_ray));
    if (o.pass) {
        o.detail = fmt("r u_r vs lambda %.1e", worst_flux) + fmt(", (p - p*) r^2 spread %.1e", worst_ray);
    }
    return o;
}

} // namespace

int main()
{
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1  published K values", k_values},
        {"AC2  published profile values", profile_values},
        {"AC3  quartic Hermite rates", quartic_rates},
        {"AC4  cubic Hermite rates (case-dependent)", cubic_rates},
        {"AC5  model problem Galerkin even/odd rates", [] { return model_rates(Formulation::Galerkin); }},
        {"AC6  model problem least-squares optimal rates", [] { return model_rates(Formulation::LeastSquares); }},
        {"AC7  closed-form Stokes oracle", closed_form_oracle},
        {"AC8  Jacobian vs finite differences", jacobian_consistency},
        {"AC9  duality-pairing identity", duality},
        {"AC10 oracle self-convergence", oracle_self_convergence},
        {"AC11 wedge field consistency", field_consistency},
    };
    int passed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        passed += o.pass ? 1 : 0;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
