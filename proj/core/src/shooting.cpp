#include "jhfem/shooting.hpp"

#include "jhfem/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace jhfem {

namespace odeint = boost::numeric::odeint;

namespace {

// odeint's default update evaluates x + a1*k1 + ... + a13*k13 left to right,
// rounding into the O(1) state at every stage; over thousands of steps that
// shows up as a ~1e-13 drift. Sum the increment first, then add it once.
struct IncrementFirstOperations : odeint::default_operations {
    template <class F1 = double, class F2 = F1, class F3 = F2, class F4 = F3, class F5 = F4,
              class F6 = F5, class F7 = F6, class F8 = F7, class F9 = F8, class F10 = F9,
              class F11 = F10, class F12 = F11, class F13 = F12, class F14 = F13>
    struct scale_sum14 {
        const F1 m_a1;
        const std::array<double, 13> m_a;

        scale_sum14(F1 a1, F2 a2, F3 a3, F4 a4, F5 a5, F6 a6, F7 a7, F8 a8, F9 a9, F10 a10,
                    F11 a11, F12 a12, F13 a13, F14 a14)
            : m_a1(a1), m_a{a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12, a13, a14}
        {
        }

        template <class T1, class T2, class... Tk>
        void operator()(T1& t1, const T2& t2, const Tk&... tk) const
        {
            double inc = 0.0;
            std::size_t i = 0;
            ((inc += m_a[i++] * tk), ...);
            t1 = m_a1 * t2 + inc;
        }

        typedef void result_type;
    };
};

} // namespace

IvpState ivp_rhs(const JhProblem& problem, const IvpState& y)
{
    const double a = problem.alpha;
    return {y.y1, y.y2, -2.0 * problem.reynolds * a * y.y0 * y.y1 - 4.0 * a * a * y.y1};
}

Trajectory integrate(const JhProblem& problem, double s, const IntegrationOptions& opts)
{
    if (opts.grid_intervals < 1 || !(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0)) {
        throw InvalidArgument("integrate: need grid_intervals >= 1 and positive tolerances");
    }
    using State = std::array<double, 3>;
    const int n = opts.grid_intervals;

    Trajectory traj;
    traj.grid.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        traj.grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    }
    traj.grid.back() = 1.0;
    traj.states.reserve(traj.grid.size());

    auto system = [&problem](const State& y, State& dydx, double /*eta*/) {
        const IvpState d = ivp_rhs(problem, {y[0], y[1], y[2]});
        dydx = {d.y0, d.y1, d.y2};
    };
    auto stepper = odeint::make_controlled(opts.abs_tol, opts.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State, double, State, double, odeint::array_algebra,
                                         IncrementFirstOperations>());
    State y{1.0, 0.0, s};
    double last_eta = 0.0;
    auto observer = [&](const State& state, double eta) {
        traj.states.push_back({state[0], state[1], state[2]});
        last_eta = eta;
    };
    try {
        odeint::integrate_times(stepper, system, y, traj.grid.begin(), traj.grid.end(),
                                1.0 / n, observer);
    } catch (const std::runtime_error& err) {
        throw IntegrationError(last_eta, "integrate: step-size failure after eta = " +
                                             std::to_string(last_eta) + ": " + err.what());
    }
    if (traj.states.size() != traj.grid.size()) {
        throw IntegrationError(last_eta, "integrate: trajectory ended early");
    }
    // The initial state is recorded verbatim by integrate_times; keep it exact.
    traj.states.front() = {1.0, 0.0, s};
    for (const auto& st : traj.states) {
        if (!std::isfinite(st.y0) || !std::isfinite(st.y1) || !std::isfinite(st.y2)) {
            throw IntegrationError(last_eta, "integrate: non-finite state");
        }
    }
    return traj;
}

ReferenceSolution shoot(const JhProblem& problem, const ShootingOptions& opts)
{
    problem.validate();
    if (!(opts.end_tol >= 1e-13)) {
        throw InvalidArgument("shoot: end_tol must be >= 1e-13");
    }
    ShootingError::History history;

    auto finish = [&](double s, Trajectory traj, int iters) {
        ReferenceSolution ref;
        ref.problem = problem;
        ref.s = s;
        ref.achieved_tol = std::abs(traj.states.back().y0);
        ref.grid = std::move(traj.grid);
        ref.states = std::move(traj.states);
        ref.secant_iterations = iters;
        return ref;
    };

    double s_prev = opts.s0;
    Trajectory t_prev = integrate(problem, s_prev, opts.integration);
    double g_prev = t_prev.states.back().y0;
    history.emplace_back(s_prev, g_prev);
    if (std::abs(g_prev) <= opts.end_tol) {
        return finish(s_prev, std::move(t_prev), 0);
    }

    double s_cur = opts.s1;
    Trajectory t_cur = integrate(problem, s_cur, opts.integration);
    double g_cur = t_cur.states.back().y0;
    history.emplace_back(s_cur, g_cur);

    for (int it = 1; it <= opts.max_iter; ++it) {
        if (std::abs(g_cur) <= opts.end_tol) {
            return finish(s_cur, std::move(t_cur), it - 1);
        }
        const double dg = g_cur - g_prev;
        if (dg == 0.0 || !std::isfinite(dg)) {
            throw ShootingError("shoot: secant slope degenerated", std::move(history));
        }
        const double s_next = s_cur - g_cur * (s_cur - s_prev) / dg;
        s_prev = s_cur;
        g_prev = g_cur;
        s_cur = s_next;
        t_cur = integrate(problem, s_cur, opts.integration);
        g_cur = t_cur.states.back().y0;
        history.emplace_back(s_cur, g_cur);
    }
    if (std::abs(g_cur) <= opts.end_tol) {
        return finish(s_cur, std::move(t_cur), opts.max_iter);
    }
    throw ShootingError("shoot: no convergence in " + std::to_string(opts.max_iter) +
                            " secant iterations",
                        std::move(history));
}

PointValue ReferenceSolution::eval(double eta) const
{
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw InvalidArgument("evaluate_reference: eta = " + std::to_string(eta) +
                              " outside [0, 1]");
    }
    const std::size_t cells = grid.size() - 1;
    auto i = static_cast<std::size_t>(eta * static_cast<double>(cells));
    i = std::min(i, cells - 1);
    if (eta == grid[i]) {
        const auto& st = states[i];
        return {st.y0, st.y1, st.y2};
    }
    if (eta == grid[i + 1]) {
        const auto& st = states[i + 1];
        return {st.y0, st.y1, st.y2};
    }

    const double d = grid[i + 1] - grid[i];
    const double u = (eta - grid[i]) / d;
    const IvpState& a = states[i];
    const IvpState& b = states[i + 1];

    const double u2 = u * u;
    const double u3 = u2 * u;
    const double u4 = u3 * u;
    const double u5 = u4 * u;

    // Quintic Hermite basis on [0, 1].
    const std::array<double, 6> h{
        1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5,
        u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5,
        0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5,
        0.5 * u3 - u4 + 0.5 * u5,
        -4.0 * u3 + 7.0 * u4 - 3.0 * u5,
        10.0 * u3 - 15.0 * u4 + 6.0 * u5};
    auto interp = [&](double v0, double d0, double dd0, double v1, double d1, double dd1) {
        return v0 * h[0] + d * d0 * h[1] + d * d * dd0 * h[2] + d * d * dd1 * h[3] +
               d * d1 * h[4] + v1 * h[5];
    };

    // Differentiating the value interpolant would amplify the rounding in y0 by
    // 1/d^2; instead f' and f'' get their own interpolants, with the missing
    // higher derivatives supplied by the ODE.
    const double re = problem.reynolds;
    const double al = problem.alpha;
    auto third = [&](const IvpState& y) { return ivp_rhs(problem, y).y2; };
    auto fourth = [&](const IvpState& y) {
        return -2.0 * re * al * (y.y1 * y.y1 + y.y0 * y.y2) - 4.0 * al * al * y.y2;
    };
    const double a3 = third(a);
    const double b3 = third(b);

    PointValue out;
    out.f = interp(a.y0, a.y1, a.y2, b.y0, b.y1, b.y2);
    out.fp = interp(a.y1, a.y2, a3, b.y1, b.y2, b3);
    out.fpp = interp(a.y2, a3, fourth(a), b.y2, b3, fourth(b));
    return out;
}

PointValue evaluate_reference(const ReferenceSolution& ref, double eta) { return ref.eval(eta); }

} // namespace jhfem
