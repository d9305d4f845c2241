#include "cli.hpp"

#include "jhfem/jhfem.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace jhfem::cli {

namespace {

using nlohmann::json;

// Bad flags or values, as opposed to numerical failure.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* command_name(Command c)
{
    switch (c) {
    case Command::Solve: return "solve";
    case Command::Reference: return "reference";
    case Command::Table: return "table";
    case Command::Convergence: return "convergence";
    case Command::Model: return "model";
    case Command::Fields: return "fields";
    case Command::Check: return "check";
    }
    return "?";
}

const char* format_name(OutputFormat f)
{
    switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Pretty: return "pretty";
    }
    return "?";
}

OutputFormat default_format(Command c)
{
    switch (c) {
    case Command::Solve:
    case Command::Table:
    case Command::Check: return OutputFormat::Pretty;
    default: return OutputFormat::Csv;
    }
}

std::string g17(double v) { return format_general(v, 17); }
std::string g11(double v) { return format_general(v, 11); }

json config_json(const RunConfig& cfg, OutputFormat fmt)
{
    json j = {{"command", command_name(cfg.command)},
              {"re", cfg.re},
              {"alpha_deg", cfg.alpha_deg},
              {"order", cfg.order},
              {"n_elem", cfg.n_elem},
              {"newton_tol", cfg.newton_tol},
              {"shoot_tol", cfg.shoot_tol},
              {"output", format_name(fmt)}};
    j["out_path"] = cfg.out_path ? json(*cfg.out_path) : json(nullptr);
    return j;
}

// ---- validation ----------------------------------------------------------

void require(bool ok, const std::string& msg)
{
    if (!ok) {
        throw UsageError(msg);
    }
}

void validate_case(const RunConfig& cfg)
{
    require(std::isfinite(cfg.re), "--re must be finite");
    require(cfg.alpha_deg > 0.0 && cfg.alpha_deg < 90.0, "--alpha-deg must lie in (0, 90)");
}

void validate_hermite(int order)
{
    require(order >= 3 && order <= 5, "Hermite order must be 3, 4 or 5");
}

void validate_common(const RunConfig& cfg)
{
    require(cfg.n_elem >= 1, "--nelem must be at least 1");
    require(cfg.newton_tol > 0.0, "--newton-tol must be positive");
    require(cfg.shoot_tol > 0.0, "--shoot-tol must be positive");
}

// ---- numerical building blocks -------------------------------------------

JhProblem problem_of(const RunConfig& cfg) { return JhProblem::from_degrees(cfg.re, cfg.alpha_deg); }

SolverOptions solver_options(const RunConfig& cfg)
{
    SolverOptions opts;
    opts.newton.tol = cfg.newton_tol;
    return opts;
}

ShootingOptions shooting_options(const RunConfig& cfg)
{
    ShootingOptions opts;
    opts.end_tol = cfg.shoot_tol;
    return opts;
}

// Thrown after the norm history has been written to err.
struct ReportedFailure {};

void print_history(std::ostream& err, const std::vector<double>& history)
{
    err << "residual norm history:";
    for (double h : history) {
        err << ' ' << format_scientific(h, 3);
    }
    err << '\n';
}

FemSolution solve_or_fail(const RunConfig& cfg, int order, std::ostream& err)
{
    FemSolution sol = newton_solve(problem_of(cfg), Mesh1D(cfg.n_elem), ElementFamily::hermite(order),
                                   solver_options(cfg));
    if (!sol.converged) {
        err << "error: Newton did not converge (Re = " << cfg.re << ", alpha = " << cfg.alpha_deg
            << " deg, p = " << order << ", N = " << cfg.n_elem << ")\n";
        print_history(err, sol.residual_history);
        throw ReportedFailure{};
    }
    return sol;
}

// Where the primary output goes: --out if given, else `out`.
class Sink {
public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : os_(&fallback)
    {
        if (path) {
            file_.open(*path);
            if (!file_) {
                throw UsageError("cannot open '" + *path + "' for writing");
            }
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

// ---- commands ------------------------------------------------------------

int cmd_solve(const RunConfig& cfg, OutputFormat fmt, std::ostream& out, std::ostream& err)
{
    validate_case(cfg);
    validate_hermite(cfg.order);
    const FemSolution sol = solve_or_fail(cfg, cfg.order, err);
    const JhProblem problem = problem_of(cfg);
    const double fp1 = sol.eval(1.0).fp;
    const double K = compute_K(problem, fp1);
    const int n_global = sol.solution.dofs().n_global();
    const auto n_free = static_cast<int>(sol.solution.dofs().free_dofs().size());

    Sink sink(cfg.out_path, out);
    std::ostream& os = *sink;
    switch (fmt) {
    case OutputFormat::Csv:
        os << "n_elem,order,n_global,n_free,newton_iters,residual_norm,fp1,K\n"
           << cfg.n_elem << ',' << cfg.order << ',' << n_global << ',' << n_free << ','
           << sol.newton_iters << ',' << g17(sol.final_residual_norm) << ',' << g17(fp1) << ','
           << g17(K) << '\n';
        break;
    case OutputFormat::Json: {
        json j = {{"config", config_json(cfg, fmt)},
                  {"n_global", n_global},
                  {"n_free", n_free},
                  {"newton_iters", sol.newton_iters},
                  {"residual_norm", sol.final_residual_norm},
                  {"fp1", fp1},
                  {"K", K}};
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Pretty:
        os << "Jeffery-Hamel  Re = " << cfg.re << "  alpha = " << cfg.alpha_deg << " deg\n"
           << "  Hermite p = " << cfg.order << ", N = " << cfg.n_elem << "\n"
           << "  global DOFs        " << n_global << "\n"
           << "  free DOFs          " << n_free << "\n"
           << "  Newton iterations  " << sol.newton_iters << "\n"
           << "  residual norm      " << format_scientific(sol.final_residual_norm, 3) << "\n"
           << "  f'(1)              " << g11(fp1) << "\n"
           << "  K                  " << g11(K) << "\n";
        break;
    }
    return kOk;
}

int cmd_reference(const RunConfig& cfg, OutputFormat fmt, std::ostream& out)
{
    validate_case(cfg);
    const ReferenceSolution ref = shoot(problem_of(cfg), shooting_options(cfg));
    const double K = compute_K(ref.problem, ref.states.back().y1);

    Sink sink(cfg.out_path, out);
    std::ostream& os = *sink;
    switch (fmt) {
    case OutputFormat::Csv: write_reference_csv(os, ref); break;
    case OutputFormat::Json: {
        json j = {{"config", config_json(cfg, fmt)},
                  {"s", ref.s},
                  {"achieved_tol", ref.achieved_tol},
                  {"secant_iterations", ref.secant_iterations},
                  {"K", K}};
        std::vector<double> f, fp, fpp;
        for (const auto& s : ref.states) {
            f.push_back(s.y0);
            fp.push_back(s.y1);
            fpp.push_back(s.y2);
        }
        j["eta"] = ref.grid;
        j["f"] = f;
        j["fp"] = fp;
        j["fpp"] = fpp;
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Pretty:
        os << "Shooting reference  Re = " << cfg.re << "  alpha = " << cfg.alpha_deg << " deg\n"
           << "  f''(0) = s         " << g11(ref.s) << "\n"
           << "  |f(1)|             " << format_scientific(ref.achieved_tol, 3) << "\n"
           << "  secant iterations  " << ref.secant_iterations << "\n"
           << "  grid points        " << ref.grid.size() << "\n"
           << "  f'(1)              " << g11(ref.states.back().y1) << "\n"
           << "  K                  " << g11(K) << "\n";
        break;
    }
    return kOk;
}

int cmd_table(const RunConfig& cfg, OutputFormat fmt, std::ostream& out, std::ostream& err)
{
    validate_case(cfg);
    validate_hermite(cfg.order);
    require(cfg.eta_step > 0.0 && cfg.eta_step <= 1.0, "--eta-step must lie in (0, 1]");
    const double count = 1.0 / cfg.eta_step;
    const long rows = std::lround(count);
    require(std::abs(count - static_cast<double>(rows)) < 1e-9,
            "--eta-step must divide 1 into a whole number of steps");
    const FemSolution sol = solve_or_fail(cfg, cfg.order, err);

    std::vector<std::pair<double, double>> table;
    for (long i = 0; i <= rows; ++i) {
        const double eta = static_cast<double>(i) / static_cast<double>(rows);
        table.emplace_back(eta, sol.eval(eta).f);
    }

    Sink sink(cfg.out_path, out);
    std::ostream& os = *sink;
    switch (fmt) {
    case OutputFormat::Csv:
        os << "eta,f\n";
        for (const auto& [eta, f] : table) {
            os << g17(eta) << ',' << g17(f) << '\n';
        }
        break;
    case OutputFormat::Json: {
        json j = {{"config", config_json(cfg, fmt)}, {"eta", json::array()}, {"f", json::array()}};
        for (const auto& [eta, f] : table) {
            j["eta"].push_back(eta);
            j["f"].push_back(f);
        }
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Pretty: {
        std::ostringstream head;
        head << "Re = " << cfg.re << ", alpha = " << cfg.alpha_deg << " deg";
        os << std::left << std::setw(8) << "eta" << head.str() << "\n";
        for (const auto& [eta, f] : table) {
            char eta_buf[16];
            std::snprintf(eta_buf, sizeof eta_buf, "%.4g", eta);
            os << std::left << std::setw(8) << eta_buf << format_scientific(f, 11) << "\n";
        }
        break;
    }
    }
    return kOk;
}

std::string file_for_order(const std::string& prefix, int order)
{
    std::string stem = prefix;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) {
        stem.resize(stem.size() - 4);
    }
    return stem + "_p" + std::to_string(order) + ".csv";
}

json report_json(const ConvergenceReport& r)
{
    json rows = json::array();
    for (const auto& e : r.rows) {
        rows.push_back({{"n_elem", e.n_elem}, {"n_nodes", e.n_elem + 1}, {"l2_error", e.l2},
                        {"h1_error", e.h1}});
    }
    return {{"case", r.case_label}, {"degree", r.degree}, {"slope_l2", r.slope_l2},
            {"slope_h1", r.slope_h1}, {"notices", r.notices}, {"rows", rows}};
}

void emit_reports(const RunConfig& cfg, OutputFormat fmt, const std::vector<ConvergenceReport>& reports,
                  std::ostream& out, std::ostream& err)
{
    for (const auto& r : reports) {
        for (const auto& n : r.notices) {
            err << "notice: p = " << r.degree << ": " << n << '\n';
        }
    }
    if (fmt == OutputFormat::Csv && cfg.out_path) {
        // One schema-clean file per order; slopes go to the summary on out.
        for (const auto& r : reports) {
            const std::string path = file_for_order(*cfg.out_path, r.degree);
            std::ofstream f(path);
            if (!f) {
                throw UsageError("cannot open '" + path + "' for writing");
            }
            write_convergence_csv(f, r);
            out << "wrote " << path << "  slope_l2 = " << format_general(r.slope_l2, 6)
                << "  slope_h1 = " << format_general(r.slope_h1, 6) << '\n';
        }
        return;
    }
    Sink sink(cfg.out_path, out);
    std::ostream& os = *sink;
    switch (fmt) {
    case OutputFormat::Csv:
        for (const auto& r : reports) {
            os << "# " << r.case_label << " p=" << r.degree << " slope_l2=" << g17(r.slope_l2)
               << " slope_h1=" << g17(r.slope_h1) << '\n';
            write_convergence_csv(os, r);
        }
        break;
    case OutputFormat::Json: {
        json j = {{"config", config_json(cfg, fmt)}, {"reports", json::array()}};
        for (const auto& r : reports) {
            j["reports"].push_back(report_json(r));
        }
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Pretty:
        for (const auto& r : reports) {
            os << r.case_label << "  p = " << r.degree << "\n";
            os << "  " << std::left << std::setw(8) << "N" << std::setw(20) << "L2 error"
               << "H1 error\n";
            for (const auto& e : r.rows) {
                os << "  " << std::setw(8) << e.n_elem << std::setw(20) << format_scientific(e.l2, 11)
                   << format_scientific(e.h1, 11) << "\n";
            }
            os << "  slopes: L2 " << format_general(r.slope_l2, 4) << ", H1 "
               << format_general(r.slope_h1, 4) << "\n";
        }
        break;
    }
}

int cmd_convergence(RunConfig cfg, OutputFormat fmt, std::ostream& out, std::ostream& err)
{
    validate_case(cfg);
    if (cfg.orders.empty()) {
        cfg.orders = {3, 4};
    }
    if (cfg.n_elems.empty()) {
        cfg.n_elems = {10, 20, 40, 80, 160, 320};
    }
    for (int p : cfg.orders) {
        validate_hermite(p);
    }
    require(cfg.n_elems.size() >= 3, "--nelems needs at least three mesh sizes");
    require(std::all_of(cfg.n_elems.begin(), cfg.n_elems.end(), [](int n) { return n >= 1; }),
            "--nelems entries must be positive");

    const JhProblem problem = problem_of(cfg);
    const ReferenceSolution ref = shoot(problem, shooting_options(cfg));
    std::ostringstream label;
    label << "jeffery-hamel Re=" << cfg.re << " alpha=" << cfg.alpha_deg;
    std::vector<ConvergenceReport> reports;
    for (int p : cfg.orders) {
        ConvergenceReport r = jh_convergence(problem, p, cfg.n_elems, ref, thread_count());
        r.case_label = label.str();
        reports.push_back(std::move(r));
    }
    emit_reports(cfg, fmt, reports, out, err);
    return kOk;
}

int cmd_model(RunConfig cfg, OutputFormat fmt, std::ostream& out, std::ostream& err)
{
    if (cfg.orders.empty()) {
        cfg.orders = {1, 2, 3, 4, 5};
    }
    if (cfg.n_elems.empty()) {
        cfg.n_elems = {8, 16, 32, 64, 128};
    }
    for (int p : cfg.orders) {
        require(p >= 1 && p <= 5, "model orders must lie in 1..5");
    }
    require(cfg.n_elems.size() >= 5, "--nelems needs at least five mesh sizes");
    Formulation form{};
    try {
        form = parse_formulation(cfg.formulation);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    std::vector<ConvergenceReport> reports;
    for (int p : cfg.orders) {
        reports.push_back(model_convergence(p, form, cfg.n_elems, thread_count()));
    }
    emit_reports(cfg, fmt, reports, out, err);
    return kOk;
}

int cmd_fields(const RunConfig& cfg, OutputFormat fmt, std::ostream& out, std::ostream& err)
{
    validate_case(cfg);
    validate_hermite(cfg.order);
    require(cfg.r1 > 0.0 && cfg.r2 >= cfg.r1, "need 0 < --r1 <= --r2");
    require(cfg.nr >= 1 && cfg.ntheta >= 1, "--nr and --ntheta must be positive");
    require(cfg.nu > 0.0 && cfg.rho > 0.0, "--nu and --rho must be positive");
    const FemSolution sol = solve_or_fail(cfg, cfg.order, err);
    const JhProblem problem = problem_of(cfg);
    const WedgeFieldConfig wcfg = WedgeFieldConfig::make(
        problem, FluidProps::from_nu_rho(cfg.nu, cfg.rho), cfg.pin, sol.eval(1.0).fp);

    auto lattice = [](double a, double b, int n, int i) {
        return n == 1 ? a : (i == n - 1 ? b : a + (b - a) * i / (n - 1));
    };
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < cfg.nr; ++i) {
        for (int j = 0; j < cfg.ntheta; ++j) {
            const double theta = cfg.ntheta == 1 ? 0.0 : lattice(-problem.alpha, problem.alpha, cfg.ntheta, j);
            points.emplace_back(lattice(cfg.r1, cfg.r2, cfg.nr, i), theta);
        }
    }
    const auto samples = wedge_fields(wcfg, profile_of(sol), points);

    Sink sink(cfg.out_path, out);
    std::ostream& os = *sink;
    switch (fmt) {
    case OutputFormat::Csv: write_fields_csv(os, samples); break;
    case OutputFormat::Json: {
        json j = {{"config", config_json(cfg, fmt)}, {"lambda", wcfg.lambda}, {"K", wcfg.K},
                  {"samples", json::array()}};
        for (const auto& s : samples) {
            j["samples"].push_back({{"r", s.r}, {"theta", s.theta}, {"u_r", s.u_r}, {"p", s.p}});
        }
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Pretty:
        os << "lambda = " << g11(wcfg.lambda) << "  K = " << g11(wcfg.K) << "\n";
        os << std::left << std::setw(20) << "r" << std::setw(20) << "theta" << std::setw(20)
           << "u_r" << "p\n";
        for (const auto& s : samples) {
            os << std::setw(20) << g11(s.r) << std::setw(20) << g11(s.theta) << std::setw(20)
               << g11(s.u_r) << g11(s.p) << "\n";
        }
        break;
    }
    return kOk;
}

int cmd_check(const RunConfig& cfg, OutputFormat fmt, std::ostream& out, std::ostream& err)
{
    validate_case(cfg);
    validate_hermite(cfg.order);
    const JhProblem problem = problem_of(cfg);

    struct Item {
        std::string name;
        bool pass;
        double value;
        double limit;
    };
    std::vector<Item> items;

    double quad = 0.0;
    for (int n = 1; n <= 16; ++n) {
        quad = std::max(quad, quadrature_exactness_defect(n));
    }
    items.push_back({"quadrature-exactness", quad <= 1e-13, quad, 1e-13});

    const DofMap small(Mesh1D(std::min(cfg.n_elem, 8)), ElementFamily::hermite(cfg.order),
                       jeffery_hamel_conditions());
    const JacobianCheck jc = jacobian_fd_check(problem, small, 20, 20240601);
    items.push_back({"jacobian-fd", jc.max_violation <= 1e-6, jc.max_violation, 1e-6});

    const FemSolution sol = solve_or_fail(cfg, cfg.order, err);
    const DualityCheck dc = duality_pairing_check(sol, problem);
    items.push_back({"duality-identity", std::abs(dc.difference) <= 1e-9, std::abs(dc.difference), 1e-9});

    const bool all = std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
    Sink sink(cfg.out_path, out);
    std::ostream& os = *sink;
    switch (fmt) {
    case OutputFormat::Csv:
        os << "check,pass,value,limit\n";
        for (const auto& i : items) {
            os << i.name << ',' << (i.pass ? "true" : "false") << ',' << g17(i.value) << ','
               << g17(i.limit) << '\n';
        }
        break;
    case OutputFormat::Json: {
        json j = {{"config", config_json(cfg, fmt)}, {"passed", all}, {"checks", json::array()}};
        for (const auto& i : items) {
            j["checks"].push_back({{"name", i.name}, {"pass", i.pass}, {"value", i.value}, {"limit", i.limit}});
        }
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Pretty:
        for (const auto& i : items) {
            os << (i.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(22) << i.name
               << format_scientific(i.value, 3) << "  (limit " << format_scientific(i.limit, 1) << ")\n";
        }
        break;
    }
    if (!all) {
        err << "error: invariant check failed\n";
        return kNumericalFailure;
    }
    return kOk;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const OutputFormat fmt = cfg.output.value_or(default_format(cfg.command));
    validate_common(cfg);
    switch (cfg.command) {
    case Command::Solve: return cmd_solve(cfg, fmt, out, err);
    case Command::Reference: return cmd_reference(cfg, fmt, out);
    case Command::Table: return cmd_table(cfg, fmt, out, err);
    case Command::Convergence: return cmd_convergence(cfg, fmt, out, err);
    case Command::Model: return cmd_model(cfg, fmt, out, err);
    case Command::Fields: return cmd_fields(cfg, fmt, out, err);
    case Command::Check: return cmd_check(cfg, fmt, out, err);
    }
    return kUsageError;
}

} // namespace

std::vector<int> parse_int_list(const std::string& text)
{
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw std::invalid_argument("not an integer list: '" + text + "'");
        }
        return v;
    };
    std::vector<int> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = to_int(text.substr(0, dots));
        const int hi = to_int(text.substr(dots + 2));
        if (hi < lo) {
            throw std::invalid_argument("empty range '" + text + "'");
        }
        for (int v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(to_int(item));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list");
    }
    return out;
}

int thread_count()
{
    if (const char* env = std::getenv("JH_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) {
            throw UsageError("JH_THREADS must be a positive integer");
        }
        return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    std::string orders_text;
    std::string nelems_text;

    CLI::App app{"Jeffery-Hamel flow: C1 Hermite finite elements, shooting reference, studies"};
    app.name("jhfem");
    app.require_subcommand(1);

    const std::map<std::string, OutputFormat> formats{
        {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}, {"pretty", OutputFormat::Pretty}};

    auto add_case = [&](CLI::App* sub) {
        sub->add_option("--re", cfg.re, "Reynolds number (negative: inflow)")->capture_default_str();
        sub->add_option("--alpha-deg", cfg.alpha_deg, "wedge half-angle in degrees, (0, 90)")
            ->capture_default_str();
    };
    auto add_fem = [&](CLI::App* sub) {
        sub->add_option("--order", cfg.order, "Hermite degree 3..5")->capture_default_str();
        sub->add_option("--nelem", cfg.n_elem, "number of elements")->capture_default_str();
        sub->add_option("--newton-tol", cfg.newton_tol, "Newton residual tolerance")->capture_default_str();
    };
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output, "csv | json | pretty")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
            ->option_text("FORMAT");
        sub->add_option("--out", cfg.out_path, "write output to this file (prefix for per-order CSV)");
    };
    auto add_shoot = [&](CLI::App* sub) {
        sub->add_option("--shoot-tol", cfg.shoot_tol, "shooting tolerance on |f(1)|")->capture_default_str();
    };

    auto* solve = app.add_subcommand("solve", "Newton solve; reports iterations, f'(1) and K");
    add_case(solve);
    add_fem(solve);
    add_io(solve);

    auto* reference = app.add_subcommand("reference", "dense shooting trajectory");
    add_case(reference);
    add_shoot(reference);
    add_io(reference);

    auto* table = app.add_subcommand("table", "tabulate f(eta) on a uniform eta grid");
    add_case(table);
    add_fem(table);
    add_io(table);
    table->add_option("--eta-step", cfg.eta_step, "eta spacing")->capture_default_str();

    auto* convergence = app.add_subcommand("convergence", "error study against the shooting reference");
    add_case(convergence);
    add_shoot(convergence);
    add_io(convergence);
    convergence->add_option("--newton-tol", cfg.newton_tol, "Newton residual tolerance")->capture_default_str();
    convergence->add_option("--orders", orders_text, "e.g. 3,4 or 3..5 (default 3,4)");
    convergence->add_option("--nelems", nelems_text, "mesh sizes (default 10,20,40,80,160,320)");

    auto* model = app.add_subcommand("model", "first-order model problem u' + u = g");
    add_io(model);
    model->add_option("--orders", orders_text, "e.g. 1..5 (default) or 1,3,5");
    model->add_option("--nelems", nelems_text, "mesh sizes (default 8,16,32,64,128)");
    model->add_option("--formulation", cfg.formulation, "galerkin | least-squares")->capture_default_str();

    auto* fields = app.add_subcommand("fields", "velocity and pressure on an (r, theta) lattice");
    add_case(fields);
    add_fem(fields);
    add_io(fields);
    fields->add_option("--r1", cfg.r1, "inner radius")->capture_default_str();
    fields->add_option("--r2", cfg.r2, "outer radius")->capture_default_str();
    fields->add_option("--nr", cfg.nr, "radial samples")->capture_default_str();
    fields->add_option("--ntheta", cfg.ntheta, "angular samples across the wedge")->capture_default_str();
    fields->add_option("--nu", cfg.nu, "kinematic viscosity")->capture_default_str();
    fields->add_option("--rho", cfg.rho, "density")->capture_default_str();
    fields->add_option("--pin", cfg.pin, "pressure constant p*")->capture_default_str();

    auto* check = app.add_subcommand("check", "Jacobian FD, quadrature exactness, duality identity");
    add_case(check);
    add_fem(check);
    add_io(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    const std::vector<std::pair<CLI::App*, Command>> commands{
        {solve, Command::Solve},         {reference, Command::Reference},
        {table, Command::Table},         {convergence, Command::Convergence},
        {model, Command::Model},         {fields, Command::Fields},
        {check, Command::Check}};
    for (const auto& [sub, c] : commands) {
        if (sub->parsed()) {
            cfg.command = c;
        }
    }

    try {
        try {
            if (!orders_text.empty()) {
                cfg.orders = parse_int_list(orders_text);
            }
            if (!nelems_text.empty()) {
                cfg.n_elems = parse_int_list(nelems_text);
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return dispatch(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsageError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ReportedFailure&) {
        return kNumericalFailure;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        print_history(err, e.norm_history());
        return kNumericalFailure;
    } catch (const ShootingError& e) {
        err << "error: " << e.what() << "\nsecant history (s, f(1)):";
        for (const auto& [s, g] : e.history()) {
            err << " (" << g17(s) << ", " << format_scientific(g, 3) << ')';
        }
        err << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"jhfem"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace jhfem::cli
