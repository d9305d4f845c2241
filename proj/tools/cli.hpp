#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace jhfem::cli {

enum class Command { Solve, Reference, Table, Convergence, Model, Fields, Check };
enum class OutputFormat { Csv, Json, Pretty };

struct RunConfig {
    Command command = Command::Solve;
    double re = 30.0;
    double alpha_deg = 15.0;
    int order = 4;
    int n_elem = 320;
    double newton_tol = 1e-12;
    double shoot_tol = 1e-13;
    std::optional<OutputFormat> output; // unset: per-command default
    std::optional<std::string> out_path;

    // table
    double eta_step = 0.1;
    // convergence / model
    std::vector<int> orders;
    std::vector<int> n_elems;
    std::string formulation = "galerkin";
    // fields
    double r1 = 1.0;
    double r2 = 2.0;
    int nr = 5;
    int ntheta = 9;
    double nu = 1e-6;
    double rho = 1000.0;
    double pin = 0.0;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kUsageError = 2;

/// Parses argv (argv[0] is the program name) and runs the command. Primary
/// output goes to `out` unless --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1..5" or "3,4" -> list of integers. Throws std::invalid_argument.
std::vector<int> parse_int_list(const std::string& text);

/// JH_THREADS if set (must be a positive integer), else the processor count.
int thread_count();

} // namespace jhfem::cli
