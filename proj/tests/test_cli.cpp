#include "cli.hpp"

#include "jhfem/csv_io.hpp"
#include "jhfem/shooting.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using jhfem::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Second line of a two-line CSV, split on commas.
std::vector<std::string> csv_row(const std::string& text, std::size_t line = 1)
{
    std::istringstream is(text);
    std::string row;
    for (std::size_t i = 0; i <= line; ++i) {
        std::getline(is, row);
    }
    std::vector<std::string> cells;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

} // namespace

TEST(Cli, SolveReportsTabulatedK)
{
    const Result r = invoke({"solve", "--re", "30", "--alpha-deg", "15", "--order", "4", "--nelem", "320",
                             "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto cells = csv_row(r.out);
    ASSERT_EQ(cells.size(), 8u);
    EXPECT_EQ(cells[0], "320");
    EXPECT_EQ(cells[2], "962");
    EXPECT_NEAR(std::stod(cells[7]), -9.7822146449, 9.7822146449e-6);

    const Result pretty = invoke({"solve", "--re", "30", "--alpha-deg", "15", "--order", "4", "--nelem", "320"});
    ASSERT_EQ(pretty.code, 0);
    EXPECT_NE(pretty.out.find("-9.78221464"), std::string::npos) << pretty.out;
}

TEST(Cli, TableRowMatchesPublishedProfile)
{
    const Result r = invoke({"table", "--re", "110", "--alpha-deg", "3", "--order", "4", "--nelem", "320",
                             "--eta-step", "0.1", "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto row = csv_row(r.out, 10); // eta = 0.9
    EXPECT_NEAR(std::stod(row[0]), 0.9, 1e-15);
    EXPECT_NEAR(std::stod(row[1]), 9.1230421098e-2, 1e-8);
    EXPECT_EQ(csv_row(r.out, 11)[1], "0");
}

TEST(Cli, StokesCaseConvergesAndApproachesClosedFormK)
{
    const double exact = 3 + 2 * std::sqrt(3.0);
    const Result coarse = invoke({"solve", "--re", "0", "--alpha-deg", "15", "--order", "3", "--nelem", "4",
                                  "--output", "json"});
    ASSERT_EQ(coarse.code, 0) << coarse.err;
    const json j = json::parse(coarse.out);
    EXPECT_EQ(j["newton_iters"], 1);
    // Four cubic elements resolve K only to discretization accuracy.
    EXPECT_NEAR(j["K"].get<double>(), exact, 5e-3);

    const Result fine = invoke({"solve", "--re", "0", "--alpha-deg", "15", "--order", "4", "--nelem", "320",
                                "--output", "json"});
    ASSERT_EQ(fine.code, 0) << fine.err;
    EXPECT_NEAR(json::parse(fine.out)["K"].get<double>(), exact, 1e-9);
}

TEST(Cli, ReferenceIsDeterministicAndRoundTrips)
{
    const std::vector<std::string> args{"reference", "--re", "-80", "--alpha-deg", "5"};
    const Result a = invoke(args);
    const Result b = invoke(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);

    std::istringstream is(a.out);
    const auto rows = jhfem::read_reference_csv(is);
    const auto ref = jhfem::shoot(jhfem::JhProblem::from_degrees(-80, 5));
    ASSERT_EQ(rows.size(), ref.grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].f, ref.states[i].y0);
        EXPECT_EQ(rows[i].fpp, ref.states[i].y2);
    }
}

TEST(Cli, ModelStudyJson)
{
    const Result r = invoke({"model", "--orders", "1..5", "--formulation", "least-squares", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    ASSERT_EQ(j["reports"].size(), 5u);
    for (const auto& rep : j["reports"]) {
        const int p = rep["degree"];
        EXPECT_NEAR(rep["slope_l2"].get<double>(), p + 1, 0.25);
        EXPECT_NEAR(rep["slope_h1"].get<double>(), p, 0.25);
        EXPECT_EQ(rep["rows"].size(), 5u);
    }
    EXPECT_EQ(j["config"]["command"], "model");
}

TEST(Cli, ConvergenceWritesOneFilePerOrder)
{
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "jhfem_cli_test";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "study.csv").string();
    const Result r = invoke({"convergence", "--re", "30", "--alpha-deg", "15", "--orders", "3,4", "--nelems",
                             "10,20,40,80", "--out", prefix});
    ASSERT_EQ(r.code, 0) << r.err;
    for (int p : {3, 4}) {
        std::ifstream f(dir / ("study_p" + std::to_string(p) + ".csv"));
        ASSERT_TRUE(f.good());
        std::string header;
        std::getline(f, header);
        EXPECT_EQ(header, "n_elem,n_nodes,l2_error,h1_error");
    }
    EXPECT_NE(r.out.find("slope_l2"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Cli, FieldsLattice)
{
    const Result r = invoke({"fields", "--re", "30", "--alpha-deg", "15", "--nelem", "40", "--r1", "1", "--r2",
                             "3", "--nr", "3", "--ntheta", "5", "--nu", "1e-6", "--rho", "1000", "--pin", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "r,theta,u_r,p");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 15);
}

TEST(Cli, CheckPasses)
{
    const Result r = invoke({"check", "--re", "110", "--alpha-deg", "3", "--order", "5", "--nelem", "40"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"solve", "--alpha-deg", "0"}).code, 2);
    EXPECT_EQ(invoke({"solve", "--alpha-deg", "90"}).code, 2);
    EXPECT_EQ(invoke({"solve", "--order", "2"}).code, 2);
    EXPECT_EQ(invoke({"solve", "--bogus"}).code, 2);
    EXPECT_EQ(invoke({"solve", "--output", "xml"}).code, 2);
    EXPECT_EQ(invoke({"table", "--eta-step", "0.3"}).code, 2);
    EXPECT_EQ(invoke({"model", "--orders", "0..3"}).code, 2);
    EXPECT_EQ(invoke({"model", "--formulation", "petrov"}).code, 2);
    EXPECT_EQ(invoke({"fields", "--r1", "0"}).code, 2);
    const Result r = invoke({"frobnicate"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsZero)
{
    const Result r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("convergence"), std::string::npos);
}

TEST(Cli, NonConvergenceExitsOneWithHistory)
{
    const Result r = invoke({"solve", "--re", "30", "--alpha-deg", "15", "--nelem", "10", "--newton-tol", "1e-30"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("residual norm history"), std::string::npos);
}

TEST(Cli, ThreadEnvironmentVariable)
{
    ::setenv("JH_THREADS", "3", 1);
    EXPECT_EQ(jhfem::cli::thread_count(), 3);
    ::setenv("JH_THREADS", "zero", 1);
    EXPECT_EQ(invoke({"model", "--orders", "1"}).code, 2);
    ::unsetenv("JH_THREADS");
    EXPECT_GE(jhfem::cli::thread_count(), 1);
}

TEST(Cli, IntegerLists)
{
    EXPECT_EQ(jhfem::cli::parse_int_list("1..5"), (std::vector<int>{1, 2, 3, 4, 5}));
    EXPECT_EQ(jhfem::cli::parse_int_list("3,4"), (std::vector<int>{3, 4}));
    EXPECT_THROW(jhfem::cli::parse_int_list("3,x"), std::invalid_argument);
    EXPECT_THROW(jhfem::cli::parse_int_list("5..1"), std::invalid_argument);
}
