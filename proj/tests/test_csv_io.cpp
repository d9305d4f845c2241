#include "jhfem/csv_io.hpp"
#include "jhfem/errors.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace jhfem;

TEST(Csv, ReferenceRoundTripIsExact)
{
    const ReferenceSolution ref = shoot(JhProblem::from_degrees(110, 3));
    std::stringstream ss;
    write_reference_csv(ss, ref);
    const auto rows = read_reference_csv(ss);
    ASSERT_EQ(rows.size(), ref.grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].eta, ref.grid[i]);
        EXPECT_EQ(rows[i].f, ref.states[i].y0);
        EXPECT_EQ(rows[i].fp, ref.states[i].y1);
        EXPECT_EQ(rows[i].fpp, ref.states[i].y2);
    }
}

TEST(Csv, ReaderRejectsBadInput)
{
    std::istringstream bad_header("x,y\n1,2\n");
    EXPECT_THROW(read_reference_csv(bad_header), InvalidArgument);
    std::istringstream bad_row("eta,f,fp,fpp\n0,1,2\n");
    EXPECT_THROW(read_reference_csv(bad_row), InvalidArgument);
    std::istringstream junk("eta,f,fp,fpp\n0,1,2,abc\n");
    EXPECT_THROW(read_reference_csv(junk), InvalidArgument);
}

TEST(Csv, ConvergenceSchema)
{
    ConvergenceReport r;
    r.rows = {{0.5, 1.5, 10, 4}, {0.25, 0.75, 20, 4}};
    std::ostringstream os;
    write_convergence_csv(os, r);
    EXPECT_EQ(os.str(), "n_elem,n_nodes,l2_error,h1_error\n10,11,0.5,1.5\n20,21,0.25,0.75\n");
}

TEST(Csv, FieldsSchema)
{
    const std::vector<FieldSample> s{{1.0, 0.0, 2.0, -3.0}};
    std::ostringstream os;
    write_fields_csv(os, s);
    EXPECT_EQ(os.str(), "r,theta,u_r,p\n1,0,2,-3\n");
}

TEST(Csv, NumberFormats)
{
    EXPECT_EQ(format_general(0.1), "0.10000000000000001");
    EXPECT_EQ(format_general(-9.78221464495, 11), "-9.782214645");
    EXPECT_EQ(format_scientific(0.0912304210983), "9.1230421098e-02");
}
