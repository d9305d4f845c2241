#pragma once

#include "jhfem/analysis.hpp"
#include "jhfem/shooting.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace jhfem {

/// printf-style %.{digits}g / %.{digits-1}e rendering.
std::string format_general(double value, int significant_digits = 17);
std::string format_scientific(double value, int significant_digits = 11);

/// Header `eta,f,fp,fpp`, one row per dense grid point, 17 significant digits.
void write_reference_csv(std::ostream& os, const ReferenceSolution& ref);

struct ReferenceRow {
    double eta, f, fp, fpp;
};
/// Parses what write_reference_csv produced. Throws InvalidArgument on a bad
/// header or malformed row.
std::vector<ReferenceRow> read_reference_csv(std::istream& is);

/// Header `n_elem,n_nodes,l2_error,h1_error`.
void write_convergence_csv(std::ostream& os, const ConvergenceReport& report);

/// Header `r,theta,u_r,p`.
void write_fields_csv(std::ostream& os, std::span<const FieldSample> samples);

} // namespace jhfem
