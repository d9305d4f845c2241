#include "jhfem/csv_io.hpp"

#include "jhfem/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace jhfem {

std::string format_general(double value, int significant_digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
    return buf;
}

std::string format_scientific(double value, int significant_digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", significant_digits - 1, value);
    return buf;
}

void write_reference_csv(std::ostream& os, const ReferenceSolution& ref)
{
    os << "eta,f,fp,fpp\n";
    for (std::size_t i = 0; i < ref.grid.size(); ++i) {
        const IvpState& s = ref.states[i];
        os << format_general(ref.grid[i]) << ',' << format_general(s.y0) << ','
           << format_general(s.y1) << ',' << format_general(s.y2) << '\n';
    }
}

std::vector<ReferenceRow> read_reference_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != "eta,f,fp,fpp") {
        throw InvalidArgument("read_reference_csv: expected header 'eta,f,fp,fpp'");
    }
    std::vector<ReferenceRow> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        double v[4];
        const char* p = line.c_str();
        for (int k = 0; k < 4; ++k) {
            char* end = nullptr;
            v[k] = std::strtod(p, &end);
            const char expected = k < 3 ? ',' : '\0';
            if (end == p || *end != expected) {
                throw InvalidArgument("read_reference_csv: malformed line " +
                                      std::to_string(line_no));
            }
            p = end + 1;
        }
        rows.push_back({v[0], v[1], v[2], v[3]});
    }
    return rows;
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report)
{
    os << "n_elem,n_nodes,l2_error,h1_error\n";
    for (const auto& r : report.rows) {
        os << r.n_elem << ',' << r.n_elem + 1 << ',' << format_general(r.l2) << ','
           << format_general(r.h1) << '\n';
    }
}

void write_fields_csv(std::ostream& os, std::span<const FieldSample> samples)
{
    os << "r,theta,u_r,p\n";
    for (const auto& s : samples) {
        os << format_general(s.r) << ',' << format_general(s.theta) << ','
           << format_general(s.u_r) << ',' << format_general(s.p) << '\n';
    }
}

} // namespace jhfem
