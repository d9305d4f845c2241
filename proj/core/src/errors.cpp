#include "jhfem/errors.hpp"

#include <cstdio>

namespace jhfem {

namespace {

std::string singular_message(std::size_t pivot_index, double pivot_magnitude)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "singular matrix: pivot %zu has magnitude %.3e",
                  pivot_index, pivot_magnitude);
    return buf;
}

} // namespace

SingularMatrixError::SingularMatrixError(std::size_t pivot_index, double pivot_magnitude)
    : std::runtime_error(singular_message(pivot_index, pivot_magnitude)),
      pivot_index_(pivot_index),
      pivot_magnitude_(pivot_magnitude)
{
}

IntegrationError::IntegrationError(double eta, const std::string& what)
    : std::runtime_error(what), eta_(eta)
{
}

ShootingError::ShootingError(const std::string& what, History history)
    : std::runtime_error(what), history_(std::move(history))
{
}

ConvergenceError::ConvergenceError(const std::string& what, std::vector<double> norm_history)
    : std::runtime_error(what), history_(std::move(norm_history))
{
}

} // namespace jhfem
