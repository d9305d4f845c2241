#pragma once

#include "jhfem/basis.hpp"
#include "jhfem/quadrature.hpp"

#include <vector>

namespace jhfem::detail {

// On a uniform mesh every element sees the same physical shape values at the
// same quadrature points, so tabulate once per (family, h, rule).
struct ShapeTable {
    std::vector<ShapeEval> at_points;
    std::vector<double> weights; // already scaled by h
    ShapeEval left_end;          // t = 0
    ShapeEval right_end;         // t = 1, for boundary terms at x = 1

    ShapeTable(const ElementFamily& family, double h, const QuadratureRule& rule)
    {
        at_points.reserve(rule.size());
        weights.reserve(rule.size());
        for (std::size_t q = 0; q < rule.size(); ++q) {
            at_points.push_back(eval_physical(family, rule.points[q], h));
            weights.push_back(rule.weights[q] * h);
        }
        left_end = eval_physical(family, 0.0, h);
        right_end = eval_physical(family, 1.0, h);
    }
};

} // namespace jhfem::detail
