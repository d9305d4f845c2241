#include "jhfem/mesh_dof.hpp"

#include "jhfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jhfem {

Mesh1D::Mesh1D(int n_elem) : n_elem_(n_elem), h_(0.0)
{
    if (n_elem < 1) {
        throw InvalidArgument("Mesh1D: n_elem must be >= 1, got " + std::to_string(n_elem));
    }
    h_ = 1.0 / n_elem;
    nodes_.resize(static_cast<std::size_t>(n_elem) + 1);
    for (int i = 0; i <= n_elem; ++i) {
        nodes_[static_cast<std::size_t>(i)] = static_cast<double>(i) / n_elem;
    }
}

Mesh1D::Location Mesh1D::locate(double x) const
{
    x = std::clamp(x, 0.0, 1.0);
    int e = static_cast<int>(std::floor(x * n_elem_));
    e = std::clamp(e, 0, n_elem_ - 1);
    // floor() can land one element off when x sits on a node up to rounding.
    if (e + 1 < n_elem_ && x >= nodes_[static_cast<std::size_t>(e) + 1]) {
        ++e;
    } else if (e > 0 && x < nodes_[static_cast<std::size_t>(e)]) {
        --e;
    }
    const double t = std::clamp((x - nodes_[static_cast<std::size_t>(e)]) * n_elem_, 0.0, 1.0);
    return {e, t};
}

Mesh1D build_mesh(int n_elem) { return Mesh1D(n_elem); }

std::vector<DirichletCondition> jeffery_hamel_conditions()
{
    return {{Side::Left, NodalDof::Value, 1.0},
            {Side::Left, NodalDof::Slope, 0.0},
            {Side::Right, NodalDof::Value, 0.0}};
}

std::vector<DirichletCondition> model_problem_conditions()
{
    return {{Side::Left, NodalDof::Value, 1.0}};
}

DofMap::DofMap(Mesh1D mesh, ElementFamily family, std::span<const DirichletCondition> conditions)
    : mesh_(std::move(mesh)), family_(family)
{
    const int n_elem = mesh_.n_elem();
    const int per_node = family_.dofs_per_node();
    const int bubbles = family_.bubbles_per_element();
    stride_ = per_node + bubbles;
    n_global_ = per_node * (n_elem + 1) + bubbles * n_elem;

    const int nf = family_.functions_per_element();
    element_table_.resize(static_cast<std::size_t>(n_elem * nf));
    half_bandwidth_ = 0;
    for (int e = 0; e < n_elem; ++e) {
        int* row = &element_table_[static_cast<std::size_t>(e * nf)];
        const int left = e * stride_;
        const int right = (e + 1) * stride_;
        int k = 0;
        for (int d = 0; d < per_node; ++d) {
            row[k++] = left + d;
        }
        for (int d = 0; d < per_node; ++d) {
            row[k++] = right + d;
        }
        for (int b = 0; b < bubbles; ++b) {
            row[k++] = left + per_node + b;
        }
        const auto [lo, hi] = std::minmax_element(row, row + nf);
        half_bandwidth_ = std::max(half_bandwidth_, *hi - *lo);
    }

    constrained_mask_.assign(static_cast<std::size_t>(n_global_), false);
    for (const auto& c : conditions) {
        if (c.dof == NodalDof::Slope && per_node < 2) {
            throw InvalidArgument("DofMap: slope constraint requested for a C0 family");
        }
        const int node = c.side == Side::Left ? 0 : n_elem;
        const int dof = nodal_dof(node, c.dof);
        constraints_[dof] = c.value;
        constrained_mask_[static_cast<std::size_t>(dof)] = true;
    }
}

std::span<const int> DofMap::element_dofs(int elem) const
{
    const auto nf = static_cast<std::size_t>(family_.functions_per_element());
    return {element_table_.data() + static_cast<std::size_t>(elem) * nf, nf};
}

int DofMap::nodal_dof(int node, NodalDof kind) const
{
    if (node < 0 || node > mesh_.n_elem()) {
        throw InvalidArgument("DofMap: node index " + std::to_string(node) + " out of range");
    }
    if (kind == NodalDof::Slope && family_.dofs_per_node() < 2) {
        throw InvalidArgument("DofMap: C0 family has no slope DOFs");
    }
    return node * stride_ + (kind == NodalDof::Slope ? 1 : 0);
}

std::vector<int> DofMap::free_dofs() const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n_global_) - constraints_.size());
    for (int i = 0; i < n_global_; ++i) {
        if (!is_constrained(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<double> DofMap::seeded_vector() const
{
    std::vector<double> v(static_cast<std::size_t>(n_global_), 0.0);
    for (const auto& [dof, value] : constraints_) {
        v[static_cast<std::size_t>(dof)] = value;
    }
    return v;
}

DofMap build_dofmap(const Mesh1D& mesh, const ElementFamily& family,
                    std::span<const DirichletCondition> conditions)
{
    return DofMap(mesh, family, conditions);
}

} // namespace jhfem
