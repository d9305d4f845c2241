#pragma once

#include "jhfem/basis.hpp"

#include <map>
#include <span>
#include <vector>

namespace jhfem {

/// Uniform mesh of (0, 1).
class Mesh1D {
public:
    explicit Mesh1D(int n_elem);

    [[nodiscard]] int n_elem() const noexcept { return n_elem_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] double left(int elem) const { return nodes_[static_cast<std::size_t>(elem)]; }

    struct Location {
        int elem;
        double t; ///< reference coordinate in [0, 1]
    };

    /// Element containing x (clamped to [0, 1]). Interior nodes belong to the
    /// element on their right, x = 1 to the last element.
    [[nodiscard]] Location locate(double x) const;

private:
    int n_elem_;
    double h_;
    std::vector<double> nodes_;
};

Mesh1D build_mesh(int n_elem);

enum class Side { Left, Right };
enum class NodalDof { Value, Slope };

struct DirichletCondition {
    Side side;
    NodalDof dof;
    double value;
};

/// f(0) = 1, f'(0) = 0, f(1) = 0.
std::vector<DirichletCondition> jeffery_hamel_conditions();

/// u(0) = 1.
std::vector<DirichletCondition> model_problem_conditions();

/// Global numbering. Per node: value (then slope for Hermite); after each
/// node's DOFs come the bubbles of the element to its right. Every element's
/// DOFs are therefore a contiguous block and the half-bandwidth equals p.
class DofMap {
public:
    DofMap(Mesh1D mesh, ElementFamily family, std::span<const DirichletCondition> conditions);

    [[nodiscard]] const Mesh1D& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const ElementFamily& family() const noexcept { return family_; }
    [[nodiscard]] int n_global() const noexcept { return n_global_; }
    [[nodiscard]] int half_bandwidth() const noexcept { return half_bandwidth_; }

    /// Global indices of element e's shape functions, in reference order.
    [[nodiscard]] std::span<const int> element_dofs(int elem) const;

    [[nodiscard]] int nodal_dof(int node, NodalDof kind) const;

    [[nodiscard]] const std::map<int, double>& constraints() const noexcept { return constraints_; }
    [[nodiscard]] bool is_constrained(int dof) const
    {
        return constrained_mask_[static_cast<std::size_t>(dof)];
    }
    [[nodiscard]] std::vector<int> free_dofs() const;

    /// Zero vector with the prescribed values written into constrained slots.
    [[nodiscard]] std::vector<double> seeded_vector() const;

private:
    Mesh1D mesh_;
    ElementFamily family_;
    int stride_;        // DOFs per node + bubbles per element
    int n_global_;
    int half_bandwidth_;
    std::vector<int> element_table_; // n_elem x (p + 1)
    std::map<int, double> constraints_;
    std::vector<bool> constrained_mask_;
};

DofMap build_dofmap(const Mesh1D& mesh, const ElementFamily& family,
                    std::span<const DirichletCondition> conditions);

} // namespace jhfem
