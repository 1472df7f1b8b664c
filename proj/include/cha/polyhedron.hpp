#pragma once

#include <cha/linear.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace cha {

namespace detail {
struct PolyhedronFactory;
}

/// A not-necessarily-closed convex polyhedron over Q^n, held as a minimized
/// constraint system with exact rational coefficients.
///
/// Every value is canonical on construction: implicit equalities are made
/// explicit and kept in reduced echelon form (pivoting on the highest
/// dimension), inequalities are reduced modulo the equalities, and no
/// constraint is entailed by the others. Values are immutable.
class Polyhedron {
  public:
    /// Canonicalizes `constraints` over a space of `dimension` coordinates.
    /// Throws DimensionError if a constraint mentions a dimension >= dimension.
    static Polyhedron make(Dim dimension, std::span<const Constraint> constraints);
    static Polyhedron make(Dim dimension, std::initializer_list<Constraint> constraints) {
        return make(dimension, std::span<const Constraint>(constraints.begin(), constraints.size()));
    }
    static Polyhedron universe(Dim dimension);
    static Polyhedron empty(Dim dimension);

    [[nodiscard]] Dim dimension() const { return dimension_; }
    [[nodiscard]] bool is_empty() const { return empty_; }
    [[nodiscard]] bool is_universe() const { return !empty_ && constraints_.empty(); }
    [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
    [[nodiscard]] std::size_t constraint_count() const { return constraints_.size(); }

    [[nodiscard]] bool contains(std::span<const Rational> point) const;
    [[nodiscard]] bool entails(const Constraint& constraint) const;
    /// Set inclusion: every point of `inner` is a point of *this.
    [[nodiscard]] bool includes(const Polyhedron& inner) const;
    [[nodiscard]] bool equivalent(const Polyhedron& other) const { return includes(other) && other.includes(*this); }

    /// Syntactic equality of the canonical forms.
    friend bool operator==(const Polyhedron&, const Polyhedron&) = default;

  private:
    friend struct detail::PolyhedronFactory;

    Polyhedron(Dim dimension, std::vector<Constraint> constraints, bool empty)
        : dimension_(dimension), constraints_(std::move(constraints)), empty_(empty) {}

    Dim dimension_ = 0;
    std::vector<Constraint> constraints_;
    bool empty_ = false;
};

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);

/// Least NNC polyhedron containing both arguments.
Polyhedron convex_hull(const Polyhedron& a, const Polyhedron& b);

/// Existentially quantifies `dims` and compacts the remaining coordinates,
/// preserving their relative order.
Polyhedron project_out(const Polyhedron& p, const std::set<Dim>& dims);

/// Solutions of `constraints` (over `dimension` coordinates) projected onto the
/// dimensions not listed in `dims`, compacted. Equivalent to
/// project_out(make(dimension, constraints), dims) without the intermediate
/// minimization.
Polyhedron project_system(Dim dimension, std::span<const Constraint> constraints, const std::set<Dim>& dims);

/// Renames dimension d to mapping[d] inside a space of `new_dimension`
/// coordinates. Unmapped dimensions must be unconstrained (ContractError
/// otherwise); the mapping must be injective.
Polyhedron remap(const Polyhedron& p, std::span<const std::optional<Dim>> mapping, Dim new_dimension);

/// Standard widening with Halbwachs' refinement. Expects `previous` to be
/// included in `next`; returns `next` when `previous` is empty.
Polyhedron widen_standard(const Polyhedron& previous, const Polyhedron& next);

/// Standard widening, then re-adds every constraint of `bound` that `next`
/// still satisfies.
Polyhedron widen_up_to(const Polyhedron& previous, const Polyhedron& next, const Polyhedron& bound);

}  // namespace cha
