#pragma once

// Dense integer constraint systems and Fourier-Motzkin elimination with
// strictness tracking. Internal to the polyhedra kernel.

#include <cha/linear.hpp>

#include <boost/dynamic_bitset.hpp>

#include <vector>

namespace cha::detail {

// sum_i coeffs[i] * x_i + constant (relation) 0
struct Row {
    std::vector<Integer> coeffs;
    Integer constant;
    Relation relation = Relation::Geq;
    // Indices of the inequalities this row was combined from (Chernikov's rule).
    boost::dynamic_bitset<> history;

    [[nodiscard]] bool is_ground() const;
    [[nodiscard]] bool ground_holds() const;
    [[nodiscard]] int coefficient_sign(Dim dim) const { return sgn(coeffs[dim]); }
};

// Divides by the gcd of all entries; equalities get a positive leading
// coefficient.
void normalize(Row& row);

// The inequality complement of an inequality row.
Row negate(const Row& row);

class ConstraintSystem {
  public:
    explicit ConstraintSystem(Dim dimension) : dimension_(dimension) {}

    [[nodiscard]] Dim dimension() const { return dimension_; }
    [[nodiscard]] bool known_infeasible() const { return infeasible_; }
    [[nodiscard]] const std::vector<Row>& rows() const { return rows_; }

    void add(const Constraint& constraint);
    void add(Row row);

    // Existentially quantifies every dimension with eliminate[d] set. The
    // dimensions stay in the coordinate space but no longer occur in any row.
    void eliminate(const std::vector<bool>& eliminate);

    [[nodiscard]] bool satisfiable() const;

    // Rows as constraints; `target[d]` renames dimension d (rows must not
    // mention dimensions mapped to npos).
    [[nodiscard]] std::vector<Constraint> to_constraints(const std::vector<Dim>& target) const;
    [[nodiscard]] std::vector<Constraint> to_constraints() const;

    static constexpr Dim npos = Dim(-1);

  private:
    void substitute_equalities(const std::vector<bool>& eliminate);
    void fourier_motzkin(const std::vector<bool>& eliminate);
    void remove_duplicates();

    Dim dimension_;
    std::vector<Row> rows_;
    bool infeasible_ = false;
};

Row to_row(const Constraint& constraint, Dim dimension);
Constraint to_constraint(const Row& row);

}  // namespace cha::detail
