#pragma once

#include <cha/rational.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cha {

using Dim = std::size_t;

// sum_i coefficient(i) * x_i + constant. Zero coefficients are never stored.
class LinearExpression {
  public:
    LinearExpression() = default;
    explicit LinearExpression(Rational constant) : constant_(std::move(constant)) {}

    static LinearExpression variable(Dim dim, const Rational& coefficient = 1);

    [[nodiscard]] const std::map<Dim, Rational>& terms() const { return terms_; }
    [[nodiscard]] const Rational& constant() const { return constant_; }
    [[nodiscard]] Rational coefficient(Dim dim) const;
    [[nodiscard]] bool is_constant() const { return terms_.empty(); }
    [[nodiscard]] bool mentions(Dim dim) const { return terms_.contains(dim); }
    // One past the largest dimension with a nonzero coefficient (0 if constant).
    [[nodiscard]] Dim span_dimension() const;

    void add_term(Dim dim, const Rational& coefficient);
    void set_constant(Rational constant) { constant_ = std::move(constant); }

    [[nodiscard]] Rational evaluate(std::span<const Rational> point) const;

    LinearExpression& operator+=(const LinearExpression& other);
    LinearExpression& operator-=(const LinearExpression& other);
    LinearExpression& operator*=(const Rational& factor);

    friend LinearExpression operator+(LinearExpression lhs, const LinearExpression& rhs) { return lhs += rhs; }
    friend LinearExpression operator-(LinearExpression lhs, const LinearExpression& rhs) { return lhs -= rhs; }
    friend LinearExpression operator*(LinearExpression lhs, const Rational& rhs) { return lhs *= rhs; }
    friend LinearExpression operator*(const Rational& lhs, LinearExpression rhs) { return rhs *= lhs; }
    LinearExpression operator-() const { return *this * Rational(-1); }

    friend bool operator==(const LinearExpression&, const LinearExpression&) = default;

  private:
    std::map<Dim, Rational> terms_;
    Rational constant_;
};

// lhs = 0, lhs >= 0, lhs > 0.
enum class Relation { Eq, Geq, Gt };

class Constraint {
  public:
    Constraint(LinearExpression lhs, Relation relation) : lhs_(std::move(lhs)), relation_(relation) {}

    static Constraint equal(const LinearExpression& lhs, const LinearExpression& rhs) { return {lhs - rhs, Relation::Eq}; }
    static Constraint greater_equal(const LinearExpression& lhs, const LinearExpression& rhs) {
        return {lhs - rhs, Relation::Geq};
    }
    static Constraint greater(const LinearExpression& lhs, const LinearExpression& rhs) { return {lhs - rhs, Relation::Gt}; }
    static Constraint less_equal(const LinearExpression& lhs, const LinearExpression& rhs) {
        return {rhs - lhs, Relation::Geq};
    }
    static Constraint less(const LinearExpression& lhs, const LinearExpression& rhs) { return {rhs - lhs, Relation::Gt}; }

    [[nodiscard]] const LinearExpression& lhs() const { return lhs_; }
    [[nodiscard]] Relation relation() const { return relation_; }
    [[nodiscard]] bool is_strict() const { return relation_ == Relation::Gt; }
    [[nodiscard]] bool is_equality() const { return relation_ == Relation::Eq; }

    // Only meaningful when lhs is constant.
    [[nodiscard]] bool is_tautology() const;
    [[nodiscard]] bool is_contradiction() const;

    [[nodiscard]] bool holds_at(std::span<const Rational> point) const;

    // Scaled by a positive factor so that coefficients and constant are coprime
    // integers; equalities additionally get a positive leading coefficient.
    [[nodiscard]] Constraint normalized() const;

    // Complement of an inequality: not(e >= 0) is -e > 0, not(e > 0) is -e >= 0.
    // Precondition: !is_equality().
    [[nodiscard]] Constraint negated() const;

    // For equalities returns {e >= 0, -e >= 0}; otherwise the constraint itself.
    [[nodiscard]] std::vector<Constraint> as_inequalities() const;

    friend bool operator==(const Constraint&, const Constraint&) = default;

  private:
    LinearExpression lhs_;
    Relation relation_;
};

// Printing frame: A, B, ..., Z, A1, B1, ...
std::string dimension_name(Dim dim);

using DimensionNamer = std::function<std::string(Dim)>;

// Canonical text form, e.g. `-1*A> -10` or `11*A+ -10*B>=0`. Integer
// coefficients are printed after normalization.
std::string format_constraint(const Constraint& constraint, const DimensionNamer& namer = dimension_name);

// Ordering used for canonical output: first mentioned dimension, relation,
// coefficient vector, constant.
std::strong_ordering canonical_compare(const Constraint& a, const Constraint& b);

}  // namespace cha
