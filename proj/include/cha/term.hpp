#pragma once

#include <cha/rational.hpp>

#include <set>
#include <string>
#include <vector>

namespace cha {

// Prolog-style term. Atoms are compounds of arity zero; lists use '.'/2 and
// '[]'. Arithmetic expressions are ordinary compounds over the operator
// functors (+, -, *, >>, \/, ...).
class Term {
  public:
    enum class Kind { Variable, Integer, Compound };

    Term() : Term(Kind::Integer, {}, Integer(0), {}) {}

    static Term variable(std::string name) { return {Kind::Variable, std::move(name), {}, {}}; }
    static Term integer(Integer value) { return {Kind::Integer, {}, std::move(value), {}}; }
    static Term integer(long value) { return integer(Integer(value)); }
    static Term compound(std::string functor, std::vector<Term> args) {
        return {Kind::Compound, std::move(functor), {}, std::move(args)};
    }
    static Term atom(std::string name) { return compound(std::move(name), {}); }
    static Term nil() { return atom("[]"); }
    static Term cons(Term head, Term tail) { return compound(".", {std::move(head), std::move(tail)}); }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_variable() const { return kind_ == Kind::Variable; }
    [[nodiscard]] bool is_integer() const { return kind_ == Kind::Integer; }
    [[nodiscard]] bool is_compound() const { return kind_ == Kind::Compound; }
    [[nodiscard]] bool is_atom() const { return is_compound() && args_.empty(); }
    [[nodiscard]] bool is_nil() const { return is_atom() && name_ == "[]"; }
    [[nodiscard]] bool is_cons() const { return is_compound() && name_ == "." && args_.size() == 2; }

    // Variable name or functor.
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Integer& value() const { return value_; }
    [[nodiscard]] const std::vector<Term>& args() const { return args_; }
    [[nodiscard]] std::size_t arity() const { return args_.size(); }

    friend bool operator==(const Term&, const Term&) = default;

  private:
    Term(Kind kind, std::string name, Integer value, std::vector<Term> args)
        : kind_(kind), name_(std::move(name)), value_(std::move(value)), args_(std::move(args)) {}

    Kind kind_;
    std::string name_;
    Integer value_;
    std::vector<Term> args_;
};

// True for the evaluable functors: binary + - * / // mod >> << /\ \/ and unary -.
bool is_arithmetic_functor(const std::string& functor, std::size_t arity);

// Variables, integers and evaluable functors only.
bool is_arithmetic(const Term& term);

// Appends variable names in first-occurrence (left-to-right) order.
void collect_variables(const Term& term, std::vector<std::string>& out);

// Source text with minimal parentheses; lists print as [a,b|T].
std::string to_string(const Term& term);

}  // namespace cha
