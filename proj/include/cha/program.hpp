#pragma once

#include <cha/term.hpp>

#include <compare>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace cha {

struct PredicateKey {
    std::string name;
    std::size_t arity = 0;

    friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
};

// name/arity
std::string to_string(const PredicateKey& key);

struct Atom {
    std::string name;
    std::vector<Term> args;

    [[nodiscard]] std::size_t arity() const { return args.size(); }
    [[nodiscard]] PredicateKey key() const { return {name, args.size()}; }

    friend bool operator==(const Atom&, const Atom&) = default;
};

enum class BuiltinOp { Is, Unify, ArithEq, Less, Greater, LessEq, GreaterEq, NotIdentical, ArithNotEq };

// Source spelling: "is", "=", "=:=", "<", ">", "=<", ">=", "\==", "=\=".
const char* builtin_symbol(BuiltinOp op);

struct Builtin {
    BuiltinOp op;
    Term lhs;
    Term rhs;

    friend bool operator==(const Builtin&, const Builtin&) = default;
};

using BodyLiteral = std::variant<Atom, Builtin>;

struct Clause {
    Atom head;
    std::vector<BodyLiteral> body;

    friend bool operator==(const Clause&, const Clause&) = default;
};

class Program {
  public:
    void add_clause(Clause clause);

    [[nodiscard]] const std::vector<Clause>& clauses() const { return clauses_; }
    // Predicates with at least one clause, in order of first definition.
    [[nodiscard]] const std::vector<PredicateKey>& predicates() const { return order_; }
    [[nodiscard]] bool is_defined(const PredicateKey& key) const { return index_.contains(key); }
    // Indices into clauses(); empty for undefined predicates.
    [[nodiscard]] const std::vector<std::size_t>& clauses_of(const PredicateKey& key) const;
    // Called somewhere but never defined. Such calls are unconstrained.
    [[nodiscard]] std::vector<PredicateKey> externs() const;

    friend bool operator==(const Program& a, const Program& b) { return a.clauses_ == b.clauses_; }

  private:
    std::vector<Clause> clauses_;
    std::vector<PredicateKey> order_;
    std::map<PredicateKey, std::vector<std::size_t>> index_;
};

std::string to_string(const Atom& atom);
std::string to_string(const BodyLiteral& literal);
std::string to_string(const Clause& clause);
// One clause per line, re-parseable.
std::string to_source(const Program& program);

}  // namespace cha
