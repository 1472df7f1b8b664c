#pragma once

#include <cha/linear.hpp>
#include <cha/program.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cha {

using VariableDims = std::map<std::string, Dim>;

// Ambient space for evaluating one clause: head variables take dimensions
// 0..arity-1, the remaining variables follow in first-occurrence order.
struct ClauseFrame {
    VariableDims dims;
    std::vector<Dim> head;
    Dim dimension = 0;
};

// Expects a standardised clause (head arguments are distinct variables).
ClauseFrame clause_frame(const Clause& clause);

// Exact integer value of a variable-free arithmetic term, if it has one.
std::optional<Integer> evaluate_constant(const Term& term);

// Linear form of an arithmetic term after constant folding; nullopt when the
// term is not linear.
std::optional<LinearExpression> linear_form(const Term& term, const VariableDims& dims);

// Linear approximation of a builtin. nullopt stands for TOP (no information).
// Throws ContractError if a variable of the literal is missing from `dims`.
std::optional<std::vector<Constraint>> linearise(const Builtin& literal, const VariableDims& dims);

}  // namespace cha
