#pragma once

#include <cha/program.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace cha {

enum class Norm { TermSize, ListLength };

// "term-size" or "list-length".
std::optional<Norm> parse_norm(std::string_view name);
const char* norm_name(Norm norm);

// Size of a non-arithmetic term as a linear arithmetic term. Variables stand
// for their own size.
Term norm_term(const Term& term, Norm norm);

// Rewrites every unification that involves a non-arithmetic term into an
// equation between norms. Purely arithmetic literals are left alone.
Program size_abstract(const Program& program, Norm norm);

struct Goal {
    Atom atom;  // arguments are distinct variables
    std::vector<Builtin> constraints;
};

// Accepts `main(X,Y) :- X =< 100` or `exp(_,10,_)`; constants become
// constraints. Throws ParseError on bad syntax and ConfigError if the body
// contains a call.
Goal parse_goal(std::string_view text);

std::string query_name(const std::string& predicate);
std::string answer_name(const std::string& predicate);

// Left-to-right magic transformation restricted to the predicates reachable
// from the goal. Calls to undefined predicates are kept unchanged. Throws
// ConfigError if the goal predicate is undefined.
Program query_answer_transform(const Program& program, const Goal& goal);

}  // namespace cha
