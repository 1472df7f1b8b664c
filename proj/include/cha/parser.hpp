#pragma once

#include <cha/program.hpp>

#include <string_view>

namespace cha {

// Parses `Head :- Lit, ..., Lit.` / `Head.` statements with `%` comments and
// standardises every clause (see standardise). Cuts, negation, if-then-else
// and disjunction are rejected with a ParseError naming the feature.
Program parse_program(std::string_view text);

// A single clause; the terminating '.' is optional. Used for goals.
Clause parse_clause(std::string_view text);

// Clause as written, without standardisation.
Clause parse_raw_clause(std::string_view text);

// Head arguments become pairwise distinct variables, with `V = t` prepended
// for every constant, compound, expression or repeated argument. Call
// arguments get the same treatment: an arithmetic expression e becomes
// `V is e` before the call, other non-variable or repeated arguments `V = t`.
// Anonymous variables receive unique names; fresh names never clash with the
// clause's own variables. Literal `true` is dropped.
Clause standardise(const Clause& clause);

}  // namespace cha
