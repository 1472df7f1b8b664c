#pragma once

#include <cha/engine.hpp>

#include <optional>
#include <string>

namespace cha {

// `p(A,B) :- c1, c2.` with canonical constraint order; `p(A) :- true.` for the
// universe.
std::string format_constrained_atom(const PredicateKey& predicate, const Polyhedron& polyhedron);

struct ReportOptions {
    bool trace = false;
    bool counts = false;
    std::optional<double> seconds;  // printed when set
};

// Results in first-definition order; bottom predicates are omitted.
std::string render_text(const Program& program, const AnalysisResult& result, const ReportOptions& options);

// The same information as a JSON object (pretty-printed, trailing newline).
std::string render_json(const Program& program, const AnalysisResult& result, const ReportOptions& options);

std::size_t total_constraint_count(const Interpretation& interpretation);

}  // namespace cha
