#pragma once

#include <cha/graph.hpp>
#include <cha/polyhedron.hpp>
#include <cha/program.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cha {

// Predicate -> constrained atom over its arguments. Absent means bottom; stored
// polyhedra are never empty.
using Interpretation = std::map<PredicateKey, Polyhedron>;

// a ⊑ b, pointwise inclusion with absent entries as bottom.
bool less_equal(const Interpretation& a, const Interpretation& b);

enum class WideningStrategy { Feedback, CutLoop, Explicit, None };

struct AnalysisConfig {
    unsigned widen_delay = 0;
    unsigned narrow_iters = 0;
    bool widen_up_to = false;
    WideningStrategy strategy = WideningStrategy::CutLoop;
    std::vector<PredicateKey> explicit_points;  // for WideningStrategy::Explicit
    // Rounds per SCC before NonConvergenceError; only reachable with
    // WideningStrategy::None.
    std::size_t iteration_cap = 10000;
};

enum class TraceOp { Join, Widen, WidenUpTo, Narrow, Stabilised };

const char* trace_op_name(TraceOp op);

struct TraceEvent {
    std::size_t iteration;
    PredicateKey predicate;
    TraceOp op;
    std::size_t count;  // constraint count after the operation
};

// `iter=<n> pred=<name>/<arity> op=<op> count=<c>`
std::string to_string(const TraceEvent& event);

struct SccStats {
    std::vector<PredicateKey> predicates;
    std::size_t iterations = 0;
    std::set<PredicateKey> widening_points;
};

struct AnalysisResult {
    Interpretation interpretation;
    std::vector<TraceEvent> trace;
    std::vector<SccStats> sccs;  // processing order
    std::size_t narrowing_passes = 0;
};

// Hull of each clause's linearised builtins projected onto its head.
std::map<PredicateKey, Polyhedron> bounding_polyhedra(const Program& program);

// Contribution of one clause under `interpretation` (a constrained atom over
// the head arguments); nullopt when a called predicate is bottom or the
// clause constraints are unsatisfiable. Calls to predicates the program does
// not define are unconstrained.
std::optional<Polyhedron> evaluate_clause(const Program& program, const Clause& clause,
                                          const Interpretation& interpretation);

// T_P^C: per predicate, the hull of all clause contributions.
Interpretation consequences(const Program& program, const Interpretation& interpretation);

// Abstract T_P: interpretation ⊎ consequences.
Interpretation tp_step(const Program& program, const Interpretation& interpretation);

// Widening points of the whole program per `config` (explicit points are
// validated; ConfigError if unknown or if a cycle is left uncut).
std::set<PredicateKey> widening_points(const DepGraph& graph, const AnalysisConfig& config);

// glb narrowing, at most `passes` passes; trace events appended if given.
Interpretation narrow(const Program& program, const Interpretation& widened, unsigned passes,
                      std::vector<TraceEvent>* trace = nullptr, std::size_t* passes_run = nullptr);

AnalysisResult analyze(const Program& program, const AnalysisConfig& config);

}  // namespace cha
