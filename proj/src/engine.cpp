#include <cha/engine.hpp>
#include <cha/error.hpp>
#include <cha/linearise.hpp>

#include <algorithm>

namespace cha {

namespace {

struct Call {
    PredicateKey predicate;
    std::vector<Dim> args;
    bool defined;
};

// A clause prepared for repeated evaluation in its own frame.
struct CompiledClause {
    PredicateKey head;
    Dim dimension = 0;
    std::vector<Constraint> builtins;
    std::vector<Call> calls;
    std::set<Dim> local_dims;  // projected away after evaluation
};

CompiledClause compile(const Program& program, const Clause& clause) {
    ClauseFrame frame = clause_frame(clause);
    CompiledClause out{clause.head.key(), frame.dimension, {}, {}, {}};
    for (const BodyLiteral& lit : clause.body) {
        if (const Atom* call = std::get_if<Atom>(&lit)) {
            Call c{call->key(), {}, program.is_defined(call->key())};
            for (const Term& t : call->args) {
                c.args.push_back(frame.dims.at(t.name()));
            }
            out.calls.push_back(std::move(c));
        } else if (auto cs = linearise(std::get<Builtin>(lit), frame.dims)) {
            out.builtins.insert(out.builtins.end(), cs->begin(), cs->end());
        }
    }
    for (Dim d = clause.head.arity(); d < frame.dimension; ++d) {
        out.local_dims.insert(d);
    }
    return out;
}

Constraint embed(const Constraint& c, const std::vector<Dim>& args) {
    LinearExpression e(c.lhs().constant());
    for (const auto& [d, k] : c.lhs().terms()) {
        e.add_term(args.at(d), k);
    }
    return {std::move(e), c.relation()};
}

std::optional<Polyhedron> evaluate(const CompiledClause& clause, const Interpretation& interpretation) {
    std::vector<Constraint> system = clause.builtins;
    for (const Call& call : clause.calls) {
        if (!call.defined) {
            continue;
        }
        auto it = interpretation.find(call.predicate);
        if (it == interpretation.end()) {
            return std::nullopt;
        }
        for (const Constraint& c : it->second.constraints()) {
            system.push_back(embed(c, call.args));
        }
    }
    Polyhedron result = project_system(clause.dimension, system, clause.local_dims);
    if (result.is_empty()) {
        return std::nullopt;
    }
    return result;
}

void hull_into(std::optional<Polyhedron>& acc, const Polyhedron& p) {
    acc = acc ? convex_hull(*acc, p) : p;
}

class CompiledProgram {
  public:
    explicit CompiledProgram(const Program& program) : program_(program) {
        for (const Clause& c : program.clauses()) {
            clauses_.push_back(compile(program, c));
        }
    }

    [[nodiscard]] const Program& program() const { return program_; }
    [[nodiscard]] const CompiledClause& clause(std::size_t i) const { return clauses_[i]; }

    [[nodiscard]] Interpretation consequences(const Interpretation& interpretation) const {
        Interpretation out;
        for (const PredicateKey& p : program_.predicates()) {
            std::optional<Polyhedron> acc;
            for (std::size_t i : program_.clauses_of(p)) {
                if (auto c = evaluate(clauses_[i], interpretation)) {
                    hull_into(acc, *c);
                }
            }
            if (acc) {
                out.emplace(p, std::move(*acc));
            }
        }
        return out;
    }

  private:
    const Program& program_;
    std::vector<CompiledClause> clauses_;
};

Interpretation narrow_compiled(const CompiledProgram& compiled, const Interpretation& widened, unsigned passes,
                               std::size_t first_iteration, std::vector<TraceEvent>* trace,
                               std::size_t* passes_run) {
    Interpretation previous = widened;
    std::size_t run = 0;
    for (unsigned pass = 0; pass < passes; ++pass) {
        Interpretation image = compiled.consequences(previous);
        Interpretation next;
        for (const PredicateKey& p : compiled.program().predicates()) {
            auto w = widened.find(p);
            auto f = image.find(p);
            if (w == widened.end() || f == image.end()) {
                continue;
            }
            Polyhedron m = intersect(w->second, f->second);
            if (m.is_empty()) {
                continue;
            }
            if (trace != nullptr) {
                trace->push_back({first_iteration + pass, p, TraceOp::Narrow, m.constraint_count()});
            }
            next.emplace(p, std::move(m));
        }
        ++run;
        bool stable = next == previous;
        previous = std::move(next);
        if (stable) {
            break;
        }
    }
    if (passes_run != nullptr) {
        *passes_run = run;
    }
    return previous;
}

std::set<std::size_t> strategy_points(const Digraph& graph, WideningStrategy strategy) {
    switch (strategy) {
        case WideningStrategy::Feedback: return feedback_widening_points(graph);
        case WideningStrategy::CutLoop: return cut_loop_widening_points(graph);
        default: return {};
    }
}

}  // namespace

bool less_equal(const Interpretation& a, const Interpretation& b) {
    for (const auto& [p, poly] : a) {
        auto it = b.find(p);
        if (it == b.end() || !it->second.includes(poly)) {
            return false;
        }
    }
    return true;
}

const char* trace_op_name(TraceOp op) {
    switch (op) {
        case TraceOp::Join: return "join";
        case TraceOp::Widen: return "widen";
        case TraceOp::WidenUpTo: return "widen-up-to";
        case TraceOp::Narrow: return "narrow";
        case TraceOp::Stabilised: return "stabilised";
    }
    return "?";
}

std::string to_string(const TraceEvent& event) {
    return "iter=" + std::to_string(event.iteration) + " pred=" + to_string(event.predicate) +
           " op=" + trace_op_name(event.op) + " count=" + std::to_string(event.count);
}

std::map<PredicateKey, Polyhedron> bounding_polyhedra(const Program& program) {
    std::map<PredicateKey, Polyhedron> out;
    for (const PredicateKey& p : program.predicates()) {
        Polyhedron acc = Polyhedron::empty(p.arity);
        for (std::size_t i : program.clauses_of(p)) {
            CompiledClause c = compile(program, program.clauses()[i]);
            acc = convex_hull(acc, project_system(c.dimension, c.builtins, c.local_dims));
        }
        out.emplace(p, std::move(acc));
    }
    return out;
}

std::optional<Polyhedron> evaluate_clause(const Program& program, const Clause& clause,
                                          const Interpretation& interpretation) {
    return evaluate(compile(program, clause), interpretation);
}

Interpretation consequences(const Program& program, const Interpretation& interpretation) {
    return CompiledProgram(program).consequences(interpretation);
}

Interpretation tp_step(const Program& program, const Interpretation& interpretation) {
    Interpretation out = interpretation;
    for (auto& [p, poly] : consequences(program, interpretation)) {
        auto [it, inserted] = out.emplace(p, poly);
        if (!inserted) {
            it->second = convex_hull(it->second, poly);
        }
    }
    return out;
}

std::set<PredicateKey> widening_points(const DepGraph& graph, const AnalysisConfig& config) {
    std::set<PredicateKey> out;
    if (config.strategy == WideningStrategy::Explicit) {
        std::set<std::size_t> nodes;
        for (const PredicateKey& k : config.explicit_points) {
            auto n = graph.find(k);
            if (!n) {
                throw ConfigError("widening point " + to_string(k) + " is not a defined predicate");
            }
            nodes.insert(*n);
            out.insert(k);
        }
        if (!cuts_all_cycles(graph.graph, nodes)) {
            throw ConfigError("explicit widening points leave a dependency cycle without a widening point");
        }
        return out;
    }
    for (const Scc& scc : scc_order(graph.graph)) {
        if (!scc.recursive) {
            continue;
        }
        for (std::size_t local : strategy_points(graph.graph.induced(scc.nodes), config.strategy)) {
            out.insert(graph.predicates[scc.nodes[local]]);
        }
    }
    return out;
}

Interpretation narrow(const Program& program, const Interpretation& widened, unsigned passes,
                      std::vector<TraceEvent>* trace, std::size_t* passes_run) {
    return narrow_compiled(CompiledProgram(program), widened, passes, 1, trace, passes_run);
}

AnalysisResult analyze(const Program& program, const AnalysisConfig& config) {
    const CompiledProgram compiled(program);
    const DepGraph graph = build_dep_graph(program);
    const std::set<PredicateKey> points = widening_points(graph, config);
    std::map<PredicateKey, Polyhedron> bounds;
    if (config.widen_up_to) {
        bounds = bounding_polyhedra(program);
    }
    const TraceOp widen_op = config.widen_up_to ? TraceOp::WidenUpTo : TraceOp::Widen;

    AnalysisResult result;
    Interpretation& model = result.interpretation;
    std::size_t iteration = 0;

    for (const Scc& scc : scc_order(graph.graph)) {
        SccStats stats;
        std::set<PredicateKey> members;
        for (std::size_t n : scc.nodes) {
            stats.predicates.push_back(graph.predicates[n]);
            members.insert(graph.predicates[n]);
            if (points.contains(graph.predicates[n])) {
                stats.widening_points.insert(graph.predicates[n]);
            }
        }

        std::map<std::size_t, std::optional<Polyhedron>> cache;
        std::map<PredicateKey, unsigned> growth;
        std::set<PredicateKey> changed = members;
        for (std::size_t round = 1;; ++round) {
            if (round > config.iteration_cap) {
                throw NonConvergenceError("no fixpoint for " + to_string(stats.predicates.front()) + " after " +
                                          std::to_string(config.iteration_cap) + " iterations");
            }
            ++iteration;
            stats.iterations = round;
            // Jacobi: every clause sees the values from the start of the round.
            for (const PredicateKey& p : stats.predicates) {
                for (std::size_t i : program.clauses_of(p)) {
                    const CompiledClause& c = compiled.clause(i);
                    bool stale = round == 1 || std::any_of(c.calls.begin(), c.calls.end(), [&](const Call& call) {
                                     return changed.contains(call.predicate);
                                 });
                    if (stale) {
                        cache[i] = evaluate(c, model);
                    }
                }
            }
            std::set<PredicateKey> grown;
            for (const PredicateKey& p : stats.predicates) {
                std::optional<Polyhedron> contribution;
                for (std::size_t i : program.clauses_of(p)) {
                    if (cache[i]) {
                        hull_into(contribution, *cache[i]);
                    }
                }
                if (!contribution) {
                    continue;
                }
                auto old = model.find(p);
                if (old != model.end() && old->second.includes(*contribution)) {
                    continue;
                }
                ++growth[p];
                TraceOp op = TraceOp::Join;
                Polyhedron value = *contribution;
                if (old != model.end()) {
                    value = convex_hull(old->second, *contribution);
                    if (scc.recursive && points.contains(p) && growth[p] > config.widen_delay) {
                        value = config.widen_up_to ? widen_up_to(old->second, value, bounds.at(p))
                                                   : widen_standard(old->second, value);
                        op = widen_op;
                    }
                }
                result.trace.push_back({iteration, p, op, value.constraint_count()});
                model.insert_or_assign(p, std::move(value));
                grown.insert(p);
            }
            if (!scc.recursive || grown.empty()) {
                if (scc.recursive) {
                    for (const PredicateKey& p : stats.predicates) {
                        if (auto it = model.find(p); it != model.end()) {
                            result.trace.push_back({iteration, p, TraceOp::Stabilised, it->second.constraint_count()});
                        }
                    }
                }
                break;
            }
            changed = std::move(grown);
        }
        result.sccs.push_back(std::move(stats));
    }

    if (config.narrow_iters > 0) {
        model = narrow_compiled(compiled, model, config.narrow_iters, iteration + 1, &result.trace,
                                &result.narrowing_passes);
    }
    return result;
}

}  // namespace cha
