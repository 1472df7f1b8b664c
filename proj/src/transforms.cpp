#include <cha/error.hpp>
#include <cha/parser.hpp>
#include <cha/transforms.hpp>

#include <set>

namespace cha {

namespace {

void accumulate_norm(const Term& t, Norm norm, Integer& constant, std::vector<Term>& vars) {
    if (t.is_variable()) {
        vars.push_back(t);
        return;
    }
    if (!t.is_compound()) {
        return;  // integer leaves are constants of size 0
    }
    if (norm == Norm::TermSize) {
        if (t.arity() > 0) {
            constant += 1;
            for (const Term& a : t.args()) {
                accumulate_norm(a, norm, constant, vars);
            }
        }
        return;
    }
    if (t.is_cons()) {
        constant += 1;
        accumulate_norm(t.args()[1], norm, constant, vars);
    }
}

Atom renamed(const Atom& atom, const std::string& name) { return Atom{name, atom.args}; }

}  // namespace

std::optional<Norm> parse_norm(std::string_view name) {
    if (name == "term-size") {
        return Norm::TermSize;
    }
    if (name == "list-length") {
        return Norm::ListLength;
    }
    return std::nullopt;
}

const char* norm_name(Norm norm) { return norm == Norm::TermSize ? "term-size" : "list-length"; }

Term norm_term(const Term& term, Norm norm) {
    if (is_arithmetic(term)) {
        return term;
    }
    Integer constant = 0;
    std::vector<Term> vars;
    accumulate_norm(term, norm, constant, vars);
    if (vars.empty()) {
        return Term::integer(constant);
    }
    Term sum = vars.front();
    for (std::size_t i = 1; i < vars.size(); ++i) {
        sum = Term::compound("+", {std::move(sum), vars[i]});
    }
    if (constant != 0) {
        sum = Term::compound("+", {std::move(sum), Term::integer(constant)});
    }
    return sum;
}

Program size_abstract(const Program& program, Norm norm) {
    Program out;
    for (const Clause& c : program.clauses()) {
        Clause a = c;
        for (BodyLiteral& lit : a.body) {
            Builtin* b = std::get_if<Builtin>(&lit);
            if (b == nullptr || b->op != BuiltinOp::Unify || (is_arithmetic(b->lhs) && is_arithmetic(b->rhs))) {
                continue;
            }
            b->lhs = norm_term(b->lhs, norm);
            b->rhs = norm_term(b->rhs, norm);
        }
        out.add_clause(std::move(a));
    }
    return out;
}

Goal parse_goal(std::string_view text) {
    Clause c = parse_clause(text);
    Goal g{c.head, {}};
    for (const BodyLiteral& lit : c.body) {
        const Builtin* b = std::get_if<Builtin>(&lit);
        if (b == nullptr) {
            throw ConfigError("goal constraints must be arithmetic builtins, found call " +
                              to_string(std::get<Atom>(lit)));
        }
        g.constraints.push_back(*b);
    }
    return g;
}

std::string query_name(const std::string& predicate) { return predicate + "_query"; }

std::string answer_name(const std::string& predicate) { return predicate + "_ans"; }

Program query_answer_transform(const Program& program, const Goal& goal) {
    const PredicateKey root = goal.atom.key();
    if (!program.is_defined(root)) {
        throw ConfigError("goal predicate " + to_string(root) + " is not defined");
    }

    // Reachable defined predicates.
    std::set<PredicateKey> reachable{root};
    std::vector<PredicateKey> stack{root};
    while (!stack.empty()) {
        PredicateKey k = stack.back();
        stack.pop_back();
        for (std::size_t i : program.clauses_of(k)) {
            for (const BodyLiteral& lit : program.clauses()[i].body) {
                if (const Atom* call = std::get_if<Atom>(&lit)) {
                    if (program.is_defined(call->key()) && reachable.insert(call->key()).second) {
                        stack.push_back(call->key());
                    }
                }
            }
        }
    }

    Program out;
    Clause seed{renamed(goal.atom, query_name(goal.atom.name)), {}};
    for (const Builtin& b : goal.constraints) {
        seed.body.emplace_back(b);
    }
    out.add_clause(std::move(seed));

    for (const Clause& c : program.clauses()) {
        if (!reachable.contains(c.head.key())) {
            continue;
        }
        // Literals L1..L(i-1) with calls replaced by their answers.
        std::vector<BodyLiteral> prefix;
        prefix.emplace_back(renamed(c.head, query_name(c.head.name)));
        for (const BodyLiteral& lit : c.body) {
            const Atom* call = std::get_if<Atom>(&lit);
            if (call == nullptr) {
                prefix.push_back(lit);
                continue;
            }
            if (!program.is_defined(call->key())) {
                prefix.push_back(lit);
                continue;
            }
            out.add_clause(Clause{renamed(*call, query_name(call->name)), prefix});
            prefix.emplace_back(renamed(*call, answer_name(call->name)));
        }
        out.add_clause(Clause{renamed(c.head, answer_name(c.head.name)), std::move(prefix)});
    }
    return out;
}

}  // namespace cha
