#include <cha/program.hpp>

#include <set>

namespace cha {

std::string to_string(const PredicateKey& key) { return key.name + "/" + std::to_string(key.arity); }

const char* builtin_symbol(BuiltinOp op) {
    switch (op) {
        case BuiltinOp::Is: return "is";
        case BuiltinOp::Unify: return "=";
        case BuiltinOp::ArithEq: return "=:=";
        case BuiltinOp::Less: return "<";
        case BuiltinOp::Greater: return ">";
        case BuiltinOp::LessEq: return "=<";
        case BuiltinOp::GreaterEq: return ">=";
        case BuiltinOp::NotIdentical: return "\\==";
        case BuiltinOp::ArithNotEq: return "=\\=";
    }
    return "?";
}

void Program::add_clause(Clause clause) {
    PredicateKey key = clause.head.key();
    auto [it, inserted] = index_.try_emplace(key);
    if (inserted) {
        order_.push_back(key);
    }
    it->second.push_back(clauses_.size());
    clauses_.push_back(std::move(clause));
}

const std::vector<std::size_t>& Program::clauses_of(const PredicateKey& key) const {
    static const std::vector<std::size_t> none;
    auto it = index_.find(key);
    return it == index_.end() ? none : it->second;
}

std::vector<PredicateKey> Program::externs() const {
    std::vector<PredicateKey> out;
    std::set<PredicateKey> seen;
    for (const Clause& c : clauses_) {
        for (const BodyLiteral& lit : c.body) {
            if (const Atom* call = std::get_if<Atom>(&lit)) {
                PredicateKey k = call->key();
                if (!is_defined(k) && seen.insert(k).second) {
                    out.push_back(k);
                }
            }
        }
    }
    return out;
}

std::string to_string(const Atom& atom) {
    return to_string(Term::compound(atom.name, atom.args));
}

std::string to_string(const BodyLiteral& literal) {
    if (const Atom* call = std::get_if<Atom>(&literal)) {
        return to_string(*call);
    }
    const Builtin& b = std::get<Builtin>(literal);
    return to_string(b.lhs) + " " + builtin_symbol(b.op) + " " + to_string(b.rhs);
}

std::string to_string(const Clause& clause) {
    std::string out = to_string(clause.head);
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
        out += i == 0 ? " :- " : ", ";
        out += to_string(clause.body[i]);
    }
    return out + ".";
}

std::string to_source(const Program& program) {
    std::string out;
    for (const Clause& c : program.clauses()) {
        out += to_string(c);
        out += '\n';
    }
    return out;
}

}  // namespace cha
