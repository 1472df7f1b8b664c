#include <cha/term.hpp>

#include <algorithm>
#include <cctype>

namespace cha {

namespace {

// Prolog priorities of the operators we print infix; all binary ones are yfx.
int binary_priority(const std::string& f) {
    if (f == "+" || f == "-" || f == "\\/" || f == "/\\") {
        return 500;
    }
    if (f == "*" || f == "/" || f == "//" || f == "mod" || f == ">>" || f == "<<") {
        return 400;
    }
    return 0;
}

constexpr int unary_minus_priority = 200;
constexpr int argument_priority = 999;

bool plain_atom_name(const std::string& name) {
    if (name == "[]") {
        return true;
    }
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) {
        return false;
    }
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string atom_text(const std::string& name) {
    if (plain_atom_name(name)) {
        return name;
    }
    std::string out = "'";
    for (char c : name) {
        if (c == '\'' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "'";
}

std::string print(const Term& t, int max_priority);

std::string print_list(const Term& t) {
    std::string out = "[";
    const Term* cur = &t;
    bool first = true;
    while (cur->is_cons()) {
        if (!first) {
            out += ',';
        }
        out += print(cur->args()[0], argument_priority);
        first = false;
        cur = &cur->args()[1];
    }
    if (!cur->is_nil()) {
        out += '|' + print(*cur, argument_priority);
    }
    return out + "]";
}

std::string join_operands(std::string left, const std::string& op, const std::string& right) {
    bool alpha = std::isalpha(static_cast<unsigned char>(op[0])) != 0;
    if (alpha) {
        return left + " " + op + " " + right;
    }
    left += op;
    if (!right.empty() && right[0] == '-') {
        left += ' ';
    }
    return left + right;
}

std::string print(const Term& t, int max_priority) {
    switch (t.kind()) {
        case Term::Kind::Variable:
            return t.name();
        case Term::Kind::Integer:
            return t.value().get_str();
        case Term::Kind::Compound:
            break;
    }
    if (t.is_nil() || t.is_cons()) {
        return print_list(t);
    }
    if (t.arity() == 2) {
        if (int p = binary_priority(t.name()); p != 0) {
            std::string s = join_operands(print(t.args()[0], p), t.name(), print(t.args()[1], p - 1));
            return p > max_priority ? "(" + s + ")" : s;
        }
    }
    if (t.arity() == 1 && t.name() == "-") {
        const Term& arg = t.args()[0];
        std::string inner = arg.is_integer() ? "(" + print(arg, argument_priority) + ")"
                                             : print(arg, unary_minus_priority);
        if (inner[0] == '-') {
            inner = "(" + inner + ")";
        }
        std::string s = "-" + inner;
        return unary_minus_priority > max_priority ? "(" + s + ")" : s;
    }
    std::string out = atom_text(t.name());
    if (t.arity() == 0) {
        return out;
    }
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += print(t.args()[i], argument_priority);
    }
    return out + ")";
}

}  // namespace

bool is_arithmetic_functor(const std::string& functor, std::size_t arity) {
    if (arity == 2) {
        return binary_priority(functor) != 0;
    }
    return arity == 1 && functor == "-";
}

bool is_arithmetic(const Term& term) {
    switch (term.kind()) {
        case Term::Kind::Variable:
        case Term::Kind::Integer:
            return true;
        case Term::Kind::Compound:
            return is_arithmetic_functor(term.name(), term.arity()) &&
                   std::all_of(term.args().begin(), term.args().end(), [](const Term& a) { return is_arithmetic(a); });
    }
    return false;
}

void collect_variables(const Term& term, std::vector<std::string>& out) {
    if (term.is_variable()) {
        if (std::find(out.begin(), out.end(), term.name()) == out.end()) {
            out.push_back(term.name());
        }
        return;
    }
    for (const Term& a : term.args()) {
        collect_variables(a, out);
    }
}

std::string to_string(const Term& term) { return print(term, argument_priority); }

}  // namespace cha
