#include <cha/error.hpp>
#include <cha/parser.hpp>

#include <array>
#include <cctype>
#include <optional>
#include <set>

namespace cha {

namespace {

enum class TokenKind { Integer, Variable, Name, Punct, Symbol, End, Eof };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
    std::size_t offset;  // byte offset of the first character
    std::size_t length;
};

// Longest match first.
constexpr std::array symbols{":-", "=:=", "=\\=", "\\==", "=<", ">=", "\\/", "/\\", ">>", "<<", "//", "\\+",
                             "->", "==", "\\=", "=",  "<",   ">",   "+",  "-",  "*",  "/",  "!",  ";"};

bool symbol_char(char c) { return std::string_view("+-*/\\^<>=~:.?@#&$!;").find(c) != std::string_view::npos; }

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_layout();
            if (pos_ >= text_.size()) {
                out.push_back({TokenKind::Eof, "", line_, column_, pos_, 0});
                return out;
            }
            out.push_back(next());
        }
    }

  private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_layout() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
                std::size_t line = line_;
                std::size_t column = column_;
                advance();
                advance();
                while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
                    advance();
                }
                if (pos_ + 1 >= text_.size()) {
                    throw ParseError("unterminated block comment", line, column);
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    Token next() {
        const std::size_t line = line_;
        const std::size_t column = column_;
        const std::size_t start = pos_;
        auto make = [&](TokenKind kind, std::string text) {
            return Token{kind, std::move(text), line, column, start, pos_ - start};
        };
        char c = text_[pos_];
        auto ident_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
            if (pos_ < text_.size() && ident_char(text_[pos_])) {
                throw ParseError("malformed number", line, column);
            }
            return make(TokenKind::Integer, std::string(text_.substr(start, pos_ - start)));
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() && ident_char(text_[pos_])) {
                advance();
            }
            return make(TokenKind::Variable, std::string(text_.substr(start, pos_ - start)));
        }
        if (std::islower(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && ident_char(text_[pos_])) {
                advance();
            }
            return make(TokenKind::Name, std::string(text_.substr(start, pos_ - start)));
        }
        if (c == '\'') {
            advance();
            std::string name;
            while (true) {
                if (pos_ >= text_.size()) {
                    throw ParseError("unterminated quoted atom", line, column);
                }
                char d = text_[pos_];
                advance();
                if (d == '\'') {
                    if (pos_ < text_.size() && text_[pos_] == '\'') {
                        name += '\'';
                        advance();
                        continue;
                    }
                    break;
                }
                if (d == '\\' && pos_ < text_.size()) {
                    d = text_[pos_];
                    advance();
                }
                name += d;
            }
            return make(TokenKind::Name, name);
        }
        if (std::string_view("()[],|").find(c) != std::string_view::npos) {
            advance();
            return make(TokenKind::Punct, std::string(1, c));
        }
        if (c == '!' || c == ';') {
            advance();
            return make(TokenKind::Symbol, std::string(1, c));
        }
        if (c == '.') {
            bool at_end = pos_ + 1 >= text_.size() || std::isspace(static_cast<unsigned char>(text_[pos_ + 1])) ||
                          text_[pos_ + 1] == '%';
            if (at_end) {
                advance();
                return make(TokenKind::End, ".");
            }
        }
        for (std::string_view s : symbols) {
            if (text_.substr(pos_, s.size()) == s) {
                // Reject runs such as `=>` that only start with a known symbol.
                std::size_t after = pos_ + s.size();
                if (after < text_.size() && symbol_char(text_[after]) && text_[after] != '-' && text_[after] != '+' &&
                    text_[after] != '\\' && text_[after] != '!') {
                    break;
                }
                for (std::size_t i = 0; i < s.size(); ++i) {
                    advance();
                }
                return make(TokenKind::Symbol, std::string(s));
            }
        }
        std::size_t end = pos_;
        while (end < text_.size() && symbol_char(text_[end])) {
            ++end;
        }
        std::string bad(text_.substr(pos_, std::max<std::size_t>(end - pos_, 1)));
        throw ParseError("unexpected character sequence '" + bad + "'", line, column);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

int infix_priority(const Token& t) {
    if (t.kind == TokenKind::Symbol) {
        const std::string& s = t.text;
        if (s == "+" || s == "-" || s == "\\/" || s == "/\\") {
            return 500;
        }
        if (s == "*" || s == "/" || s == "//" || s == ">>" || s == "<<") {
            return 400;
        }
    }
    if (t.kind == TokenKind::Name && t.text == "mod") {
        return 400;
    }
    return 0;
}

std::optional<BuiltinOp> comparison(const Token& t) {
    if (t.kind == TokenKind::Name && t.text == "is") {
        return BuiltinOp::Is;
    }
    if (t.kind != TokenKind::Symbol) {
        return std::nullopt;
    }
    const std::string& s = t.text;
    if (s == "=") return BuiltinOp::Unify;
    if (s == "=:=") return BuiltinOp::ArithEq;
    if (s == "<") return BuiltinOp::Less;
    if (s == ">") return BuiltinOp::Greater;
    if (s == "=<") return BuiltinOp::LessEq;
    if (s == ">=") return BuiltinOp::GreaterEq;
    if (s == "\\==") return BuiltinOp::NotIdentical;
    if (s == "=\\=") return BuiltinOp::ArithNotEq;
    return std::nullopt;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    bool at_eof() const { return peek().kind == TokenKind::Eof; }

    void expect_eof() const {
        if (!at_eof()) {
            fail(peek(), "trailing input after clause");
        }
    }

    Clause statement(bool end_optional) {
        if (is_symbol(":-")) {
            fail(peek(), "directives are not supported");
        }
        Clause clause;
        clause.head = head();
        if (is_symbol(":-")) {
            ++pos_;
            clause.body.push_back(literal());
            while (is_punct(",")) {
                ++pos_;
                clause.body.push_back(literal());
            }
        }
        if (peek().kind == TokenKind::End) {
            ++pos_;
        } else if (!(end_optional && at_eof())) {
            unexpected(peek(), "expected '.' at end of clause");
        }
        return clause;
    }

  private:
    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

    bool is_symbol(const char* s) const { return peek().kind == TokenKind::Symbol && peek().text == s; }
    bool is_punct(const char* s) const { return peek().kind == TokenKind::Punct && peek().text == s; }

    [[noreturn]] static void fail(const Token& t, const std::string& message) {
        throw ParseError(message, t.line, t.column);
    }

    // Names the unsupported control construct if `t` starts one.
    [[noreturn]] static void unexpected(const Token& t, const std::string& fallback) {
        if (t.kind == TokenKind::Symbol) {
            if (t.text == "!") fail(t, "cut (!) is not supported");
            if (t.text == ";") fail(t, "disjunction (;) is not supported");
            if (t.text == "->") fail(t, "if-then-else (->) is not supported");
            if (t.text == "\\+") fail(t, "negation (\\+) is not supported");
            if (t.text == "==" || t.text == "\\=") fail(t, "builtin " + t.text + " is not supported");
        }
        if (t.kind == TokenKind::Eof) {
            fail(t, fallback + ", found end of input");
        }
        fail(t, fallback + ", found '" + t.text + "'");
    }

    void expect_punct(const char* s) {
        if (!is_punct(s)) {
            unexpected(peek(), std::string("expected '") + s + "'");
        }
        ++pos_;
    }

    Atom callable(const Token& at, Term t, const char* what) {
        if (!t.is_compound() || is_arithmetic_functor(t.name(), t.arity()) || t.is_cons() || t.is_nil()) {
            fail(at, std::string(what) + " must be an atom or compound term");
        }
        return Atom{t.name(), t.args()};
    }

    Atom head() {
        const Token& at = peek();
        Term t = expression(999);
        return callable(at, std::move(t), "clause head");
    }

    BodyLiteral literal() {
        const Token& at = peek();
        if (at.kind == TokenKind::Symbol && (at.text == "!" || at.text == "\\+")) {
            unexpected(at, "");
        }
        Term lhs = expression(699);
        if (auto op = comparison(peek())) {
            ++pos_;
            Term rhs = expression(699);
            return Builtin{*op, std::move(lhs), std::move(rhs)};
        }
        if (lhs.is_variable()) {
            fail(at, "variable goals are not supported");
        }
        return callable(at, std::move(lhs), "goal");
    }

    Term expression(int max_priority) {
        int left_priority = 0;
        Term left = primary(max_priority, left_priority);
        while (true) {
            int p = infix_priority(peek());
            if (p == 0 || p > max_priority || left_priority > p) {
                return left;
            }
            std::string op = peek().text;
            ++pos_;
            Term right = expression(p - 1);
            left = Term::compound(op, {std::move(left), std::move(right)});
            left_priority = p;
        }
    }

    bool adjacent(const Token& a, const Token& b) const { return a.offset + a.length == b.offset; }

    Term primary(int max_priority, int& priority) {
        const Token t = peek();
        priority = 0;
        switch (t.kind) {
            case TokenKind::Integer:
                ++pos_;
                return Term::integer(Integer(t.text));
            case TokenKind::Variable:
                ++pos_;
                return Term::variable(t.text);
            case TokenKind::Name: {
                ++pos_;
                if (is_punct("(") && adjacent(t, peek())) {
                    ++pos_;
                    std::vector<Term> args{expression(999)};
                    while (is_punct(",")) {
                        ++pos_;
                        args.push_back(expression(999));
                    }
                    expect_punct(")");
                    return Term::compound(t.text, std::move(args));
                }
                return Term::atom(t.text);
            }
            case TokenKind::Punct:
                if (t.text == "(") {
                    ++pos_;
                    Term inner = expression(1200);
                    expect_punct(")");
                    return inner;
                }
                if (t.text == "[") {
                    ++pos_;
                    return list();
                }
                break;
            case TokenKind::Symbol:
                if (t.text == "-") {
                    ++pos_;
                    if (peek().kind == TokenKind::Integer && adjacent(t, peek())) {
                        Integer v(peek().text);
                        ++pos_;
                        return Term::integer(-v);
                    }
                    if (max_priority < 200) {
                        fail(t, "prefix '-' needs parentheses here");
                    }
                    priority = 200;
                    return Term::compound("-", {expression(200)});
                }
                break;
            default:
                break;
        }
        unexpected(t, "expected a term");
    }

    Term list() {
        if (is_punct("]")) {
            ++pos_;
            return Term::nil();
        }
        std::vector<Term> items{expression(999)};
        while (is_punct(",")) {
            ++pos_;
            items.push_back(expression(999));
        }
        Term tail = Term::nil();
        if (is_punct("|")) {
            ++pos_;
            tail = expression(999);
        }
        expect_punct("]");
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
            tail = Term::cons(std::move(*it), std::move(tail));
        }
        return tail;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

class FreshNames {
  public:
    explicit FreshNames(const Clause& clause) {
        std::vector<std::string> names;
        for (const Term& t : clause.head.args) {
            collect_variables(t, names);
        }
        for (const BodyLiteral& lit : clause.body) {
            if (const Atom* call = std::get_if<Atom>(&lit)) {
                for (const Term& t : call->args) {
                    collect_variables(t, names);
                }
            } else {
                collect_variables(std::get<Builtin>(lit).lhs, names);
                collect_variables(std::get<Builtin>(lit).rhs, names);
            }
        }
        used_.insert(names.begin(), names.end());
    }

    std::string next() {
        while (true) {
            std::string name = "_V" + std::to_string(++counter_);
            if (used_.insert(name).second) {
                return name;
            }
        }
    }

  private:
    std::set<std::string> used_;
    unsigned counter_ = 0;
};

Term rename_anonymous(const Term& t, FreshNames& fresh) {
    if (t.is_variable()) {
        return t.name() == "_" ? Term::variable(fresh.next()) : t;
    }
    if (!t.is_compound()) {
        return t;
    }
    std::vector<Term> args;
    for (const Term& a : t.args()) {
        args.push_back(rename_anonymous(a, fresh));
    }
    return Term::compound(t.name(), std::move(args));
}

// Replaces non-variable or repeated arguments by fresh variables, recording
// the binding literals in `bindings`.
void flatten_arguments(std::vector<Term>& args, bool expressions_with_is, FreshNames& fresh,
                       std::vector<BodyLiteral>& bindings) {
    std::set<std::string> seen;
    for (Term& arg : args) {
        if (arg.is_variable() && seen.insert(arg.name()).second) {
            continue;
        }
        Term v = Term::variable(fresh.next());
        BuiltinOp op = BuiltinOp::Unify;
        if (expressions_with_is && arg.is_compound() && is_arithmetic(arg)) {
            op = BuiltinOp::Is;
        }
        bindings.emplace_back(Builtin{op, v, std::move(arg)});
        seen.insert(v.name());
        arg = std::move(v);
    }
}

}  // namespace

Clause standardise(const Clause& clause) {
    FreshNames fresh(clause);
    Clause renamed;
    renamed.head.name = clause.head.name;
    for (const Term& t : clause.head.args) {
        renamed.head.args.push_back(rename_anonymous(t, fresh));
    }
    for (const BodyLiteral& lit : clause.body) {
        if (const Atom* call = std::get_if<Atom>(&lit)) {
            Atom a{call->name, {}};
            for (const Term& t : call->args) {
                a.args.push_back(rename_anonymous(t, fresh));
            }
            renamed.body.emplace_back(std::move(a));
        } else {
            const Builtin& b = std::get<Builtin>(lit);
            renamed.body.emplace_back(Builtin{b.op, rename_anonymous(b.lhs, fresh), rename_anonymous(b.rhs, fresh)});
        }
    }

    Clause out;
    out.head = renamed.head;
    flatten_arguments(out.head.args, false, fresh, out.body);
    for (BodyLiteral& lit : renamed.body) {
        if (Atom* call = std::get_if<Atom>(&lit)) {
            if (call->name == "true" && call->args.empty()) {
                continue;
            }
            flatten_arguments(call->args, true, fresh, out.body);
        }
        out.body.push_back(std::move(lit));
    }
    return out;
}

Clause parse_raw_clause(std::string_view text) {
    Parser parser(text);
    Clause c = parser.statement(true);
    parser.expect_eof();
    return c;
}

Clause parse_clause(std::string_view text) { return standardise(parse_raw_clause(text)); }

Program parse_program(std::string_view text) {
    Parser parser(text);
    Program program;
    while (!parser.at_eof()) {
        program.add_clause(standardise(parser.statement(false)));
    }
    return program;
}

}  // namespace cha
