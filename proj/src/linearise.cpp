#include <cha/error.hpp>
#include <cha/linearise.hpp>

namespace cha {

namespace {

// Shift amounts beyond this are not linearised (2^k would be unreasonable).
constexpr long max_shift = 64;

std::optional<unsigned long> shift_amount(const Integer& k) {
    if (k < 0 || k > max_shift) {
        return std::nullopt;
    }
    return k.get_ui();
}

void frame_term(const Term& t, ClauseFrame& frame) {
    std::vector<std::string> names;
    collect_variables(t, names);
    for (const std::string& n : names) {
        if (frame.dims.try_emplace(n, frame.dimension).second) {
            ++frame.dimension;
        }
    }
}

Integer pow2(unsigned long k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

std::optional<std::vector<Constraint>> linearise_equation(const Term& lhs, const Term& rhs, const VariableDims& dims) {
    auto target = linear_form(lhs, dims);
    if (!target || !rhs.is_compound() || rhs.arity() != 2 || evaluate_constant(rhs)) {
        return std::nullopt;
    }
    auto a = linear_form(rhs.args()[0], dims);
    if (rhs.name() == "\\/") {
        auto b = linear_form(rhs.args()[1], dims);
        if (!a || !b) {
            return std::nullopt;
        }
        // Bitwise or of non-negative operands never exceeds their sum.
        return std::vector{Constraint::less_equal(*target, *a + *b)};
    }
    if (rhs.name() == ">>") {
        auto k = evaluate_constant(rhs.args()[1]);
        auto shift = k ? shift_amount(*k) : std::nullopt;
        if (!a || !shift) {
            return std::nullopt;
        }
        // Arithmetic shift is floor division by 2^k.
        Rational scale(pow2(*shift));
        LinearExpression scaled = *target * scale;
        return std::vector{Constraint::less_equal(scaled, *a),
                           Constraint::less_equal(*a, scaled + LinearExpression(scale - 1))};
    }
    return std::nullopt;
}

}  // namespace

ClauseFrame clause_frame(const Clause& clause) {
    ClauseFrame frame;
    for (const Term& arg : clause.head.args) {
        if (!arg.is_variable()) {
            throw ContractError("clause_frame expects a standardised clause head");
        }
        auto [it, inserted] = frame.dims.try_emplace(arg.name(), frame.dimension);
        if (!inserted) {
            throw ContractError("clause_frame expects distinct head variables");
        }
        frame.head.push_back(it->second);
        ++frame.dimension;
    }
    for (const BodyLiteral& lit : clause.body) {
        if (const Atom* call = std::get_if<Atom>(&lit)) {
            for (const Term& t : call->args) {
                frame_term(t, frame);
            }
        } else {
            frame_term(std::get<Builtin>(lit).lhs, frame);
            frame_term(std::get<Builtin>(lit).rhs, frame);
        }
    }
    return frame;
}

std::optional<Integer> evaluate_constant(const Term& term) {
    if (term.is_integer()) {
        return term.value();
    }
    if (!term.is_compound() || !is_arithmetic_functor(term.name(), term.arity())) {
        return std::nullopt;
    }
    if (term.arity() == 1) {
        auto v = evaluate_constant(term.args()[0]);
        return v ? std::optional<Integer>(-*v) : std::nullopt;
    }
    auto a = evaluate_constant(term.args()[0]);
    auto b = a ? evaluate_constant(term.args()[1]) : std::nullopt;
    if (!b) {
        return std::nullopt;
    }
    const std::string& f = term.name();
    Integer r;
    if (f == "+") {
        r = *a + *b;
    } else if (f == "-") {
        r = *a - *b;
    } else if (f == "*") {
        r = *a * *b;
    } else if (f == "//" || f == "/" || f == "mod") {
        if (*b == 0) {
            return std::nullopt;
        }
        if (f == "//") {
            mpz_tdiv_q(r.get_mpz_t(), a->get_mpz_t(), b->get_mpz_t());
        } else if (f == "mod") {
            mpz_fdiv_r(r.get_mpz_t(), a->get_mpz_t(), b->get_mpz_t());
        } else {
            if (!mpz_divisible_p(a->get_mpz_t(), b->get_mpz_t())) {
                return std::nullopt;
            }
            mpz_divexact(r.get_mpz_t(), a->get_mpz_t(), b->get_mpz_t());
        }
    } else if (f == ">>" || f == "<<") {
        auto k = shift_amount(*b);
        if (!k) {
            return std::nullopt;
        }
        if (f == ">>") {
            mpz_fdiv_q_2exp(r.get_mpz_t(), a->get_mpz_t(), *k);
        } else {
            mpz_mul_2exp(r.get_mpz_t(), a->get_mpz_t(), *k);
        }
    } else if (f == "\\/") {
        mpz_ior(r.get_mpz_t(), a->get_mpz_t(), b->get_mpz_t());
    } else if (f == "/\\") {
        mpz_and(r.get_mpz_t(), a->get_mpz_t(), b->get_mpz_t());
    } else {
        return std::nullopt;
    }
    return r;
}

std::optional<LinearExpression> linear_form(const Term& term, const VariableDims& dims) {
    if (term.is_variable()) {
        auto it = dims.find(term.name());
        if (it == dims.end()) {
            throw ContractError("variable " + term.name() + " has no dimension");
        }
        return LinearExpression::variable(it->second);
    }
    if (auto v = evaluate_constant(term)) {
        return LinearExpression(Rational(*v));
    }
    if (!term.is_compound() || !is_arithmetic_functor(term.name(), term.arity())) {
        return std::nullopt;
    }
    auto a = linear_form(term.args()[0], dims);
    if (term.arity() == 1) {
        return a ? std::optional(-*a) : std::nullopt;
    }
    auto b = linear_form(term.args()[1], dims);
    if (!a || !b) {
        return std::nullopt;
    }
    const std::string& f = term.name();
    if (f == "+") {
        return *a + *b;
    }
    if (f == "-") {
        return *a - *b;
    }
    if (f == "*") {
        if (b->is_constant()) {
            return *a * b->constant();
        }
        if (a->is_constant()) {
            return *b * a->constant();
        }
        return std::nullopt;
    }
    if (f == "<<" && b->is_constant()) {
        auto k = shift_amount(b->constant().get_num());
        if (k && is_integral(b->constant())) {
            return *a * Rational(pow2(*k));
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Constraint>> linearise(const Builtin& literal, const VariableDims& dims) {
    switch (literal.op) {
        case BuiltinOp::NotIdentical:
        case BuiltinOp::ArithNotEq:
            return std::nullopt;
        case BuiltinOp::Is:
        case BuiltinOp::Unify:
        case BuiltinOp::ArithEq: {
            if (auto special = linearise_equation(literal.lhs, literal.rhs, dims)) {
                return special;
            }
            if (auto special = linearise_equation(literal.rhs, literal.lhs, dims)) {
                return special;
            }
            auto l = linear_form(literal.lhs, dims);
            auto r = l ? linear_form(literal.rhs, dims) : std::nullopt;
            if (!r) {
                return std::nullopt;
            }
            return std::vector{Constraint::equal(*l, *r)};
        }
        default:
            break;
    }
    auto l = linear_form(literal.lhs, dims);
    auto r = l ? linear_form(literal.rhs, dims) : std::nullopt;
    if (!r) {
        return std::nullopt;
    }
    switch (literal.op) {
        case BuiltinOp::Less: return std::vector{Constraint::less(*l, *r)};
        case BuiltinOp::Greater: return std::vector{Constraint::greater(*l, *r)};
        case BuiltinOp::LessEq: return std::vector{Constraint::less_equal(*l, *r)};
        case BuiltinOp::GreaterEq: return std::vector{Constraint::greater_equal(*l, *r)};
        default: return std::nullopt;
    }
}

}  // namespace cha
