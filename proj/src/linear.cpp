#include <cha/linear.hpp>

#include <algorithm>
#include <stdexcept>

namespace cha {

LinearExpression LinearExpression::variable(Dim dim, const Rational& coefficient) {
    LinearExpression e;
    e.add_term(dim, coefficient);
    return e;
}

Rational LinearExpression::coefficient(Dim dim) const {
    auto it = terms_.find(dim);
    return it == terms_.end() ? Rational(0) : it->second;
}

Dim LinearExpression::span_dimension() const { return terms_.empty() ? 0 : terms_.rbegin()->first + 1; }

void LinearExpression::add_term(Dim dim, const Rational& coefficient) {
    if (coefficient == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(dim, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Rational LinearExpression::evaluate(std::span<const Rational> point) const {
    Rational value = constant_;
    for (const auto& [dim, k] : terms_) {
        if (dim >= point.size()) {
            throw std::out_of_range("point has too few coordinates");
        }
        value += k * point[dim];
    }
    return value;
}

LinearExpression& LinearExpression::operator+=(const LinearExpression& other) {
    for (const auto& [dim, k] : other.terms_) {
        add_term(dim, k);
    }
    constant_ += other.constant_;
    return *this;
}

LinearExpression& LinearExpression::operator-=(const LinearExpression& other) {
    for (const auto& [dim, k] : other.terms_) {
        add_term(dim, -k);
    }
    constant_ -= other.constant_;
    return *this;
}

LinearExpression& LinearExpression::operator*=(const Rational& factor) {
    if (factor == 0) {
        terms_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [dim, k] : terms_) {
        k *= factor;
    }
    constant_ *= factor;
    return *this;
}

bool Constraint::is_tautology() const {
    if (!lhs_.is_constant()) {
        return false;
    }
    const Rational& c = lhs_.constant();
    switch (relation_) {
    case Relation::Eq: return c == 0;
    case Relation::Geq: return c >= 0;
    case Relation::Gt: return c > 0;
    }
    return false;
}

bool Constraint::is_contradiction() const { return lhs_.is_constant() && !is_tautology(); }

bool Constraint::holds_at(std::span<const Rational> point) const {
    Rational v = lhs_.evaluate(point);
    switch (relation_) {
    case Relation::Eq: return v == 0;
    case Relation::Geq: return v >= 0;
    case Relation::Gt: return v > 0;
    }
    return false;
}

Constraint Constraint::normalized() const {
    Integer den_lcm = lhs_.constant().get_den();
    for (const auto& [dim, k] : lhs_.terms()) {
        den_lcm = lcm(den_lcm, Integer(k.get_den()));
    }
    Integer num_gcd = 0;
    for (const auto& [dim, k] : lhs_.terms()) {
        num_gcd = gcd(num_gcd, Integer(k.get_num() * (den_lcm / k.get_den())));
    }
    const Rational& c = lhs_.constant();
    num_gcd = gcd(num_gcd, Integer(c.get_num() * (den_lcm / c.get_den())));
    if (num_gcd == 0) {
        return *this;
    }
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (relation_ == Relation::Eq && !lhs_.terms().empty() && lhs_.terms().begin()->second < 0) {
        factor = -factor;
    }
    return {lhs_ * factor, relation_};
}

Constraint Constraint::negated() const {
    switch (relation_) {
    case Relation::Geq: return {-lhs_, Relation::Gt};
    case Relation::Gt: return {-lhs_, Relation::Geq};
    case Relation::Eq: break;
    }
    throw std::logic_error("an equality has no convex complement");
}

std::vector<Constraint> Constraint::as_inequalities() const {
    if (relation_ != Relation::Eq) {
        return {*this};
    }
    return {Constraint(lhs_, Relation::Geq), Constraint(-lhs_, Relation::Geq)};
}

std::string dimension_name(Dim dim) {
    std::string name(1, static_cast<char>('A' + dim % 26));
    if (dim >= 26) {
        name += std::to_string(dim / 26);
    }
    return name;
}

namespace {

std::string signed_number(const Integer& value) {
    return value < 0 ? " " + to_string(value) : to_string(value);
}

const char* relation_text(Relation r) {
    switch (r) {
    case Relation::Eq: return "=";
    case Relation::Geq: return ">=";
    case Relation::Gt: return ">";
    }
    return "?";
}

}  // namespace

std::string format_constraint(const Constraint& constraint, const DimensionNamer& namer) {
    Constraint c = constraint.normalized();
    std::string out;
    bool first = true;
    for (const auto& [dim, k] : c.lhs().terms()) {
        if (!first) {
            out += "+";
        }
        out += (first ? to_string(k.get_num()) : signed_number(k.get_num())) + "*" + namer(dim);
        first = false;
    }
    if (first) {
        out += "0";
    }
    out += relation_text(c.relation());
    out += signed_number(Integer(-c.lhs().constant().get_num()));
    return out;
}

std::strong_ordering canonical_compare(const Constraint& a, const Constraint& b) {
    const auto& ta = a.lhs().terms();
    const auto& tb = b.lhs().terms();
    Dim fa = ta.empty() ? Dim(-1) : ta.begin()->first;
    Dim fb = tb.empty() ? Dim(-1) : tb.begin()->first;
    if (auto c = fa <=> fb; c != 0) {
        return c;
    }
    if (auto c = static_cast<int>(a.relation()) <=> static_cast<int>(b.relation()); c != 0) {
        return c;
    }
    Dim span = std::max(a.lhs().span_dimension(), b.lhs().span_dimension());
    for (Dim d = 0; d < span; ++d) {
        int c = cmp(b.lhs().coefficient(d), a.lhs().coefficient(d));
        if (c != 0) {
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    int c = cmp(a.lhs().constant(), b.lhs().constant());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace cha
