#include <cha/polyhedron.hpp>

#include <cha/error.hpp>

#include "fourier_motzkin.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <numeric>

namespace cha {

using detail::ConstraintSystem;
using detail::Row;

namespace {

void require_same_dimension(const Polyhedron& a, const Polyhedron& b, const char* op) {
    if (a.dimension() != b.dimension()) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dimension()) + " vs " +
                             std::to_string(b.dimension()) + ")");
    }
}

bool satisfiable_with(Dim dim, const std::vector<Row>& rows, std::size_t skip, const Row* extra) {
    std::vector<const Row*> picked;
    picked.reserve(rows.size() + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i != skip) {
            picked.push_back(&rows[i]);
        }
    }
    if (extra != nullptr) {
        picked.push_back(extra);
    }
    return detail::feasible(dim, picked);
}

int highest_nonzero(const Row& r) {
    for (Dim d = r.coeffs.size(); d-- > 0;) {
        if (r.coeffs[d] != 0) {
            return static_cast<int>(d);
        }
    }
    return -1;
}

// Cancels dimension `d` from `target` using `pivot` (an equality), keeping the
// direction of `target` when it is an inequality.
void cancel_with(Row& target, const Row& pivot, Dim d) {
    if (target.coeffs[d] == 0) {
        return;
    }
    const Integer& a = pivot.coeffs[d];
    Integer abs_a = abs(a);
    Integer factor = target.coeffs[d] * sgn(a);
    for (Dim j = 0; j < target.coeffs.size(); ++j) {
        target.coeffs[j] = abs_a * target.coeffs[j] - factor * pivot.coeffs[j];
    }
    target.constant = abs_a * target.constant - factor * pivot.constant;
    detail::normalize(target);
}

std::vector<Constraint> sorted_constraints(const std::vector<Row>& rows) {
    std::vector<Constraint> out;
    out.reserve(rows.size());
    for (const Row& r : rows) {
        out.push_back(detail::to_constraint(r));
    }
    std::sort(out.begin(), out.end(), [](const Constraint& a, const Constraint& b) { return canonical_compare(a, b) < 0; });
    return out;
}

// Minimized canonical system, or nullopt when unsatisfiable.
std::optional<std::vector<Constraint>> minimize(Dim dim, ConstraintSystem sys) {
    if (sys.known_infeasible()) {
        return std::nullopt;
    }
    sys.eliminate(std::vector<bool>(dim, false));  // drops duplicates
    if (!sys.satisfiable()) {
        return std::nullopt;
    }
    std::vector<Row> rows = sys.rows();

    // Implicit equalities: e >= 0 with e > 0 infeasible. None exist when every
    // inequality can be strict at once.
    std::vector<Row> interior = rows;
    for (Row& r : interior) {
        if (r.relation == Relation::Geq) {
            r.relation = Relation::Gt;
        }
    }
    const bool full = detail::feasible(dim, interior);
    for (std::size_t i = 0; i < rows.size() && !full; ++i) {
        if (rows[i].relation != Relation::Geq) {
            continue;
        }
        Row probe = rows[i];
        probe.relation = Relation::Gt;
        if (!satisfiable_with(dim, rows, rows.size(), &probe)) {
            rows[i].relation = Relation::Eq;
            detail::normalize(rows[i]);
        }
    }

    std::vector<Row> equalities;
    std::vector<Row> inequalities;
    for (Row& r : rows) {
        (r.relation == Relation::Eq ? equalities : inequalities).push_back(std::move(r));
    }

    // Gauss-Jordan on the equalities, pivoting on the highest dimension.
    std::vector<Row> echelon;
    for (std::size_t i = 0; i < equalities.size(); ++i) {
        Row& eq = equalities[i];
        detail::normalize(eq);
        int p = highest_nonzero(eq);
        if (p < 0) {
            continue;
        }
        const Dim pivot = static_cast<Dim>(p);
        for (std::size_t j = 0; j < equalities.size(); ++j) {
            if (j != i) {
                cancel_with(equalities[j], eq, pivot);
            }
        }
        for (Row& e : echelon) {
            cancel_with(e, eq, pivot);
        }
        for (Row& q : inequalities) {
            cancel_with(q, eq, pivot);
        }
        echelon.push_back(eq);
    }
    std::erase_if(echelon, [](const Row& r) { return r.is_ground(); });

    ConstraintSystem reduced(dim);
    for (Row& q : inequalities) {
        reduced.add(std::move(q));
    }
    reduced.eliminate(std::vector<bool>(dim, false));
    inequalities = reduced.rows();
    std::sort(inequalities.begin(), inequalities.end(), [](const Row& a, const Row& b) {
        return canonical_compare(detail::to_constraint(a), detail::to_constraint(b)) < 0;
    });

    // Redundancy, first against the rows kept so far (cheap while that set is
    // small; sparse rows with small coefficients go first as likely facets),
    // then each survivor against all the others that remain.
    std::vector<std::size_t> order(inequalities.size());
    std::iota(order.begin(), order.end(), 0);
    auto weight = [&](std::size_t i) {
        Integer w = 0;
        for (const Integer& k : inequalities[i].coeffs) {
            w += abs(k);
        }
        return w;
    };
    std::vector<Integer> weights;
    for (std::size_t i = 0; i < inequalities.size(); ++i) {
        weights.push_back(weight(i));
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
    std::vector<Row> probe = echelon;
    std::vector<bool> survives(inequalities.size(), false);
    for (std::size_t i : order) {
        Row complement = detail::negate(inequalities[i]);
        if (probe.size() == echelon.size() || satisfiable_with(dim, probe, probe.size(), &complement)) {
            probe.push_back(inequalities[i]);
            survives[i] = true;
        }
    }
    std::vector<Row> kept = echelon;
    const std::size_t base = kept.size();
    for (std::size_t i = 0; i < inequalities.size(); ++i) {
        if (survives[i]) {
            kept.push_back(inequalities[i]);
        }
    }
    for (std::size_t i = base; i < kept.size();) {
        Row complement = detail::negate(kept[i]);
        if (!satisfiable_with(dim, kept, i, &complement)) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return sorted_constraints(kept);
}

}  // namespace

namespace detail {

struct PolyhedronFactory {
    static Polyhedron canonical(Dim dim, std::vector<Constraint> constraints) {
        return Polyhedron(dim, std::move(constraints), false);
    }
    static Polyhedron empty(Dim dim) { return Polyhedron(dim, {}, true); }
};

}  // namespace detail

namespace {

Polyhedron from_system(Dim dim, ConstraintSystem sys) {
    auto minimized = minimize(dim, std::move(sys));
    if (!minimized) {
        return detail::PolyhedronFactory::empty(dim);
    }
    return detail::PolyhedronFactory::canonical(dim, std::move(*minimized));
}

ConstraintSystem system_of(const Polyhedron& p, Dim dim) {
    ConstraintSystem sys(dim);
    for (const Constraint& c : p.constraints()) {
        sys.add(c);
    }
    return sys;
}

}  // namespace

Polyhedron Polyhedron::make(Dim dimension, std::span<const Constraint> constraints) {
    ConstraintSystem sys(dimension);
    for (const Constraint& c : constraints) {
        sys.add(c);
    }
    return from_system(dimension, std::move(sys));
}

Polyhedron Polyhedron::universe(Dim dimension) { return Polyhedron(dimension, {}, false); }

Polyhedron Polyhedron::empty(Dim dimension) { return Polyhedron(dimension, {}, true); }

bool Polyhedron::contains(std::span<const Rational> point) const {
    if (point.size() != dimension_) {
        throw DimensionError("point dimension does not match the polyhedron");
    }
    if (empty_) {
        return false;
    }
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const Constraint& c) { return c.holds_at(point); });
}

bool Polyhedron::entails(const Constraint& constraint) const {
    if (constraint.lhs().span_dimension() > dimension_) {
        throw DimensionError("constraint mentions a dimension outside the polyhedron");
    }
    if (empty_) {
        return true;
    }
    if (constraint.lhs().is_constant()) {
        return constraint.is_tautology();
    }
    for (const Constraint& half : constraint.as_inequalities()) {
        ConstraintSystem sys = system_of(*this, dimension_);
        sys.add(half.negated());
        if (sys.satisfiable()) {
            return false;
        }
    }
    return true;
}

bool Polyhedron::includes(const Polyhedron& inner) const {
    require_same_dimension(*this, inner, "includes");
    if (inner.empty_) {
        return true;
    }
    if (empty_) {
        return false;
    }
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const Constraint& c) { return inner.entails(c); });
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
    require_same_dimension(a, b, "intersect");
    if (a.is_empty() || b.is_empty()) {
        return Polyhedron::empty(a.dimension());
    }
    std::vector<Constraint> all = a.constraints();
    all.insert(all.end(), b.constraints().begin(), b.constraints().end());
    return Polyhedron::make(a.dimension(), all);
}

namespace {

// One argument of the hull, lifted: every constraint becomes g.z + h (rel) 0
// over z = (x, eps) where strict constraints subtract eps.
struct LiftedConstraint {
    LinearExpression g;  // over z
    Rational h;
    Relation relation;
};

std::vector<LiftedConstraint> lift(const Polyhedron& p, Dim n, bool with_epsilon) {
    std::vector<LiftedConstraint> out;
    for (const Constraint& c : p.constraints()) {
        LinearExpression g;
        for (const auto& [dim, k] : c.lhs().terms()) {
            g.add_term(dim, k);
        }
        Relation rel = c.relation();
        if (rel == Relation::Gt) {
            g.add_term(n, -1);
            rel = Relation::Geq;
        }
        out.push_back({std::move(g), c.lhs().constant(), rel});
    }
    if (with_epsilon) {
        out.push_back({LinearExpression::variable(n), 0, Relation::Geq});
        out.push_back({LinearExpression::variable(n, -1), 1, Relation::Geq});
    }
    return out;
}

bool has_strict(const Polyhedron& p) {
    return std::any_of(p.constraints().begin(), p.constraints().end(), [](const Constraint& c) { return c.is_strict(); });
}

}  // namespace

// Closed hull of the (epsilon-extended) arguments through the lifting
// z = w1 + w2, A1 w1 >= b1 l, A2 w2 >= b2 (1 - l), 0 <= l <= 1, followed by
// projection. With strict constraints present, z carries an extra epsilon
// coordinate which is finally eliminated under eps > 0.
Polyhedron convex_hull(const Polyhedron& a, const Polyhedron& b) {
    require_same_dimension(a, b, "convex_hull");
    if (a.is_empty()) {
        return b;
    }
    if (b.is_empty()) {
        return a;
    }
    if (a.includes(b)) {
        return a;
    }
    if (b.includes(a)) {
        return b;
    }
    const Dim n = a.dimension();
    const bool with_epsilon = has_strict(a) || has_strict(b);
    const Dim m = n + (with_epsilon ? 1 : 0);  // width of z
    const Dim w_base = m;
    const Dim lambda = 2 * m;
    const Dim lifted = 2 * m + 1;

    ConstraintSystem sys(lifted);
    auto shift_to_w = [&](const LinearExpression& g) {
        LinearExpression out;
        for (const auto& [dim, k] : g.terms()) {
            out.add_term(w_base + dim, k);
        }
        return out;
    };
    for (const LiftedConstraint& c : lift(a, n, with_epsilon)) {
        // g.w + h*lambda
        LinearExpression e = shift_to_w(c.g);
        e.add_term(lambda, c.h);
        sys.add(Constraint(std::move(e), c.relation));
    }
    for (const LiftedConstraint& c : lift(b, n, with_epsilon)) {
        // g.(z - w) + h*(1 - lambda)
        LinearExpression e = c.g - shift_to_w(c.g);
        e.add_term(lambda, -c.h);
        e.set_constant(c.h);
        sys.add(Constraint(std::move(e), c.relation));
    }
    sys.add(Constraint(LinearExpression::variable(lambda), Relation::Geq));
    LinearExpression upper = LinearExpression::variable(lambda, -1);
    upper.set_constant(1);
    sys.add(Constraint(std::move(upper), Relation::Geq));

    std::vector<bool> mask(lifted, false);
    for (Dim d = m; d < lifted; ++d) {
        mask[d] = true;
    }
    sys.eliminate(mask);
    if (with_epsilon) {
        sys.add(Constraint(LinearExpression::variable(n), Relation::Gt));
        std::vector<bool> eps_mask(lifted, false);
        eps_mask[n] = true;
        sys.eliminate(eps_mask);
    }
    std::vector<Dim> target(lifted, ConstraintSystem::npos);
    for (Dim d = 0; d < n; ++d) {
        target[d] = d;
    }
    return Polyhedron::make(n, sys.to_constraints(target));
}

Polyhedron project_system(Dim dimension, std::span<const Constraint> constraints, const std::set<Dim>& dims) {
    for (Dim d : dims) {
        if (d >= dimension) {
            throw DimensionError("project_out: dimension " + std::to_string(d) + " out of range");
        }
    }
    const Dim remaining = dimension - dims.size();
    ConstraintSystem sys(dimension);
    for (const Constraint& c : constraints) {
        sys.add(c);
    }
    if (sys.known_infeasible()) {
        return Polyhedron::empty(remaining);
    }
    std::vector<bool> mask(dimension, false);
    for (Dim d : dims) {
        mask[d] = true;
    }
    sys.eliminate(mask);
    if (sys.known_infeasible()) {
        return Polyhedron::empty(remaining);
    }
    std::vector<Dim> target(dimension, ConstraintSystem::npos);
    Dim next = 0;
    for (Dim d = 0; d < dimension; ++d) {
        if (!mask[d]) {
            target[d] = next++;
        }
    }
    return Polyhedron::make(remaining, sys.to_constraints(target));
}

Polyhedron project_out(const Polyhedron& p, const std::set<Dim>& dims) {
    if (p.is_empty()) {
        for (Dim d : dims) {
            if (d >= p.dimension()) {
                throw DimensionError("project_out: dimension " + std::to_string(d) + " out of range");
            }
        }
        return Polyhedron::empty(p.dimension() - dims.size());
    }
    return project_system(p.dimension(), p.constraints(), dims);
}

Polyhedron remap(const Polyhedron& p, std::span<const std::optional<Dim>> mapping, Dim new_dimension) {
    if (mapping.size() != p.dimension()) {
        throw DimensionError("remap: mapping must cover every dimension of the source");
    }
    std::vector<bool> used(new_dimension, false);
    for (const auto& target : mapping) {
        if (!target) {
            continue;
        }
        if (*target >= new_dimension) {
            throw DimensionError("remap: target dimension out of range");
        }
        if (used[*target]) {
            throw ContractError("remap: mapping is not injective");
        }
        used[*target] = true;
    }
    if (p.is_empty()) {
        return Polyhedron::empty(new_dimension);
    }
    std::vector<Constraint> out;
    out.reserve(p.constraint_count());
    for (const Constraint& c : p.constraints()) {
        LinearExpression e{c.lhs().constant()};
        for (const auto& [dim, k] : c.lhs().terms()) {
            if (!mapping[dim]) {
                throw ContractError("remap: dimension " + std::to_string(dim) + " is constrained but unmapped");
            }
            e.add_term(*mapping[dim], k);
        }
        out.emplace_back(std::move(e), c.relation());
    }
    // Renaming preserves canonical form only up to ordering and pivot choice.
    return Polyhedron::make(new_dimension, out);
}

namespace {

std::vector<Constraint> split_equalities(const Polyhedron& p) {
    std::vector<Constraint> out;
    for (const Constraint& c : p.constraints()) {
        for (Constraint& half : c.as_inequalities()) {
            out.push_back(std::move(half));
        }
    }
    return out;
}

}  // namespace

Polyhedron widen_standard(const Polyhedron& previous, const Polyhedron& next) {
    require_same_dimension(previous, next, "widen");
    if (previous.is_empty()) {
        return next;
    }
    const Dim n = previous.dimension();
    const std::vector<Constraint> old_system = split_equalities(previous);
    const std::vector<Constraint> new_system = split_equalities(next);

    std::vector<Constraint> kept;
    for (const Constraint& c : old_system) {
        if (next.entails(c)) {
            kept.push_back(c);
        }
    }
    // A constraint of `next` survives if it can replace some constraint of
    // `previous` without changing the set it describes.
    for (const Constraint& c : new_system) {
        if (std::find(kept.begin(), kept.end(), c) != kept.end() || !previous.entails(c)) {
            continue;
        }
        for (std::size_t skip = 0; skip < old_system.size(); ++skip) {
            std::vector<Constraint> swapped;
            swapped.reserve(old_system.size());
            for (std::size_t i = 0; i < old_system.size(); ++i) {
                if (i != skip) {
                    swapped.push_back(old_system[i]);
                }
            }
            swapped.push_back(c);
            if (Polyhedron::make(n, swapped).entails(old_system[skip])) {
                kept.push_back(c);
                break;
            }
        }
    }
    return Polyhedron::make(n, kept);
}

Polyhedron widen_up_to(const Polyhedron& previous, const Polyhedron& next, const Polyhedron& bound) {
    require_same_dimension(previous, next, "widen_up_to");
    require_same_dimension(previous, bound, "widen_up_to");
    Polyhedron widened = widen_standard(previous, next);
    if (bound.is_empty()) {
        return widened;
    }
    std::vector<Constraint> thresholds;
    for (const Constraint& c : split_equalities(bound)) {
        if (next.entails(c)) {
            thresholds.push_back(c);
        }
    }
    if (thresholds.empty()) {
        return widened;
    }
    return intersect(widened, Polyhedron::make(previous.dimension(), thresholds));
}

}  // namespace cha
