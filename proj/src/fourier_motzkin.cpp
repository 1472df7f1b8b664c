#include "fourier_motzkin.hpp"
#include "simplex.hpp"

#include <cha/error.hpp>

#include <algorithm>
#include <numeric>

namespace cha::detail {

bool Row::is_ground() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& k) { return k == 0; });
}

bool Row::ground_holds() const {
    switch (relation) {
    case Relation::Eq: return constant == 0;
    case Relation::Geq: return constant >= 0;
    case Relation::Gt: return constant > 0;
    }
    return false;
}

void normalize(Row& row) {
    Integer g = abs(row.constant);
    for (const auto& k : row.coeffs) {
        if (g == 1) {
            break;
        }
        if (k != 0) {
            g = gcd(g, k);
        }
    }
    if (g == 0) {
        return;
    }
    bool flip = false;
    if (row.relation == Relation::Eq) {
        auto lead = std::find_if(row.coeffs.begin(), row.coeffs.end(), [](const Integer& k) { return k != 0; });
        flip = lead != row.coeffs.end() && *lead < 0;
    }
    if (g == 1 && !flip) {
        return;
    }
    if (flip) {
        g = -g;
    }
    for (auto& k : row.coeffs) {
        if (k != 0) {
            mpz_divexact(k.get_mpz_t(), k.get_mpz_t(), g.get_mpz_t());
        }
    }
    mpz_divexact(row.constant.get_mpz_t(), row.constant.get_mpz_t(), g.get_mpz_t());
}

Row negate(const Row& row) {
    Row out = row;
    for (auto& k : out.coeffs) {
        k = -k;
    }
    out.constant = -out.constant;
    out.relation = row.relation == Relation::Gt ? Relation::Geq : Relation::Gt;
    return out;
}

Row to_row(const Constraint& constraint, Dim dimension) {
    Constraint c = constraint.normalized();
    Row row;
    row.coeffs.assign(dimension, Integer(0));
    for (const auto& [dim, k] : c.lhs().terms()) {
        if (dim >= dimension) {
            throw DimensionError("constraint mentions dimension " + std::to_string(dim) + " in a space of dimension " +
                                 std::to_string(dimension));
        }
        row.coeffs[dim] = k.get_num();
    }
    row.constant = c.lhs().constant().get_num();
    row.relation = c.relation();
    return row;
}

Constraint to_constraint(const Row& row) {
    LinearExpression e{Rational(row.constant)};
    for (Dim d = 0; d < row.coeffs.size(); ++d) {
        if (row.coeffs[d] != 0) {
            e.add_term(d, Rational(row.coeffs[d]));
        }
    }
    return {std::move(e), row.relation};
}

void ConstraintSystem::add(const Constraint& constraint) { add(to_row(constraint, dimension_)); }

void ConstraintSystem::add(Row row) {
    if (row.coeffs.size() != dimension_) {
        throw DimensionError("row width does not match the system dimension");
    }
    if (infeasible_) {
        return;
    }
    normalize(row);
    if (row.is_ground()) {
        if (!row.ground_holds()) {
            infeasible_ = true;
            rows_.clear();
        }
        return;
    }
    rows_.push_back(std::move(row));
}

namespace {

int compare_coeffs(const Row& a, const Row& b) {
    for (Dim d = 0; d < a.coeffs.size(); ++d) {
        if (int c = cmp(a.coeffs[d], b.coeffs[d]); c != 0) {
            return c;
        }
    }
    return 0;
}

// Strength order among rows with identical coefficient vectors: is `a`
// strictly preferable to `b`?
bool tighter(const Row& a, const Row& b) {
    if (a.constant != b.constant) {
        return a.constant < b.constant;
    }
    if (a.relation != b.relation) {
        return a.relation == Relation::Gt;
    }
    return a.history.count() < b.history.count();
}

}  // namespace

void ConstraintSystem::remove_duplicates() {
    if (rows_.size() < 2) {
        return;
    }
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    auto is_eq = [this](std::size_t i) { return rows_[i].relation == Relation::Eq; };
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (is_eq(i) != is_eq(j)) {
            return is_eq(i);
        }
        int c = compare_coeffs(rows_[i], rows_[j]);
        if (c != 0) {
            return c < 0;
        }
        if (tighter(rows_[i], rows_[j]) || tighter(rows_[j], rows_[i])) {
            return tighter(rows_[i], rows_[j]);
        }
        return i < j;
    });
    std::vector<Row> kept;
    kept.reserve(rows_.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        Row& row = rows_[order[pos]];
        if (!kept.empty()) {
            const Row& last = kept.back();
            bool same_kind = (last.relation == Relation::Eq) == (row.relation == Relation::Eq);
            if (same_kind && compare_coeffs(last, row) == 0) {
                if (row.relation == Relation::Eq && last.constant != row.constant) {
                    infeasible_ = true;
                    rows_.clear();
                    return;
                }
                continue;
            }
        }
        kept.push_back(std::move(row));
    }
    rows_ = std::move(kept);
}

void ConstraintSystem::substitute_equalities(const std::vector<bool>& eliminate) {
    for (Dim d = 0; d < dimension_ && !infeasible_; ++d) {
        if (!eliminate[d]) {
            continue;
        }
        // Prefer the sparsest equality mentioning d.
        std::size_t best = rows_.size();
        std::size_t best_support = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Row& r = rows_[i];
            if (r.relation != Relation::Eq || r.coeffs[d] == 0) {
                continue;
            }
            std::size_t support = std::count_if(r.coeffs.begin(), r.coeffs.end(), [](const Integer& k) { return k != 0; });
            if (best == rows_.size() || support < best_support) {
                best = i;
                best_support = support;
            }
        }
        if (best == rows_.size()) {
            continue;
        }
        Row pivot = std::move(rows_[best]);
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(best));
        const Integer& a = pivot.coeffs[d];
        Integer abs_a = abs(a);
        std::vector<Row> next;
        next.reserve(rows_.size());
        for (Row& r : rows_) {
            if (r.coeffs[d] != 0) {
                // r := |a| * r - sign(a) * b * pivot, which cancels dimension d
                // while keeping the direction of inequalities.
                Integer factor = r.coeffs[d] * sgn(a);
                for (Dim j = 0; j < dimension_; ++j) {
                    r.coeffs[j] = abs_a * r.coeffs[j] - factor * pivot.coeffs[j];
                }
                r.constant = abs_a * r.constant - factor * pivot.constant;
                normalize(r);
                if (r.is_ground()) {
                    if (!r.ground_holds()) {
                        infeasible_ = true;
                        rows_.clear();
                        return;
                    }
                    continue;
                }
            }
            next.push_back(std::move(r));
        }
        rows_ = std::move(next);
    }
}

void ConstraintSystem::fourier_motzkin(const std::vector<bool>& eliminate) {
    const std::size_t origin_count = rows_.size();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        rows_[i].history.resize(origin_count);
        rows_[i].history.reset();
        rows_[i].history.set(i);
    }
    std::vector<bool> pending = eliminate;
    std::size_t eliminated = 0;
    while (!infeasible_) {
        // Heuristic: smallest number of generated pairs first.
        Dim chosen = dimension_;
        std::size_t best_cost = 0;
        for (Dim d = 0; d < dimension_; ++d) {
            if (!pending[d]) {
                continue;
            }
            std::size_t pos = 0;
            std::size_t neg = 0;
            for (const Row& r : rows_) {
                int s = r.coefficient_sign(d);
                pos += s > 0;
                neg += s < 0;
            }
            if (pos + neg == 0) {
                pending[d] = false;
                continue;
            }
            std::size_t cost = pos * neg;
            if (chosen == dimension_ || cost < best_cost) {
                chosen = d;
                best_cost = cost;
            }
        }
        if (chosen == dimension_) {
            return;
        }
        const Dim d = chosen;
        pending[d] = false;
        ++eliminated;

        std::vector<Row> next;
        std::vector<const Row*> positive;
        std::vector<const Row*> negative;
        for (Row& r : rows_) {
            int s = r.coefficient_sign(d);
            if (s > 0) {
                positive.push_back(&r);
            } else if (s < 0) {
                negative.push_back(&r);
            }
        }
        for (const Row* p : positive) {
            for (const Row* n : negative) {
                boost::dynamic_bitset<> history = p->history | n->history;
                if (history.count() > eliminated + 1) {
                    continue;
                }
                Row combined;
                combined.coeffs.resize(dimension_);
                Integer fp = -n->coeffs[d];
                const Integer& fn = p->coeffs[d];
                for (Dim j = 0; j < dimension_; ++j) {
                    combined.coeffs[j] = fp * p->coeffs[j] + fn * n->coeffs[j];
                }
                combined.constant = fp * p->constant + fn * n->constant;
                combined.relation =
                    (p->relation == Relation::Gt || n->relation == Relation::Gt) ? Relation::Gt : Relation::Geq;
                combined.history = std::move(history);
                normalize(combined);
                if (combined.is_ground()) {
                    if (!combined.ground_holds()) {
                        infeasible_ = true;
                        rows_.clear();
                        return;
                    }
                    continue;
                }
                next.push_back(std::move(combined));
            }
        }
        for (Row& r : rows_) {
            if (r.coeffs[d] == 0) {
                next.push_back(std::move(r));
            }
        }
        rows_ = std::move(next);
        remove_duplicates();
    }
}

void ConstraintSystem::eliminate(const std::vector<bool>& eliminate) {
    if (eliminate.size() != dimension_) {
        throw DimensionError("elimination mask does not match the system dimension");
    }
    if (infeasible_) {
        return;
    }
    substitute_equalities(eliminate);
    if (infeasible_) {
        return;
    }
    remove_duplicates();
    if (infeasible_) {
        return;
    }
    fourier_motzkin(eliminate);
}

bool ConstraintSystem::satisfiable() const {
    if (infeasible_) {
        return false;
    }
    return feasible(dimension_, rows_);
}

std::vector<Constraint> ConstraintSystem::to_constraints(const std::vector<Dim>& target) const {
    std::vector<Constraint> out;
    out.reserve(rows_.size());
    for (const Row& r : rows_) {
        LinearExpression e{Rational(r.constant)};
        for (Dim d = 0; d < dimension_; ++d) {
            if (r.coeffs[d] == 0) {
                continue;
            }
            if (target[d] == npos) {
                throw ContractError("row mentions a dimension that is dropped by compaction");
            }
            e.add_term(target[d], Rational(r.coeffs[d]));
        }
        out.emplace_back(std::move(e), r.relation);
    }
    return out;
}

std::vector<Constraint> ConstraintSystem::to_constraints() const {
    std::vector<Constraint> out;
    out.reserve(rows_.size());
    for (const Row& r : rows_) {
        out.push_back(to_constraint(r));
    }
    return out;
}

}  // namespace cha::detail
