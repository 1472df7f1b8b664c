#include "simplex.hpp"

#include <optional>

namespace cha::detail {

namespace {

// r + k*delta for an infinitesimal delta > 0.
struct DeltaRational {
    Rational r;
    Rational k;

    friend bool operator<(const DeltaRational& a, const DeltaRational& b) {
        return a.r < b.r || (a.r == b.r && a.k < b.k);
    }
    DeltaRational& operator+=(const DeltaRational& o) {
        r += o.r;
        k += o.k;
        return *this;
    }
};

DeltaRational operator-(const DeltaRational& a, const DeltaRational& b) { return {a.r - b.r, a.k - b.k}; }
DeltaRational operator*(const Rational& s, const DeltaRational& a) { return {s * a.r, s * a.k}; }

// Each row defines a slack s_i = a_i . x with bounds from the constraint;
// the original coordinates are unbounded. Bland's rule on variable ids.
class GeneralSimplex {
  public:
    GeneralSimplex(Dim n, const std::vector<const Row*>& rows)
        : lower_(n + rows.size()), upper_(n + rows.size()), value_(n + rows.size(), DeltaRational{0, 0}) {
        for (Dim j = 0; j < n; ++j) {
            nonbasic_.push_back(j);
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& r = *rows[i];
            std::vector<Rational> line(n);
            for (Dim j = 0; j < n; ++j) {
                line[j] = r.coeffs[j];
            }
            tableau_.push_back(std::move(line));
            const std::size_t v = n + i;
            basic_.push_back(v);
            Rational bound = -Rational(r.constant);
            lower_[v] = DeltaRational{bound, r.relation == Relation::Gt ? 1 : 0};
            if (r.relation == Relation::Eq) {
                upper_[v] = DeltaRational{bound, 0};
            }
        }
    }

    bool check() {
        for (;;) {
            std::size_t row = npos;
            bool below = false;
            for (std::size_t i = 0; i < basic_.size(); ++i) {
                const std::size_t v = basic_[i];
                bool lo = lower_[v] && value_[v] < *lower_[v];
                bool hi = upper_[v] && *upper_[v] < value_[v];
                if ((lo || hi) && (row == npos || v < basic_[row])) {
                    row = i;
                    below = lo;
                }
            }
            if (row == npos) {
                return true;
            }
            std::size_t slot = npos;
            for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
                const Rational& a = tableau_[row][j];
                if (a == 0) {
                    continue;
                }
                const std::size_t y = nonbasic_[j];
                bool increase = (a > 0) == below;
                bool can = increase ? (!upper_[y] || value_[y] < *upper_[y]) : (!lower_[y] || *lower_[y] < value_[y]);
                if (can && (slot == npos || y < nonbasic_[slot])) {
                    slot = j;
                }
            }
            if (slot == npos) {
                return false;
            }
            const std::size_t v = basic_[row];
            pivot_and_update(row, slot, below ? *lower_[v] : *upper_[v]);
        }
    }

  private:
    static constexpr std::size_t npos = std::size_t(-1);

    void pivot_and_update(std::size_t row, std::size_t slot, const DeltaRational& target) {
        const std::size_t xb = basic_[row];
        const std::size_t y = nonbasic_[slot];
        Rational a = tableau_[row][slot];
        DeltaRational theta = Rational(1 / a) * (target - value_[xb]);
        value_[xb] = target;
        value_[y] += theta;
        for (std::size_t i = 0; i < basic_.size(); ++i) {
            if (i != row && tableau_[i][slot] != 0) {
                value_[basic_[i]] += tableau_[i][slot] * theta;
            }
        }
        pivot(row, slot);
    }

    void pivot(std::size_t row, std::size_t slot) {
        std::vector<Rational>& r = tableau_[row];
        Rational inv = 1 / r[slot];
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j == slot) {
                r[j] = inv;
            } else if (r[j] != 0) {
                r[j] *= -inv;
            }
        }
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (i == row || tableau_[i][slot] == 0) {
                continue;
            }
            std::vector<Rational>& other = tableau_[i];
            Rational c = other[slot];
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (j == slot) {
                    other[j] = c * r[j];
                } else if (r[j] != 0) {
                    other[j] += c * r[j];
                }
            }
        }
        const std::size_t xb = basic_[row];
        const std::size_t y = nonbasic_[slot];
        basic_[row] = y;
        nonbasic_[slot] = xb;
    }

    std::vector<std::optional<DeltaRational>> lower_;
    std::vector<std::optional<DeltaRational>> upper_;
    std::vector<DeltaRational> value_;
    std::vector<std::size_t> basic_;
    std::vector<std::size_t> nonbasic_;
    std::vector<std::vector<Rational>> tableau_;  // basic row i over nonbasic slots
};

}  // namespace

bool feasible(Dim dimension, const std::vector<const Row*>& rows) {
    std::vector<const Row*> open;
    for (const Row* r : rows) {
        if (r->is_ground()) {
            if (!r->ground_holds()) {
                return false;
            }
            continue;
        }
        open.push_back(r);
    }
    if (open.empty()) {
        return true;
    }
    return GeneralSimplex(dimension, open).check();
}

bool feasible(Dim dimension, const std::vector<Row>& rows) {
    std::vector<const Row*> all;
    all.reserve(rows.size());
    for (const Row& r : rows) {
        all.push_back(&r);
    }
    return feasible(dimension, all);
}

}  // namespace cha::detail
