#include "lqflab/lp.hpp"

#include <optional>
#include <stdexcept>

#include "lqflab/errors.hpp"

namespace lqflab {

const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

using Row = std::vector<mpq_class>;

void validate(const LPProblem& p) {
    const std::size_t n = p.objective.size();
    const std::size_t m = p.rhs.size();
    if (p.constraints.rows() != m) throw InvalidArgument("LP: constraint rows do not match rhs length");
    if (m > 0 && p.constraints.cols() != n) throw InvalidArgument("LP: constraint columns do not match objective length");
    if (p.relations.size() != m) throw InvalidArgument("LP: one relation per row required");
    if (p.bounds.size() != n) throw InvalidArgument("LP: one bound per variable required");
    if (n == 0) throw InvalidArgument("LP: no variables");
}

/// Particular solution of M y = r (M is rows x cols) or nullopt if inconsistent.
std::optional<Row> solve_consistent(std::vector<Row> m, Row r) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        std::swap(r[p], r[rank]);
        const mpq_class inv = 1 / m[rank][c];
        for (std::size_t k = c; k < cols; ++k) m[rank][k] *= inv;
        r[rank] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || sgn(m[i][c]) == 0) continue;
            const mpq_class f = m[i][c];
            for (std::size_t k = c; k < cols; ++k)
                if (sgn(m[rank][k]) != 0) m[i][k] -= f * m[rank][k];
            r[i] -= f * r[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (sgn(r[i]) != 0) return std::nullopt;
    Row y(cols, 0);
    for (std::size_t i = 0; i < rank; ++i) y[pivot_col[i]] = r[i];
    return y;
}

class Simplex {
public:
    explicit Simplex(const LPProblem& p) : p_(p) { build(); }

    LPResult run() {
        LPResult out;
        if (!phase_one()) {
            out.status = LPStatus::Infeasible;
            return out;
        }
        if (!phase_two()) {
            out.status = LPStatus::Unbounded;
            return out;
        }
        out.status = LPStatus::Optimal;
        out.primal = primal();
        out.dual = dual();
        Rational value;
        for (std::size_t j = 0; j < p_.objective.size(); ++j) value += p_.objective[j] * out.primal[j];
        out.value = value;
        return out;
    }

private:
    void build() {
        const std::size_t n = p_.objective.size();
        const std::size_t m = p_.rhs.size();
        pos_.resize(n);
        neg_.assign(n, npos);
        std::size_t col = 0;
        for (std::size_t j = 0; j < n; ++j) {
            pos_[j] = col++;
            if (p_.bounds[j] == VarBound::Free) neg_[j] = col++;
        }
        structural_ = col;
        row_sign_.resize(m);
        std::vector<Relation> rel(m);
        std::size_t slack_count = 0;
        std::size_t art_count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            row_sign_[i] = p_.rhs[i].sign() < 0 ? -1 : 1;
            rel[i] = p_.relations[i];
            if (row_sign_[i] < 0 && rel[i] != Relation::Equal)
                rel[i] = rel[i] == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
            if (rel[i] != Relation::Equal) ++slack_count;
            if (rel[i] != Relation::LessEqual) ++art_count;
        }
        first_art_ = structural_ + slack_count;
        width_ = first_art_ + art_count;

        cost_.assign(width_, 0);
        const bool maximize = p_.sense == Sense::Maximize;
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class c = p_.objective[j].raw();
            if (maximize) c = -c;
            cost_[pos_[j]] = c;
            if (neg_[j] != npos) cost_[neg_[j]] = -c;
        }

        tab_.assign(m, Row(width_ + 1, 0));
        basis_.assign(m, npos);
        live_.assign(m, true);
        std::size_t slack = structural_;
        std::size_t art = first_art_;
        for (std::size_t i = 0; i < m; ++i) {
            const mpq_class s = row_sign_[i];
            for (std::size_t j = 0; j < n; ++j) {
                const mpq_class& a = p_.constraints(i, j).raw();
                if (sgn(a) == 0) continue;
                tab_[i][pos_[j]] = s * a;
                if (neg_[j] != npos) tab_[i][neg_[j]] = -s * a;
            }
            tab_[i][width_] = s * p_.rhs[i].raw();
            switch (rel[i]) {
                case Relation::LessEqual:
                    tab_[i][slack] = 1;
                    basis_[i] = slack++;
                    break;
                case Relation::GreaterEqual:
                    tab_[i][slack++] = -1;
                    tab_[i][art] = 1;
                    basis_[i] = art++;
                    break;
                case Relation::Equal:
                    tab_[i][art] = 1;
                    basis_[i] = art++;
                    break;
            }
        }
        original_ = tab_;
    }

    void pivot(std::size_t r, std::size_t e) {
        Row& pr = tab_[r];
        const mpq_class inv = 1 / pr[e];
        for (auto& v : pr)
            if (sgn(v) != 0) v *= inv;
        auto eliminate = [&](Row& row) {
            if (sgn(row[e]) == 0) return;
            const mpq_class f = row[e];
            for (std::size_t k = 0; k <= width_; ++k)
                if (sgn(pr[k]) != 0) row[k] -= f * pr[k];
        };
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (i != r && live_[i]) eliminate(tab_[i]);
        eliminate(obj_);
        basis_[r] = e;
    }

    void load_objective(const Row& cost) {
        obj_.assign(width_ + 1, 0);
        for (std::size_t j = 0; j < width_; ++j) obj_[j] = cost[j];
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!live_[i]) continue;
            const mpq_class& cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t k = 0; k <= width_; ++k)
                if (sgn(tab_[i][k]) != 0) obj_[k] -= cb * tab_[i][k];
        }
    }

    /// Bland's rule iterations over columns [0, limit). Returns false if unbounded.
    bool iterate(std::size_t limit) {
        while (true) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < limit; ++j)
                if (sgn(obj_[j]) < 0) {
                    enter = j;
                    break;
                }
            if (enter == npos) return true;
            std::size_t leave = npos;
            mpq_class best;
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (!live_[i] || sgn(tab_[i][enter]) <= 0) continue;
                mpq_class ratio = tab_[i][width_] / tab_[i][enter];
                if (leave == npos || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == npos) return false;
            pivot(leave, enter);
        }
    }

    bool phase_one() {
        if (first_art_ == width_) return true;
        Row cost(width_, 0);
        for (std::size_t j = first_art_; j < width_; ++j) cost[j] = 1;
        load_objective(cost);
        iterate(width_);
        if (sgn(obj_[width_]) != 0) return false;  // -(sum of artificials) at optimum
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (basis_[i] < first_art_) continue;
            std::size_t col = npos;
            for (std::size_t j = 0; j < first_art_; ++j)
                if (sgn(tab_[i][j]) != 0) {
                    col = j;
                    break;
                }
            if (col == npos)
                live_[i] = false;
            else
                pivot(i, col);
        }
        return true;
    }

    bool phase_two() {
        load_objective(cost_);
        return iterate(first_art_);
    }

    RationalVector primal() const {
        Row x(width_, 0);
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (live_[i]) x[basis_[i]] = tab_[i][width_];
        RationalVector out(p_.objective.size());
        for (std::size_t j = 0; j < out.size(); ++j) {
            mpq_class v = x[pos_[j]];
            if (neg_[j] != npos) v -= x[neg_[j]];
            out[j] = Rational(v);
        }
        return out;
    }

    // Solves y' A_B = c_B on the original standard-form rows, independent of the tableau.
    RationalVector dual() const {
        const std::size_t m = tab_.size();
        std::vector<Row> system;
        Row rhs;
        for (std::size_t i = 0; i < m; ++i) {
            if (!live_[i]) continue;
            const std::size_t b = basis_[i];
            Row eq(m);
            for (std::size_t k = 0; k < m; ++k) eq[k] = original_[k][b];
            system.push_back(std::move(eq));
            rhs.push_back(cost_[b]);
        }
        RationalVector y(m);
        if (system.empty()) return y;
        const auto sol = solve_consistent(std::move(system), std::move(rhs));
        if (!sol) throw std::logic_error("LP: basis system for dual certificate is inconsistent");
        const bool maximize = p_.sense == Sense::Maximize;
        for (std::size_t i = 0; i < m; ++i) {
            mpq_class v = (*sol)[i] * row_sign_[i];
            if (maximize) v = -v;
            y[i] = Rational(v);
        }
        return y;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const LPProblem& p_;
    std::vector<std::size_t> pos_;
    std::vector<std::size_t> neg_;
    std::vector<int> row_sign_;
    std::size_t structural_ = 0;
    std::size_t first_art_ = 0;
    std::size_t width_ = 0;
    Row cost_;
    std::vector<Row> tab_;
    std::vector<Row> original_;
    Row obj_;
    std::vector<std::size_t> basis_;
    std::vector<bool> live_;
};

bool satisfies(const Rational& lhs, Relation rel, const Rational& rhs) {
    switch (rel) {
        case Relation::LessEqual: return lhs <= rhs;
        case Relation::Equal: return lhs == rhs;
        case Relation::GreaterEqual: return lhs >= rhs;
    }
    return false;
}

}  // namespace

bool primal_feasible(const LPProblem& p, const RationalVector& x) {
    if (x.size() != p.objective.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (p.bounds[j] == VarBound::NonNegative && x[j].sign() < 0) return false;
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        Rational lhs;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!x[j].is_zero()) lhs += p.constraints(i, j) * x[j];
        if (!satisfies(lhs, p.relations[i], p.rhs[i])) return false;
    }
    return true;
}

bool dual_certifies(const LPProblem& p, const RationalVector& y, const Rational& value) {
    if (y.size() != p.rhs.size()) return false;
    // Written for minimization; a maximization flips every inequality.
    const int flip = p.sense == Sense::Maximize ? -1 : 1;
    Rational by;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const int s = y[i].sign() * flip;
        if (p.relations[i] == Relation::GreaterEqual && s < 0) return false;
        if (p.relations[i] == Relation::LessEqual && s > 0) return false;
        by += p.rhs[i] * y[i];
    }
    if (by != value) return false;
    for (std::size_t j = 0; j < p.objective.size(); ++j) {
        Rational aty;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (!y[i].is_zero()) aty += p.constraints(i, j) * y[i];
        const Rational slack = (p.objective[j] - aty) * Rational(flip);
        if (p.bounds[j] == VarBound::Free ? !slack.is_zero() : slack.sign() < 0) return false;
    }
    return true;
}

LPResult solve_lp(const LPProblem& problem) {
    validate(problem);
    LPResult result = Simplex(problem).run();
    if (result.status == LPStatus::Optimal) {
        if (!primal_feasible(problem, result.primal))
            throw std::logic_error("LP: optimal primal solution failed exact verification");
        if (!dual_certifies(problem, result.dual, *result.value))
            throw std::logic_error("LP: dual certificate failed strong-duality verification");
    }
    return result;
}

}  // namespace lqflab
