#pragma once

// Exact rational LP solver: revised two-phase primal simplex with an
// explicit basis inverse and Bland's pivoting rule.
//
//   maximize c·x  subject to  rows (≤, ≥, =),  x ≥ 0
//
// Returned primal solutions are basic, so at most (number of rows) of the
// structural variables are nonzero. Duals follow the usual sign convention
// for a maximization: y_i ≥ 0 on ≤ rows, y_i ≤ 0 on ≥ rows.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "rml/error.hpp"
#include "rml/rational.hpp"

namespace rml::lp {

enum class Sense
{
    LessEq,
    GreaterEq,
    Equal,
};

struct Row
{
    std::vector<std::pair<int, Rational>> coeffs;  ///< (variable, coefficient)
    Sense sense = Sense::LessEq;
    Rational rhs = 0;
};

struct Problem
{
    int num_vars = 0;
    std::vector<Rational> objective;  ///< maximized; empty means all zero
    std::vector<Row> rows;
};

enum class Status
{
    Optimal,
    Infeasible,
    Unbounded,
};

struct Solution
{
    Status status = Status::Infeasible;
    Rational value = 0;
    std::vector<Rational> x;       ///< structural variables
    std::vector<Rational> duals;   ///< one per row
    std::vector<int> basic_structural;  ///< structural variables in the final basis
    std::size_t pivots = 0;
};

namespace detail {

/// acc ± a·b. Integer operands skip the gcd normalisation.
template <bool Subtract>
inline void muladd(Rational& acc, const Rational& a, const Rational& b, Rational& tmp)
{
    auto* acc_q = acc.backend().data();
    const auto* a_q = a.backend().data();
    const auto* b_q = b.backend().data();
    if (mpz_cmp_ui(mpq_denref(acc_q), 1) == 0 && mpz_cmp_ui(mpq_denref(a_q), 1) == 0 && mpz_cmp_ui(mpq_denref(b_q), 1) == 0) {
        if constexpr (Subtract)
            mpz_submul(mpq_numref(acc_q), mpq_numref(a_q), mpq_numref(b_q));
        else
            mpz_addmul(mpq_numref(acc_q), mpq_numref(a_q), mpq_numref(b_q));
        return;
    }
    tmp = a;
    tmp *= b;
    if constexpr (Subtract)
        acc -= tmp;
    else
        acc += tmp;
}

class RevisedSimplex
{
public:
    explicit RevisedSimplex(const Problem& p) : n_(p.num_vars), m_(static_cast<int>(p.rows.size()))
    {
        if (!p.objective.empty() && static_cast<int>(p.objective.size()) != n_) throw InputError("lp: objective length differs from variable count");
        cols_.assign(static_cast<std::size_t>(n_), {});
        kinds_.assign(static_cast<std::size_t>(n_), Kind::Structural);
        b_.resize(static_cast<std::size_t>(m_));
        flipped_.assign(static_cast<std::size_t>(m_), false);
        basis_.assign(static_cast<std::size_t>(m_), -1);

        for (int i = 0; i < m_; ++i) {
            const Row& r = p.rows[i];
            Sense sense = r.sense;
            bool flip = r.rhs < 0;
            flipped_[i] = flip;
            b_[i] = flip ? Rational(-r.rhs) : r.rhs;
            if (flip && sense != Sense::Equal) sense = sense == Sense::LessEq ? Sense::GreaterEq : Sense::LessEq;
            for (const auto& [var, coef] : r.coeffs) {
                if (var < 0 || var >= n_) throw InputError("lp: variable index out of range");
                if (coef.is_zero()) continue;
                cols_[var].emplace_back(i, flip ? Rational(-coef) : coef);
            }
            if (sense == Sense::LessEq) {
                basis_[i] = add_column({{i, Rational(1)}}, Kind::Slack);
            } else if (sense == Sense::GreaterEq) {
                add_column({{i, Rational(-1)}}, Kind::Slack);
            }
        }
        // Merge duplicate (row) entries within a structural column.
        for (auto& col : cols_) {
            std::vector<std::pair<int, Rational>> merged;
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& entry : col) {
                if (!merged.empty() && merged.back().first == entry.first)
                    merged.back().second += entry.second;
                else
                    merged.push_back(std::move(entry));
            }
            std::erase_if(merged, [](const auto& e) { return e.second.is_zero(); });
            col = std::move(merged);
        }
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < 0) basis_[i] = add_column({{i, Rational(1)}}, Kind::Artificial);

        binv_.assign(static_cast<std::size_t>(m_), std::vector<Rational>(static_cast<std::size_t>(m_)));
        for (int i = 0; i < m_; ++i) binv_[i][i] = 1;
        xb_ = b_;
        is_basic_.assign(cols_.size(), false);
        for (int v : basis_) is_basic_[v] = true;

        objective_.assign(cols_.size(), Rational(0));
        for (int j = 0; j < n_ && !p.objective.empty(); ++j) objective_[j] = p.objective[j];
    }

    Solution run()
    {
        Solution out;
        bool has_artificial = false;
        for (auto k : kinds_) has_artificial |= k == Kind::Artificial;
        if (has_artificial) {
            std::vector<Rational> phase1(cols_.size(), Rational(0));
            for (std::size_t j = 0; j < cols_.size(); ++j)
                if (kinds_[j] == Kind::Artificial) phase1[j] = -1;
            iterate(phase1, true);
            Rational infeas = 0;
            for (int i = 0; i < m_; ++i)
                if (kinds_[basis_[i]] == Kind::Artificial) infeas += xb_[i];
            out.pivots = pivots_;
            if (!infeas.is_zero()) {
                out.status = Status::Infeasible;
                return out;
            }
            drive_out_artificials();
        }
        if (!iterate(objective_, false)) {
            out.status = Status::Unbounded;
            out.pivots = pivots_;
            return out;
        }
        out.status = Status::Optimal;
        out.pivots = pivots_;
        out.x.assign(static_cast<std::size_t>(n_), Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) {
                out.x[basis_[i]] = xb_[i];
                out.basic_structural.push_back(basis_[i]);
            }
        std::sort(out.basic_structural.begin(), out.basic_structural.end());
        for (int j = 0; j < n_; ++j) out.value += objective_[j] * out.x[j];
        auto y = duals(objective_);
        out.duals.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) out.duals[i] = flipped_[i] ? Rational(-y[i]) : y[i];
        return out;
    }

private:
    enum class Kind
    {
        Structural,
        Slack,
        Artificial,
    };

    int add_column(std::vector<std::pair<int, Rational>> col, Kind kind)
    {
        cols_.push_back(std::move(col));
        kinds_.push_back(kind);
        return static_cast<int>(cols_.size()) - 1;
    }

    /// y = c_B B⁻¹.
    std::vector<Rational> duals(const std::vector<Rational>& cost) const
    {
        std::vector<Rational> y(static_cast<std::size_t>(m_), Rational(0));
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb.is_zero()) continue;
            for (int j = 0; j < m_; ++j)
                if (!binv_[i][j].is_zero()) y[j] += cb * binv_[i][j];
        }
        return y;
    }

    Rational reduced_cost(const std::vector<Rational>& cost, const std::vector<Rational>& y, int j) const
    {
        Rational r = cost[j], t;
        for (const auto& [row, a] : cols_[j]) muladd<true>(r, y[row], a, t);
        return r;
    }

    std::vector<Rational> column_in_basis(int j) const
    {
        std::vector<Rational> d(static_cast<std::size_t>(m_), Rational(0));
        Rational t;
        for (const auto& [row, a] : cols_[j])
            for (int i = 0; i < m_; ++i)
                if (!binv_[i][row].is_zero()) muladd<false>(d[i], binv_[i][row], a, t);
        return d;
    }

    void pivot(int leave_row, int enter, const std::vector<Rational>& d)
    {
        const Rational piv = d[leave_row];
        const Rational theta = xb_[leave_row] / piv;
        auto& prow = binv_[leave_row];
        std::vector<int> nz;
        for (int c = 0; c < m_; ++c)
            if (!prow[c].is_zero()) {
                prow[c] /= piv;
                nz.push_back(c);
            }
        Rational t;
        for (int i = 0; i < m_; ++i) {
            if (i == leave_row || d[i].is_zero()) continue;
            auto& row = binv_[i];
            for (int c : nz) muladd<true>(row[c], d[i], prow[c], t);
            t = theta;
            t *= d[i];
            xb_[i] -= t;
        }
        xb_[leave_row] = theta;
        is_basic_[basis_[leave_row]] = false;
        basis_[leave_row] = enter;
        is_basic_[enter] = true;
        ++pivots_;
    }

    /// Bland's rule iterations. Returns false on unboundedness.
    bool iterate(const std::vector<Rational>& cost, bool phase_one)
    {
        auto y = duals(cost);
        for (;;) {
            int enter = -1;
            Rational rc;
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                if (is_basic_[j]) continue;
                if (!phase_one && kinds_[j] == Kind::Artificial) continue;
                rc = reduced_cost(cost, y, static_cast<int>(j));
                if (rc > 0) {
                    enter = static_cast<int>(j);
                    break;
                }
            }
            if (enter < 0) return true;
            auto d = column_in_basis(enter);
            int leave = -1;
            Rational best;
            for (int i = 0; i < m_; ++i) {
                if (d[i] <= 0) continue;
                Rational ratio = xb_[i] / d[i];
                if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter, d);
            // y' = y + rc · (row `leave` of the new inverse)
            const auto& prow = binv_[leave];
            Rational t;
            for (int c = 0; c < m_; ++c)
                if (!prow[c].is_zero()) muladd<false>(y[c], rc, prow[c], t);
        }
    }

    /// After a feasible phase one, pivot zero-valued artificials out of the
    /// basis where some non-artificial column has a nonzero entry in their
    /// row; otherwise the row is redundant and the artificial stays at zero.
    void drive_out_artificials()
    {
        for (int i = 0; i < m_; ++i) {
            if (kinds_[basis_[i]] != Kind::Artificial) continue;
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                if (is_basic_[j] || kinds_[j] == Kind::Artificial) continue;
                Rational entry = 0;
                for (const auto& [row, a] : cols_[j]) entry += binv_[i][row] * a;
                if (entry.is_zero()) continue;
                pivot(i, static_cast<int>(j), column_in_basis(static_cast<int>(j)));
                break;
            }
        }
    }

    int n_;
    int m_;
    std::vector<std::vector<std::pair<int, Rational>>> cols_;
    std::vector<Kind> kinds_;
    std::vector<Rational> b_;
    std::vector<bool> flipped_;
    std::vector<int> basis_;
    std::vector<bool> is_basic_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<Rational> xb_;
    std::vector<Rational> objective_;
    std::size_t pivots_ = 0;
};

}  // namespace detail

inline Solution solve(const Problem& problem)
{
    detail::RevisedSimplex s(problem);
    return s.run();
}

}  // namespace rml::lp
