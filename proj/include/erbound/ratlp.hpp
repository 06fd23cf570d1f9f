#pragma once

// Exact rational linear programming.
//
//   minimize    sum_j c_j x_j
//   subject to  sum_j a_ij x_j + k_i >= 0   (or = 0)
//               x_j >= 0 for nonnegative columns
//
// The solver runs a revised primal simplex on the dual problem
//
//   maximize sum_i b_i y_i  (b_i = -k_i)
//   s.t.     sum_i a_ij y_i <= c_j (nonnegative j), = c_j (free j),
//            y_i >= 0 on inequality rows,
//
// whose constraint count is the number of primal columns. Primal values are
// recovered from the simplex multipliers. Every optimal answer is re-checked
// in exact arithmetic before it is returned.

#include "erbound/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace erb::lp {

class StructuralError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class Relation { greater_equal, equal };

struct Term {
    std::size_t column;
    Rational coeff;
};

struct Row {
    std::vector<Term> terms;
    Rational constant = 0;
    Relation relation = Relation::greater_equal;
};

struct Problem {
    std::vector<std::string> columns;
    std::vector<bool> nonneg;
    std::vector<Term> objective;
    std::vector<Row> rows;

    std::size_t add_column(std::string name, bool is_nonneg = true) {
        columns.push_back(std::move(name));
        nonneg.push_back(is_nonneg);
        return columns.size() - 1;
    }

    void validate() const {
        if (nonneg.size() != columns.size())
            throw StructuralError("nonnegativity flags do not match the column count");
        auto check_terms = [&](const std::vector<Term>& terms, const std::string& where) {
            std::vector<std::size_t> seen;
            for (const auto& t : terms) {
                if (t.column >= columns.size())
                    throw StructuralError(where + " references undeclared column " + std::to_string(t.column));
                seen.push_back(t.column);
            }
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
                throw StructuralError(where + " lists a column twice");
        };
        check_terms(objective, "objective");
        for (std::size_t i = 0; i < rows.size(); ++i) check_terms(rows[i].terms, "row " + std::to_string(i));
    }
};

enum class Status { optimal, unbounded, infeasible };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::unbounded: return "unbounded";
        case Status::infeasible: return "infeasible";
    }
    return "?";
}

struct Solution {
    Status status = Status::infeasible;
    Rational value = 0;
    std::vector<Rational> primal;  // feasible point when status != infeasible
    std::vector<Rational> duals;   // per row; only meaningful when optimal
    std::size_t iterations = 0;
};

// Stable text rendering, used to compare runs byte for byte.
inline std::string serialize(const Solution& s) {
    std::ostringstream out;
    out << to_string(s.status) << ' ' << s.value.get_str() << '\n';
    for (const auto& x : s.primal) out << x.get_str() << ' ';
    out << '\n';
    for (const auto& y : s.duals) out << y.get_str() << ' ';
    out << '\n';
    return out.str();
}

enum class PivotRule {
    bland,
    // Most negative reduced cost; switches to Bland for the rest of the run
    // after a streak of degenerate pivots, so termination is still guaranteed.
    dantzig_then_bland,
};

struct SolverOptions {
    PivotRule rule = PivotRule::bland;
    std::size_t degenerate_streak = 64;
    // Search for a starting basis in double precision first. The basis is
    // then inverted exactly and repaired to exact feasibility, so results
    // stay exact; only the pivot path differs.
    bool float_warm_start = true;
};

namespace detail {

struct SparseColumn {
    std::vector<std::pair<std::size_t, Rational>> entries;
};

// minimize cost.z  s.t.  M z = rhs, z >= 0, rhs >= 0.
struct StandardForm {
    std::size_t rows = 0;
    std::vector<SparseColumn> cols;
    std::vector<Rational> cost;
    std::vector<Rational> rhs;
    // A column that is the unit vector of the row, usable as a starting basis.
    std::vector<std::optional<std::size_t>> unit_column;
};

enum class StdStatus { optimal, unbounded, infeasible };

struct StdResult {
    StdStatus status = StdStatus::infeasible;
    std::vector<Rational> z;
    std::vector<Rational> pi;
    std::size_t iterations = 0;
};

// Double-precision revised simplex used only to propose bases.
class FloatSimplex {
  public:
    FloatSimplex(std::size_t m, const std::vector<SparseColumn>& cols, const std::vector<Rational>& rhs)
        : m_(m), cols_(cols.size()), rhs_(m) {
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [r, v] : cols[j].entries) cols_[j].emplace_back(r, v.get_d());
        // Small distinct perturbations keep the float pivots off degenerate vertices.
        for (std::size_t i = 0; i < m; ++i) rhs_[i] = rhs[i].get_d() + 1e-7 * (1.0 + static_cast<double>((i * 7919) % 1009) / 1009.0);
    }

    // Improves the basis for `cost` over the allowed columns. Returns false if
    // the numerics break down; the basis is left at the last good state.
    bool optimize(std::vector<std::size_t>& basis, const std::vector<Rational>& cost, const std::vector<bool>& barred,
                  std::size_t max_iterations) {
        std::vector<double> c(cost.size());
        for (std::size_t j = 0; j < cost.size(); ++j) c[j] = cost[j].get_d();
        if (!refactor(basis)) return false;
        std::vector<char> in_basis(cols_.size(), 0);
        for (auto b : basis) in_basis[b] = 1;
        std::size_t since_refactor = 0;
        std::size_t streak = 0;
        for (std::size_t it = 0; it < max_iterations; ++it) {
            std::vector<double> pi(m_, 0.0);
            for (std::size_t i = 0; i < m_; ++i) {
                double cb = c[basis[i]];
                if (cb == 0.0) continue;
                for (std::size_t r = 0; r < m_; ++r) pi[r] += cb * binv_[i * m_ + r];
            }
            // Partial pricing: the best candidate of the first window, scanned
            // from a rotating start, that has one. Bland order after a long
            // degenerate streak.
            bool bland = streak > 50;
            std::optional<std::size_t> q;
            double best = -tol;
            const std::size_t n = cols_.size();
            const std::size_t window = bland ? n : std::max<std::size_t>(1000, n / 16);
            std::size_t start = bland ? 0 : cursor_ % n;
            for (std::size_t scanned = 0; scanned < n; ++scanned) {
                std::size_t j = (start + scanned) % n;
                if (!in_basis[j] && !barred[j]) {
                    double d = c[j];
                    for (const auto& [r, v] : cols_[j]) d -= pi[r] * v;
                    if (d < best) {
                        q = j;
                        best = d;
                        if (bland) break;
                    }
                }
                if (q && (scanned + 1) % window == 0) {
                    cursor_ = j + 1;
                    break;
                }
            }
            if (!q) return true;
            std::vector<double> alpha(m_, 0.0);
            for (const auto& [r, v] : cols_[*q])
                for (std::size_t i = 0; i < m_; ++i) alpha[i] += binv_[i * m_ + r] * v;
            std::optional<std::size_t> leave;
            double best_ratio = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (alpha[i] <= pivot_tol) continue;
                double ratio = std::max(xb_[i], 0.0) / alpha[i];
                if (!leave || ratio < best_ratio - 1e-12 ||
                    (ratio <= best_ratio + 1e-12 && (bland ? basis[i] < basis[*leave] : alpha[i] > alpha[*leave]))) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (!leave) return true;  // unbounded direction; the exact phase decides
            std::size_t r = *leave;
            streak = best_ratio <= 1e-12 ? streak + 1 : 0;
            in_basis[basis[r]] = 0;
            basis[r] = *q;
            in_basis[*q] = 1;
            if (++since_refactor >= 64) {
                if (!refactor(basis)) return false;
                since_refactor = 0;
                continue;
            }
            double inv = 1.0 / alpha[r];
            for (std::size_t col = 0; col < m_; ++col) binv_[r * m_ + col] *= inv;
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == r || alpha[i] == 0.0) continue;
                double f = alpha[i];
                for (std::size_t col = 0; col < m_; ++col) binv_[i * m_ + col] -= f * binv_[r * m_ + col];
            }
            double theta = xb_[r] * inv;
            for (std::size_t i = 0; i < m_; ++i)
                if (i != r) xb_[i] -= theta * alpha[i];
            xb_[r] = theta;
        }
        return true;
    }

  private:
    static constexpr double tol = 1e-9;
    static constexpr double pivot_tol = 1e-9;

    // Gauss-Jordan inverse of the basis matrix with partial pivoting.
    bool refactor(const std::vector<std::size_t>& basis) {
        std::vector<double> a(m_ * m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            for (const auto& [r, v] : cols_[basis[i]]) a[r * m_ + i] = v;
        binv_.assign(m_ * m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
        for (std::size_t col = 0; col < m_; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < m_; ++r)
                if (std::abs(a[r * m_ + col]) > std::abs(a[piv * m_ + col])) piv = r;
            if (std::abs(a[piv * m_ + col]) < 1e-12) return false;
            if (piv != col)
                for (std::size_t k = 0; k < m_; ++k) {
                    std::swap(a[piv * m_ + k], a[col * m_ + k]);
                    std::swap(binv_[piv * m_ + k], binv_[col * m_ + k]);
                }
            double inv = 1.0 / a[col * m_ + col];
            for (std::size_t k = 0; k < m_; ++k) {
                a[col * m_ + k] *= inv;
                binv_[col * m_ + k] *= inv;
            }
            for (std::size_t r = 0; r < m_; ++r) {
                if (r == col) continue;
                double f = a[r * m_ + col];
                if (f == 0.0) continue;
                for (std::size_t k = 0; k < m_; ++k) {
                    a[r * m_ + k] -= f * a[col * m_ + k];
                    binv_[r * m_ + k] -= f * binv_[col * m_ + k];
                }
            }
        }
        xb_.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t r = 0; r < m_; ++r) xb_[i] += binv_[i * m_ + r] * rhs_[r];
        return true;
    }

    std::size_t m_;
    std::size_t cursor_ = 0;
    std::vector<std::vector<std::pair<std::size_t, double>>> cols_;
    std::vector<double> rhs_;
    std::vector<double> binv_;
    std::vector<double> xb_;
};

class RevisedSimplex {
  public:
    RevisedSimplex(const StandardForm& sf, const SolverOptions& opts) : opts_(opts), m_(sf.rows) {
        cols_ = sf.cols;
        original_cols_ = cols_.size();
        basis_.assign(m_, 0);
        in_basis_.assign(cols_.size(), -1);
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t col;
            if (sf.unit_column[i]) {
                col = *sf.unit_column[i];
            } else {
                col = cols_.size();
                cols_.push_back({{{i, Rational(1)}}});
                in_basis_.push_back(-1);
            }
            basis_[i] = col;
            in_basis_[col] = static_cast<long>(i);
        }
        barred_.assign(cols_.size(), false);
        for (const auto& c : cols_) {
            std::vector<std::pair<std::size_t, long long>> ints;
            bool ok = true;
            for (const auto& [r, v] : c.entries) {
                if (v.get_den() != 1 || !v.get_num().fits_slong_p() || abs(v.get_num()) > Integer(1) << 30) {
                    ok = false;
                    break;
                }
                ints.emplace_back(r, v.get_num().get_si());
            }
            int_cols_.push_back(ok ? std::optional(std::move(ints)) : std::nullopt);
        }
        binv_.assign(m_, std::vector<Rational>(m_));
        for (std::size_t i = 0; i < m_; ++i) binv_[i][i] = 1;
        xb_ = sf.rhs;
        rhs_ = sf.rhs;
        cost_ = sf.cost;
        cost_.resize(cols_.size(), 0);
    }

    StdResult run() {
        StdResult res;
        bool has_artificial = cols_.size() > original_cols_;
        if (has_artificial) {
            std::vector<Rational> phase1(cols_.size(), 0);
            for (std::size_t j = original_cols_; j < cols_.size(); ++j) phase1[j] = 1;
            if (auto fix = warm_start(phase1)) {
                phase1.resize(cols_.size(), 0);
                phase1[*fix] = 1;
            }
            iterate(phase1);
            Rational infeasibility = 0;
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] >= original_cols_) infeasibility += xb_[i];
            if (infeasibility > 0) {
                res.status = StdStatus::infeasible;
                res.iterations = iterations_;
                return res;
            }
            drive_out_artificials();
            for (std::size_t j = original_cols_; j < cols_.size(); ++j) barred_[j] = true;
        }
        if (auto fix = warm_start(cost_)) {
            std::vector<Rational> aux(cols_.size(), 0);
            aux[*fix] = 1;
            iterate(aux);
            if (in_basis_[*fix] >= 0 && xb_[in_basis_[*fix]] != 0)
                throw std::logic_error("basis repair left a positive artificial");
            drive_out_artificials();
            barred_[*fix] = true;
        }
        bool bounded = iterate(cost_);
        res.iterations = iterations_;
        res.status = bounded ? StdStatus::optimal : StdStatus::unbounded;
        res.z.assign(original_cols_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < original_cols_) res.z[basis_[i]] = xb_[i];
        res.pi = multipliers(cost_);
        return res;
    }

  private:
    // Lets the float solver move the basis, then adopts its proposal if the
    // exact inverse exists. The float optimum is for a perturbed rhs, so the
    // exact basic solution may be slightly negative; one artificial column
    // equal to minus the sum of the offending basic columns then enters at
    // the most negative row and restores feasibility. Returns that column.
    std::optional<std::size_t> warm_start(const std::vector<Rational>& cost) {
        if (!opts_.float_warm_start || m_ == 0) return std::nullopt;
        std::vector<std::size_t> proposal = basis_;
        FloatSimplex fs(m_, cols_, rhs_);
        if (!fs.optimize(proposal, cost, barred_, 50 * (m_ + cols_.size()))) return std::nullopt;
        if (proposal == basis_ || !adopt(proposal)) return std::nullopt;
        std::optional<std::size_t> worst;
        std::map<std::size_t, Rational> entries;
        for (std::size_t i = 0; i < m_; ++i) {
            if (xb_[i] >= 0) continue;
            if (!worst || xb_[i] < xb_[*worst]) worst = i;
            for (const auto& [r, v] : cols_[basis_[i]].entries) entries[r] -= v;
        }
        if (!worst) return std::nullopt;
        SparseColumn col;
        for (auto& [r, v] : entries)
            if (v != 0) col.entries.emplace_back(r, std::move(v));
        std::size_t q = cols_.size();
        cols_.push_back(std::move(col));
        in_basis_.push_back(-1);
        barred_.push_back(false);
        int_cols_.push_back(std::nullopt);
        cost_.push_back(0);
        pivot(*worst, q, ftran(q));
        return q;
    }

    bool adopt(const std::vector<std::size_t>& basis) {
        // Exact Gauss-Jordan on [B | I].
        std::vector<std::vector<Rational>> a(m_, std::vector<Rational>(m_));
        for (std::size_t i = 0; i < m_; ++i)
            for (const auto& [r, v] : cols_[basis[i]].entries) a[r][i] = v;
        std::vector<std::vector<Rational>> inv(m_, std::vector<Rational>(m_));
        for (std::size_t i = 0; i < m_; ++i) inv[i][i] = 1;
        for (std::size_t col = 0; col < m_; ++col) {
            std::size_t piv = col;
            while (piv < m_ && a[piv][col] == 0) ++piv;
            if (piv == m_) return false;
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            Rational f = 1 / a[col][col];
            for (std::size_t k = 0; k < m_; ++k) {
                if (a[col][k] != 0) a[col][k] *= f;
                if (inv[col][k] != 0) inv[col][k] *= f;
            }
            std::vector<std::size_t> nz_a, nz_inv;
            for (std::size_t k = 0; k < m_; ++k) {
                if (a[col][k] != 0) nz_a.push_back(k);
                if (inv[col][k] != 0) nz_inv.push_back(k);
            }
            for (std::size_t r = 0; r < m_; ++r) {
                if (r == col || a[r][col] == 0) continue;
                Rational g = a[r][col];
                for (std::size_t k : nz_a) a[r][k] -= g * a[col][k];
                for (std::size_t k : nz_inv) inv[r][k] -= g * inv[col][k];
            }
        }
        std::vector<Rational> xb(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t r = 0; r < m_; ++r)
                if (inv[i][r] != 0 && rhs_[r] != 0) xb[i] += inv[i][r] * rhs_[r];
        }
        for (std::size_t i = 0; i < m_; ++i) in_basis_[basis_[i]] = -1;
        basis_ = basis;
        for (std::size_t i = 0; i < m_; ++i) in_basis_[basis_[i]] = static_cast<long>(i);
        binv_ = std::move(inv);
        xb_ = std::move(xb);
        return true;
    }

    std::vector<Rational> multipliers(const std::vector<Rational>& cost) const {
        std::vector<Rational> pi(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t r = 0; r < m_; ++r)
                if (binv_[i][r] != 0) pi[r] += cb * binv_[i][r];
        }
        return pi;
    }

    Rational reduced_cost(std::size_t j, const std::vector<Rational>& cost, const std::vector<Rational>& pi) const {
        Rational d = cost[j];
        for (const auto& [r, v] : cols_[j].entries) d -= pi[r] * v;
        return d;
    }

    // Pricing in scaled integers: with pi = P / den, the sign of the reduced
    // cost of an integral column is the sign of cost*den - P.a, evaluated in
    // 128-bit arithmetic when every scaled multiplier fits in 64 bits.
    struct ScaledPi {
        bool small = false;
        Integer den;
        std::vector<long long> p;
    };

    ScaledPi scale(const std::vector<Rational>& pi) const {
        ScaledPi s;
        s.den = 1;
        for (const auto& v : pi) s.den = lcm(s.den, v.get_den());
        if (!s.den.fits_slong_p()) return s;
        s.p.resize(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            Integer v = pi[r].get_num() * (s.den / pi[r].get_den());
            if (!v.fits_slong_p()) return s;
            s.p[r] = v.get_si();
        }
        s.small = true;
        return s;
    }

    // Sign of the reduced cost of column j; falls back to exact rationals.
    int reduced_sign(std::size_t j, const std::vector<Rational>& cost, const std::vector<Rational>& pi,
                     const ScaledPi& sp, const std::vector<std::optional<long long>>& int_cost) const {
        if (sp.small && int_cols_[j] && int_cost[j]) {
            __int128 d = static_cast<__int128>(*int_cost[j]) * sp.den.get_si();
            for (const auto& [r, v] : (*int_cols_[j])) d -= static_cast<__int128>(sp.p[r]) * v;
            return d < 0 ? -1 : (d > 0 ? 1 : 0);
        }
        return sgn(reduced_cost(j, cost, pi));
    }

    std::vector<Rational> ftran(std::size_t q) const {
        std::vector<Rational> alpha(m_, 0);
        for (const auto& [r, v] : cols_[q].entries)
            for (std::size_t i = 0; i < m_; ++i)
                if (binv_[i][r] != 0) alpha[i] += binv_[i][r] * v;
        return alpha;
    }

    void pivot(std::size_t r, std::size_t q, const std::vector<Rational>& alpha) {
        Rational theta = xb_[r] / alpha[r];
        for (std::size_t i = 0; i < m_; ++i)
            if (i != r && alpha[i] != 0) xb_[i] -= theta * alpha[i];
        xb_[r] = theta;

        Rational inv = 1 / alpha[r];
        std::vector<std::size_t> nz;
        for (std::size_t c = 0; c < m_; ++c)
            if (binv_[r][c] != 0) {
                binv_[r][c] *= inv;
                nz.push_back(c);
            }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || alpha[i] == 0) continue;
            const Rational f = alpha[i];
            for (std::size_t c : nz) binv_[i][c] -= f * binv_[r][c];
        }
        in_basis_[basis_[r]] = -1;
        basis_[r] = q;
        in_basis_[q] = static_cast<long>(r);
        ++iterations_;
    }

    // Returns false when the objective is unbounded below.
    bool iterate(const std::vector<Rational>& cost) {
        std::vector<Rational> pi = multipliers(cost);
        bool use_bland = opts_.rule == PivotRule::bland;
        std::size_t streak = 0;
        std::vector<std::optional<long long>> int_cost(cost.size());
        for (std::size_t j = 0; j < cost.size(); ++j)
            if (cost[j].get_den() == 1 && abs(cost[j].get_num()) <= Integer(1) << 30) int_cost[j] = cost[j].get_num().get_si();
        for (;;) {
            std::optional<std::size_t> entering;
            Rational best = 0;
            ScaledPi sp = scale(pi);
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                if (in_basis_[j] >= 0 || barred_[j]) continue;
                if (reduced_sign(j, cost, pi, sp, int_cost) >= 0) continue;
                Rational d = reduced_cost(j, cost, pi);
                if (use_bland) {
                    entering = j;
                    best = d;
                    break;
                }
                if (!entering || d < best) {
                    entering = j;
                    best = d;
                }
            }
            if (!entering) return true;
            std::size_t q = *entering;
            std::vector<Rational> alpha = ftran(q);

            std::optional<std::size_t> leave;
            Rational best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (alpha[i] <= 0) continue;
                Rational ratio = xb_[i] / alpha[i];
                if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (!leave) return false;
            std::size_t r = *leave;
            bool degenerate = best_ratio == 0;
            pivot(r, q, alpha);
            // pi' = pi + d_q * (new row r of B^-1)
            for (std::size_t c = 0; c < m_; ++c)
                if (binv_[r][c] != 0) pi[c] += best * binv_[r][c];

            if (!use_bland) {
                streak = degenerate ? streak + 1 : 0;
                if (streak >= opts_.degenerate_streak) use_bland = true;
            }
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < original_cols_) continue;
            for (std::size_t j = 0; j < original_cols_; ++j) {
                if (in_basis_[j] >= 0) continue;
                Rational a = 0;
                for (const auto& [r, v] : cols_[j].entries) a += binv_[i][r] * v;
                if (a == 0) continue;
                pivot(i, j, ftran(j));
                break;
            }
            // Otherwise the row is redundant; its artificial stays basic at zero.
        }
    }

    SolverOptions opts_;
    std::size_t m_;
    std::size_t original_cols_ = 0;
    std::vector<SparseColumn> cols_;
    std::vector<Rational> cost_;
    std::vector<std::size_t> basis_;
    std::vector<long> in_basis_;
    std::vector<bool> barred_;
    std::vector<std::optional<std::vector<std::pair<std::size_t, long long>>>> int_cols_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<Rational> xb_;
    std::vector<Rational> rhs_;
    std::size_t iterations_ = 0;
};

struct DualForm {
    StandardForm sf;
    std::vector<std::size_t> y_plus;               // per primal row
    std::vector<std::optional<std::size_t>> y_minus;  // per equality row
    std::vector<bool> negated;                     // per primal column
};

inline DualForm build_dual(const Problem& p, bool zero_objective) {
    DualForm df;
    const std::size_t ncol = p.columns.size();
    std::vector<Rational> c(ncol, 0);
    if (!zero_objective)
        for (const auto& t : p.objective) c[t.column] = t.coeff;
    df.negated.assign(ncol, false);
    for (std::size_t j = 0; j < ncol; ++j) df.negated[j] = c[j] < 0;

    StandardForm& sf = df.sf;
    sf.rows = ncol;
    sf.rhs.resize(ncol);
    for (std::size_t j = 0; j < ncol; ++j) sf.rhs[j] = df.negated[j] ? Rational(-c[j]) : c[j];
    sf.unit_column.assign(ncol, std::nullopt);

    for (const auto& row : p.rows) {
        SparseColumn col;
        for (const auto& t : row.terms)
            if (t.coeff != 0) col.entries.emplace_back(t.column, df.negated[t.column] ? Rational(-t.coeff) : t.coeff);
        std::sort(col.entries.begin(), col.entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Rational b = -row.constant;
        df.y_plus.push_back(sf.cols.size());
        sf.cols.push_back(col);
        sf.cost.push_back(-b);
        if (row.relation == Relation::equal) {
            SparseColumn neg = col;
            for (auto& e : neg.entries) e.second = -e.second;
            df.y_minus.push_back(sf.cols.size());
            sf.cols.push_back(std::move(neg));
            sf.cost.push_back(b);
        } else {
            df.y_minus.push_back(std::nullopt);
        }
    }
    for (std::size_t j = 0; j < ncol; ++j) {
        if (!p.nonneg[j]) continue;
        std::size_t s = sf.cols.size();
        sf.cols.push_back({{{j, Rational(df.negated[j] ? -1 : 1)}}});
        sf.cost.push_back(0);
        if (!df.negated[j]) sf.unit_column[j] = s;
    }
    return df;
}

inline std::vector<Rational> recover_primal(const DualForm& df, const StdResult& r) {
    std::vector<Rational> x(df.negated.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = df.negated[j] ? r.pi[j] : Rational(-r.pi[j]);
    return x;
}

}  // namespace detail

inline Rational objective_value(const Problem& p, const std::vector<Rational>& x) {
    Rational v = 0;
    for (const auto& t : p.objective) v += t.coeff * x[t.column];
    return v;
}

inline bool check_primal(const Problem& p, const std::vector<Rational>& x) {
    if (x.size() != p.columns.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (p.nonneg[j] && x[j] < 0) return false;
    for (const auto& row : p.rows) {
        Rational lhs = row.constant;
        for (const auto& t : row.terms) lhs += t.coeff * x[t.column];
        if (row.relation == Relation::equal ? lhs != 0 : lhs < 0) return false;
    }
    return true;
}

// Exact strong-duality check of an optimal solution.
inline bool check_duals(const Problem& p, const Solution& s) {
    if (s.status != Status::optimal || s.duals.size() != p.rows.size()) return false;
    std::vector<Rational> reduced(p.columns.size(), 0);
    for (const auto& t : p.objective) reduced[t.column] += t.coeff;
    Rational dual_value = 0;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const Rational& y = s.duals[i];
        if (p.rows[i].relation == Relation::greater_equal && y < 0) return false;
        if (y == 0) continue;
        for (const auto& t : p.rows[i].terms) reduced[t.column] -= y * t.coeff;
        dual_value -= y * p.rows[i].constant;
    }
    for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (p.nonneg[j] ? reduced[j] < 0 : reduced[j] != 0) return false;
    }
    if (dual_value != s.value) return false;
    if (!s.primal.empty() && objective_value(p, s.primal) != s.value) return false;
    return true;
}

inline Solution solve(const Problem& p, const SolverOptions& opts = {}) {
    p.validate();
    Solution sol;
    detail::DualForm df = detail::build_dual(p, false);
    detail::StdResult r = detail::RevisedSimplex(df.sf, opts).run();
    sol.iterations = r.iterations;

    if (r.status == detail::StdStatus::unbounded) {
        sol.status = Status::infeasible;
        return sol;
    }
    if (r.status == detail::StdStatus::infeasible) {
        // With the dual infeasible, any feasible primal point proves unboundedness.
        std::vector<Rational> origin(p.columns.size(), 0);
        if (check_primal(p, origin)) {
            sol.status = Status::unbounded;
            sol.primal = std::move(origin);
            return sol;
        }
        detail::DualForm feas = detail::build_dual(p, true);
        detail::StdResult rf = detail::RevisedSimplex(feas.sf, opts).run();
        sol.iterations += rf.iterations;
        if (rf.status == detail::StdStatus::optimal) {
            sol.status = Status::unbounded;
            sol.primal = detail::recover_primal(feas, rf);
            if (!check_primal(p, sol.primal)) throw std::logic_error("ratlp: recovered point is not feasible");
        } else {
            sol.status = Status::infeasible;
        }
        return sol;
    }

    sol.status = Status::optimal;
    sol.primal = detail::recover_primal(df, r);
    sol.duals.resize(p.rows.size());
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        sol.duals[i] = r.z[df.y_plus[i]];
        if (df.y_minus[i]) sol.duals[i] -= r.z[*df.y_minus[i]];
    }
    sol.value = objective_value(p, sol.primal);
    if (!check_primal(p, sol.primal) || !check_duals(p, sol))
        throw std::logic_error("ratlp: optimality certificate failed exact re-check");
    return sol;
}

}  // namespace erb::lp
