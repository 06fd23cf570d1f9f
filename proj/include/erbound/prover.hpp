#pragma once

// Outer-bound discovery: minimize c_alpha*alpha + c_beta*beta over the
// family-restricted symmetric Shannon cone with B = 1, then turn the dual
// multipliers into an integer tabulated certificate.

#include "erbound/certificate.hpp"
#include "erbound/cone.hpp"
#include "erbound/family.hpp"
#include "erbound/ratlp.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace erb {

struct Direction {
    Rational alpha;
    Rational beta;
};

struct BoundLP {
    lp::Problem problem;
    std::vector<Column> columns;      // LP column -> model column
    std::vector<Constraint> sources;  // LP row -> generating constraint (B kept symbolic)
};

inline void check_direction(const Direction& dir) {
    if (dir.alpha < 0 || dir.beta < 0) throw std::invalid_argument("direction components must be nonnegative");
    if (dir.alpha == 0 && dir.beta == 0) throw std::invalid_argument("direction must not be zero");
}

inline BoundLP build_lp(const SubsetFamily& fam, const Direction& dir) {
    check_direction(dir);
    if (fam.empty()) throw std::invalid_argument("subset family is empty");
    const Universe& u = fam.universe();

    BoundLP out;
    std::map<Column, std::size_t> index;
    auto add_col = [&](const Column& c) {
        index.emplace(c, out.columns.size());
        out.columns.push_back(c);
        out.problem.add_column(column_name(u, c));
    };
    add_col(Column::alpha());
    add_col(Column::beta());
    for (const auto& m : fam.members()) add_col(Column::entropy(m.cls));

    ConstraintSet cone = shannon_cone(fam);
    for (auto& c : cone.rows) {
        lp::Row row;
        for (const auto& [col, q] : c.expr.coeffs()) {
            if (col.kind == ColumnKind::big_b)
                row.constant += q;
            else
                row.terms.push_back({index.at(col), q});
        }
        out.problem.rows.push_back(std::move(row));
        out.sources.push_back(std::move(c));
    }
    if (dir.alpha != 0) out.problem.objective.push_back({0, dir.alpha});
    if (dir.beta != 0) out.problem.objective.push_back({1, dir.beta});
    return out;
}

struct ProvedBound {
    Direction direction;
    Rational value;
    Certificate certificate;
    std::size_t lp_rows = 0;
    std::size_t lp_columns = 0;
    std::size_t iterations = 0;
};

class ProverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Integer multiples of model rows whose sum is the target.
struct IntegerCombination {
    std::vector<Integer> multipliers;
    std::vector<LinExpr> rows;
};

inline IntegerCombination integerize(const std::vector<Rational>& multipliers, const std::vector<LinExpr>& rows) {
    Integer den = 1;
    for (const auto& m : multipliers) den = lcm(den, m.get_den());
    Integer g = 0;
    std::vector<Integer> scaled;
    for (const auto& m : multipliers) {
        Integer v = m.get_num() * (den / m.get_den());
        scaled.push_back(v);
        g = gcd(g, v);
    }
    IntegerCombination out;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        out.multipliers.push_back(g == 0 ? scaled[i] : Integer(scaled[i] / g));
        out.rows.push_back(rows[i]);
    }
    return out;
}

}  // namespace detail

// Builds a certificate whose rows are integer multiples of the given model
// rows. Terms are numbered in order of first use, alpha/beta/B included.
inline Certificate make_certificate(const Universe& u, const detail::IntegerCombination& comb, std::string title) {
    Certificate cert;
    cert.problem = {u.n(), u.k(), u.d()};
    cert.meta.title = std::move(title);
    cert.meta.source = "erbound solve";

    std::map<Column, std::string> ids;
    int next = 1;
    auto id_of = [&](const Column& c) -> std::string {
        auto it = ids.find(c);
        if (it != ids.end()) return it->second;
        std::string id = "T" + std::to_string(next++);
        ids.emplace(c, id);
        switch (c.kind) {
            case ColumnKind::alpha: cert.meta.reserved["alpha"] = id; break;
            case ColumnKind::beta: cert.meta.reserved["beta"] = id; break;
            case ColumnKind::big_b: cert.meta.reserved["B"] = id; break;
            case ColumnKind::entropy: cert.terms.push_back({id, u.reduce(c.set)}); break;
        }
        return id;
    };
    auto key_of = [&](const Column& c) -> std::string {
        std::string id = id_of(c);
        switch (c.kind) {
            case ColumnKind::alpha: return "alpha";
            case ColumnKind::beta: return "beta";
            case ColumnKind::big_b: return "B";
            case ColumnKind::entropy: break;
        }
        return id;
    };

    for (std::size_t i = 0; i < comb.rows.size(); ++i) {
        if (comb.multipliers[i] == 0) continue;
        CoeffRow row;
        for (const auto& [c, q] : comb.rows[i].coeffs()) {
            Rational v = q * Rational(comb.multipliers[i]);
            if (v.get_den() != 1) throw ProverError("certificate row is not integral");
            row[key_of(c)] = to_int64(v.get_num());
        }
        cert.rows.push_back(std::move(row));
    }
    for (const auto& row : cert.rows)
        for (const auto& [key, q] : row) cert.target[key] += q;
    std::erase_if(cert.target, [](const auto& e) { return e.second == 0; });
    return cert;
}

struct ProveOptions {
    lp::SolverOptions lp;
    // Re-solve with every inequality relaxed by a small epsilon: for small
    // enough epsilon the new duals are optimal for the original LP and have
    // least total weight, which gives short certificates with small
    // integers. Each candidate epsilon is accepted only if the dual value
    // equals the optimum exactly.
    bool sparsify = true;
    std::vector<Rational> epsilons{Rational(1, 1000), Rational(1, 1000000)};
};

namespace detail {

inline Rational dual_value(const lp::Problem& p, const std::vector<Rational>& duals) {
    Rational v = 0;
    for (std::size_t i = 0; i < duals.size(); ++i) v -= duals[i] * p.rows[i].constant;
    return v;
}

// Duals of the relaxed problem, if they certify the same optimum.
inline std::optional<std::vector<Rational>> sparse_duals(const lp::Problem& p, const Rational& optimum,
                                                         const ProveOptions& opts) {
    for (const auto& eps : opts.epsilons) {
        lp::Problem relaxed = p;
        for (auto& r : relaxed.rows)
            if (r.relation == lp::Relation::greater_equal) r.constant += eps;
        lp::Solution s = lp::solve(relaxed, opts.lp);
        if (s.status != lp::Status::optimal) continue;
        lp::Solution check;
        check.status = lp::Status::optimal;
        check.value = optimum;
        check.duals = s.duals;
        if (dual_value(p, s.duals) == optimum && lp::check_duals(p, check)) return s.duals;
    }
    return std::nullopt;
}

}  // namespace detail

inline ProvedBound prove(const SubsetFamily& fam, const Direction& dir, const ProveOptions& opts = {}) {
    const Universe& u = fam.universe();
    BoundLP blp = build_lp(fam, dir);
    lp::Solution sol = lp::solve(blp.problem, opts.lp);
    if (sol.status != lp::Status::optimal)
        throw ProverError(std::string("bound LP is ") + lp::to_string(sol.status));
    if (opts.sparsify)
        if (auto duals = detail::sparse_duals(blp.problem, sol.value, opts)) sol.duals = std::move(*duals);

    std::vector<Rational> mult;
    std::vector<LinExpr> rows;
    LinExpr combined;
    for (std::size_t i = 0; i < sol.duals.size(); ++i) {
        if (sol.duals[i] == 0) continue;
        mult.push_back(sol.duals[i]);
        rows.push_back(blp.sources[i].expr);
        combined += sol.duals[i] * blp.sources[i].expr;
    }
    // Dual slack on a column shows up as a coefficient below the objective's;
    // it is closed with an explicit nonnegativity row for that column.
    auto objective_coeff = [&](const Column& c) -> Rational {
        if (c.kind == ColumnKind::alpha) return dir.alpha;
        if (c.kind == ColumnKind::beta) return dir.beta;
        return 0;
    };
    for (const Column& c : blp.columns) {
        Rational residual = objective_coeff(c) - combined.coeff(c);
        if (residual < 0) throw ProverError("dual combination exceeds the objective");
        if (residual == 0) continue;
        LinExpr unit;
        unit.add(c, 1);
        mult.push_back(residual);
        rows.push_back(std::move(unit));
    }

    ProvedBound out;
    out.direction = dir;
    out.value = sol.value;
    out.lp_rows = blp.problem.rows.size();
    out.lp_columns = blp.problem.columns.size();
    out.iterations = sol.iterations;
    out.certificate = make_certificate(u, detail::integerize(mult, rows), "");
    BoundMeaning meaning = BoundMeaning::from(dir.alpha, dir.beta, sol.value);
    out.certificate.meta.title = "Outer bound " + meaning.to_string() + " for (" + std::to_string(u.n()) + "," +
                                 std::to_string(u.k()) + "," + std::to_string(u.d()) + ") exact-repair codes";
    return out;
}

// One proved bound per direction, in input order.
inline std::vector<ProvedBound> sweep(const SubsetFamily& fam, const std::vector<Direction>& dirs,
                                      const ProveOptions& opts = {}) {
    if (dirs.empty()) throw std::invalid_argument("direction list is empty");
    std::vector<ProvedBound> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) out.push_back(prove(fam, d, opts));
    return out;
}

// Supporting lines of a sweep with proportional duplicates removed.
inline std::vector<BoundMeaning> distinct_lines(const std::vector<ProvedBound>& bounds) {
    std::vector<BoundMeaning> out;
    for (const auto& b : bounds) {
        BoundMeaning m = BoundMeaning::from(b.direction.alpha, b.direction.beta, b.value);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
}

}  // namespace erb
