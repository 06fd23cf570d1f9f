#include "erbound/ratlp.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <optional>
#include <random>

using namespace erb;
using namespace erb::lp;

namespace {

// Constraint a.x + k >= 0 in dense form.
struct Dense {
    std::vector<Rational> a;
    Rational k;
};

// Solves the square system a_i.x = -k_i exactly; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<Dense> sys) {
    const std::size_t n = sys.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sys[p].a[c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(sys[p], sys[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sys[r].a[c] == 0) continue;
            Rational f = sys[r].a[c] / sys[c].a[c];
            for (std::size_t j = 0; j < n; ++j) sys[r].a[j] -= f * sys[c].a[j];
            sys[r].k -= f * sys[c].k;
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -sys[i].k / sys[i].a[i];
    return x;
}

// Minimum over all basic feasible points of a bounded problem; nullopt if
// no vertex is feasible.
std::optional<Rational> vertex_oracle(const std::vector<Dense>& cons, const std::vector<Rational>& c) {
    const std::size_t n = c.size(), m = cons.size();
    std::optional<Rational> best;
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
        if (depth == n) {
            std::vector<Dense> sys;
            for (auto i : pick) sys.push_back(cons[i]);
            auto x = solve_square(sys);
            if (!x) return;
            for (const auto& con : cons) {
                Rational v = con.k;
                for (std::size_t j = 0; j < n; ++j) v += con.a[j] * (*x)[j];
                if (v < 0) return;
            }
            Rational obj = 0;
            for (std::size_t j = 0; j < n; ++j) obj += c[j] * (*x)[j];
            if (!best || obj < *best) best = obj;
            return;
        }
        for (std::size_t i = from; i + (n - depth) <= m; ++i) {
            pick[depth] = i;
            rec(depth + 1, i + 1);
        }
    };
    rec(0, 0);
    return best;
}

struct RandomLp {
    Problem problem;
    std::vector<Dense> all;  // rows plus bounds, for the oracle
    std::vector<Rational> cost;
};

RandomLp random_lp(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ncols(1, 6), nrows(1, 8), coeff(-5, 5), konst(-10, 10);
    RandomLp out;
    const int n = ncols(rng), m = nrows(rng);
    for (int j = 0; j < n; ++j) out.problem.add_column("x" + std::to_string(j));
    for (int i = 0; i < m; ++i) {
        Row row;
        Dense d{std::vector<Rational>(static_cast<std::size_t>(n)), Rational(konst(rng))};
        for (int j = 0; j < n; ++j) {
            int a = coeff(rng);
            d.a[static_cast<std::size_t>(j)] = a;
            if (a != 0) row.terms.push_back({static_cast<std::size_t>(j), Rational(a)});
        }
        row.constant = d.k;
        out.problem.rows.push_back(row);
        out.all.push_back(d);
    }
    // Box 0 <= x_j <= 10 keeps every instance bounded.
    for (int j = 0; j < n; ++j) {
        Row box;
        box.terms.push_back({static_cast<std::size_t>(j), Rational(-1)});
        box.constant = 10;
        out.problem.rows.push_back(box);
        Dense up{std::vector<Rational>(static_cast<std::size_t>(n)), Rational(10)};
        up.a[static_cast<std::size_t>(j)] = -1;
        out.all.push_back(up);
        Dense lo{std::vector<Rational>(static_cast<std::size_t>(n)), Rational(0)};
        lo.a[static_cast<std::size_t>(j)] = 1;
        out.all.push_back(lo);
    }
    for (int j = 0; j < n; ++j) {
        int c = coeff(rng);
        out.cost.push_back(c);
        if (c != 0) out.problem.objective.push_back({static_cast<std::size_t>(j), Rational(c)});
    }
    return out;
}

}  // namespace

TEST(RandomLps, MatchVertexEnumerationOracle) {
    std::mt19937_64 rng(31);
    int optimal = 0, infeasible = 0;
    for (int t = 0; t < 100; ++t) {
        RandomLp lp = random_lp(rng);
        std::optional<Rational> oracle = vertex_oracle(lp.all, lp.cost);
        Solution s = solve(lp.problem);
        if (!oracle) {
            EXPECT_EQ(s.status, Status::infeasible) << "instance " << t;
            ++infeasible;
            continue;
        }
        ++optimal;
        ASSERT_EQ(s.status, Status::optimal) << "instance " << t;
        EXPECT_EQ(s.value, *oracle) << "instance " << t;
        EXPECT_TRUE(check_primal(lp.problem, s.primal));
        EXPECT_TRUE(check_duals(lp.problem, s));
    }
    EXPECT_GT(optimal, 20);
    EXPECT_GT(infeasible, 5);
}

TEST(RandomLps, PivotRulesAndWarmStartAgree) {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 60; ++t) {
        RandomLp lp = random_lp(rng);
        Solution base = solve(lp.problem);
        for (PivotRule rule : {PivotRule::bland, PivotRule::dantzig_then_bland})
            for (bool warm : {false, true}) {
                SolverOptions o;
                o.rule = rule;
                o.float_warm_start = warm;
                Solution s = solve(lp.problem, o);
                ASSERT_EQ(s.status, base.status);
                if (s.status == Status::optimal) {
                    EXPECT_EQ(s.value, base.value);
                    EXPECT_TRUE(check_duals(lp.problem, s));
                }
            }
    }
}

TEST(RandomLps, Deterministic) {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 30; ++t) {
        RandomLp lp = random_lp(rng);
        EXPECT_EQ(serialize(solve(lp.problem)), serialize(solve(lp.problem)));
    }
}

TEST(SmallLps, OptimalWithRationalValue) {
    // min x + y  s.t.  2x + y >= 1, x + 3y >= 1  -> (2/5, 1/5), value 3/5.
    Problem p;
    p.add_column("x");
    p.add_column("y");
    p.rows.push_back({{{0, 2}, {1, 1}}, -1, Relation::greater_equal});
    p.rows.push_back({{{0, 1}, {1, 3}}, -1, Relation::greater_equal});
    p.objective = {{0, 1}, {1, 1}};
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::optimal);
    EXPECT_EQ(s.value, Rational(3, 5));
    EXPECT_EQ(s.primal[0], Rational(2, 5));
    EXPECT_EQ(s.primal[1], Rational(1, 5));
    EXPECT_EQ(s.duals[0], Rational(2, 5));
    EXPECT_EQ(s.duals[1], Rational(1, 5));
}

TEST(SmallLps, UnboundedAndInfeasible) {
    Problem unb;
    unb.add_column("x", false);
    unb.objective = {{0, 1}};
    unb.rows.push_back({{{0, -1}}, 4, Relation::greater_equal});  // x <= 4
    Solution s = solve(unb);
    EXPECT_EQ(s.status, Status::unbounded);
    EXPECT_TRUE(check_primal(unb, s.primal));

    Problem inf;
    inf.add_column("x");
    inf.rows.push_back({{{0, 1}}, -2, Relation::greater_equal});  // x >= 2
    inf.rows.push_back({{{0, -1}}, 1, Relation::greater_equal});  // x <= 1
    inf.objective = {{0, 1}};
    EXPECT_EQ(solve(inf).status, Status::infeasible);
}

TEST(SmallLps, EqualityRowsAndFreeColumns) {
    // min x - y  s.t. x + y = 3, x - y >= -1, y free, x >= 0 -> x = 1, y = 2.
    Problem p;
    p.add_column("x");
    p.add_column("y", false);
    p.rows.push_back({{{0, 1}, {1, 1}}, -3, Relation::equal});
    p.rows.push_back({{{0, 1}, {1, -1}}, 1, Relation::greater_equal});
    p.objective = {{0, 1}, {1, -1}};
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::optimal);
    EXPECT_EQ(s.value, -1);
    EXPECT_TRUE(check_duals(p, s));
}

TEST(SmallLps, DegenerateVertex) {
    // Three constraints through the optimum (1, 1).
    Problem p;
    p.add_column("x");
    p.add_column("y");
    p.rows.push_back({{{0, 1}}, -1, Relation::greater_equal});
    p.rows.push_back({{{1, 1}}, -1, Relation::greater_equal});
    p.rows.push_back({{{0, 1}, {1, 1}}, -2, Relation::greater_equal});
    p.objective = {{0, 1}, {1, 1}};
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::optimal);
    EXPECT_EQ(s.value, 2);
    EXPECT_TRUE(check_duals(p, s));
}

TEST(Validation, RejectsMalformedProblems) {
    Problem p;
    p.add_column("x");
    p.rows.push_back({{{3, 1}}, 0, Relation::greater_equal});
    EXPECT_THROW(solve(p), StructuralError);
    Problem q;
    q.add_column("x");
    q.objective = {{0, 1}, {0, 2}};
    EXPECT_THROW(solve(q), StructuralError);
}

TEST(DualCheck, RejectsWrongMultipliers) {
    Problem p;
    p.add_column("x");
    p.rows.push_back({{{0, 1}}, -1, Relation::greater_equal});
    p.objective = {{0, 1}};
    Solution s = solve(p);
    ASSERT_TRUE(check_duals(p, s));
    Solution bad = s;
    bad.duals[0] = Rational(1, 2);
    EXPECT_FALSE(check_duals(p, bad));
    bad.duals[0] = -1;
    EXPECT_FALSE(check_duals(p, bad));
}
