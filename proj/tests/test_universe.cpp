#include "erbound/universe.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace erb;

namespace {

// Fixpoint of the three dependency rules, read directly off the variable
// roles rather than the precomputed masks.
VarSet closure_oracle(const Universe& u, VarSet a) {
    const auto& vars = u.vars();
    for (bool changed = true; changed;) {
        changed = false;
        auto add = [&](int v) {
            if (!a.contains(v)) {
                a.insert(v);
                changed = true;
            }
        };
        for (int v = 0; v < u.size(); ++v) {
            const Variable& x = vars[static_cast<std::size_t>(v)];
            if (x.role == VarRole::helper && a.contains(u.node_var(x.from))) add(v);
        }
        for (int j = 1; j <= u.n(); ++j) {
            bool all = true;
            for (int i = 1; i <= u.n(); ++i)
                if (i != j) all = all && a.contains(u.helper_var(i, j));
            if (all) add(u.node_var(j));
        }
        int nodes = 0;
        for (int i = 1; i <= u.n(); ++i) nodes += a.contains(u.node_var(i));
        if (nodes >= u.k() && a != u.full()) {
            a = u.full();
            changed = true;
        }
    }
    return a;
}

VarSet random_set(const Universe& u, std::mt19937_64& rng, double density) {
    std::bernoulli_distribution coin(density);
    VarSet s;
    for (int v = 0; v < u.size(); ++v)
        if (coin(rng)) s.insert(v);
    return s;
}

VarSet tokens(const Universe& u, std::initializer_list<const char*> toks) {
    std::vector<std::string> v(toks.begin(), toks.end());
    return u.parse_tokens(v);
}

std::vector<Universe> universes() {
    return {Universe::build(3, 2), Universe::build(4, 2), Universe::build(4, 3), Universe::build(5, 3), Universe::build(5, 4)};
}

}  // namespace

TEST(UniverseBuild, VariableCountsAndOrder) {
    EXPECT_EQ(Universe::build(5, 4).size(), 25);
    EXPECT_EQ(Universe::build(4, 3).size(), 16);
    EXPECT_EQ(Universe::build(3, 2).size(), 9);
    Universe u = Universe::build(5, 4);
    EXPECT_EQ(u.token(0), "W1");
    EXPECT_EQ(u.token(4), "W5");
    EXPECT_EQ(u.token(5), "S1->2");
    EXPECT_EQ(u.token(8), "S1->5");
    EXPECT_EQ(u.token(9), "S2->1");
    EXPECT_EQ(u.token(24), "S5->4");
    EXPECT_EQ(u.d(), 4);
}

TEST(UniverseBuild, RejectsUnsupportedParameters) {
    EXPECT_THROW(Universe::build(2, 1), UnsupportedConfiguration);
    EXPECT_THROW(Universe::build(5, 5), UnsupportedConfiguration);
    EXPECT_THROW(Universe::build(5, 1), UnsupportedConfiguration);
    EXPECT_THROW(Universe::build(5, 4, 3), UnsupportedConfiguration);
    EXPECT_THROW(Universe::build(7, 4), UnsupportedConfiguration);
    EXPECT_NO_THROW(Universe::build(5, 4, 4));
}

TEST(UniverseTokens, RoundTripAndErrors) {
    Universe u = Universe::build(5, 4);
    for (int v = 0; v < u.size(); ++v) EXPECT_EQ(u.parse_token(u.token(v)), v);
    EXPECT_THROW(u.parse_token("W6"), std::invalid_argument);
    EXPECT_THROW(u.parse_token("S1->1"), std::invalid_argument);
    EXPECT_THROW(u.parse_token("X1"), std::invalid_argument);
    EXPECT_THROW(u.parse_token("S1-2"), std::invalid_argument);
    VarSet s = tokens(u, {"S5->4", "W1"});
    std::vector<std::string> sorted{"W1", "S5->4"};
    EXPECT_EQ(u.tokens(s), sorted);
}

TEST(Closure, WorkedExamples) {
    Universe u = Universe::build(5, 4);
    EXPECT_EQ(u.closure(tokens(u, {"W1"})), tokens(u, {"W1", "S1->2", "S1->3", "S1->4", "S1->5"}));
    EXPECT_EQ(u.closure(tokens(u, {"S1->5", "S2->5", "S3->5", "S4->5"})),
              tokens(u, {"S1->5", "S2->5", "S3->5", "S4->5", "W5", "S5->1", "S5->2", "S5->3", "S5->4"}));
    EXPECT_EQ(u.closure(tokens(u, {"W1", "W2", "W3", "W4"})), u.full());
}

TEST(Closure, MatchesFixpointOracleExhaustivelyForSmallUniverse) {
    Universe u = Universe::build(3, 2);
    for (VarSet::bits_type b = 0; b < (VarSet::bits_type{1} << u.size()); ++b)
        ASSERT_EQ(u.closure(VarSet(b)), closure_oracle(u, VarSet(b))) << b;
}

TEST(Closure, MatchesFixpointOracleOnRandomSets) {
    std::mt19937_64 rng(11);
    for (const auto& u : universes())
        for (int t = 0; t < 2000; ++t) {
            VarSet a = random_set(u, rng, t % 2 ? 0.15 : 0.4);
            ASSERT_EQ(u.closure(a), closure_oracle(u, a));
        }
}

TEST(Closure, ExtensiveMonotoneIdempotent) {
    std::mt19937_64 rng(12);
    for (const auto& u : universes())
        for (int t = 0; t < 1000; ++t) {
            VarSet a = random_set(u, rng, 0.2);
            VarSet b = a | random_set(u, rng, 0.1);
            VarSet ca = u.closure(a);
            EXPECT_TRUE(a.is_subset_of(ca));
            EXPECT_EQ(u.closure(ca), ca);
            EXPECT_TRUE(ca.is_subset_of(u.closure(b)));
            EXPECT_TRUE(u.is_closed(ca));
        }
}

TEST(Spanning, Examples) {
    Universe u = Universe::build(5, 4);
    EXPECT_TRUE(u.is_spanning(tokens(u, {"W1", "W2", "W3", "W4"})));
    EXPECT_FALSE(u.is_spanning(tokens(u, {"W1", "W2", "W3"})));
    EXPECT_TRUE(u.is_spanning(tokens(u, {"W1", "W2", "W3", "S5->4"})));
    EXPECT_EQ(closure_oracle(u, tokens(u, {"W1", "W2", "W3", "S5->4"})), u.full());
}

TEST(Spanning, MonotoneAndEquivalentToNodeCount) {
    std::mt19937_64 rng(13);
    for (const auto& u : universes())
        for (int t = 0; t < 1000; ++t) {
            VarSet a = random_set(u, rng, 0.3);
            VarSet b = a | random_set(u, rng, 0.2);
            if (u.is_spanning(a)) {
                EXPECT_TRUE(u.is_spanning(b));
            }
            EXPECT_EQ(u.is_spanning(a), (u.closure(a) & u.nodes()).size() >= u.k());
        }
}

TEST(Canon, Examples) {
    Universe u = Universe::build(5, 4);
    EXPECT_EQ(u.canon(tokens(u, {"W2"})), u.canon(tokens(u, {"W1"})));
    EXPECT_EQ(u.canon(tokens(u, {"S5->2", "W2"})), u.canon(tokens(u, {"S1->3", "W3"})));
    EXPECT_NE(u.canon(tokens(u, {"W1"})), u.canon(tokens(u, {"S1->2"})));
}

TEST(Canon, OrbitInvarianceExhaustiveOverPermutations) {
    std::mt19937_64 rng(14);
    for (const auto& u : universes()) {
        for (int t = 0; t < 60; ++t) {
            VarSet a = random_set(u, rng, 0.2);
            EntropyClass c = u.canon(a);
            EXPECT_EQ(c.rep, u.closure(c.rep));
            EXPECT_EQ(u.canon(u.closure(a)), c);
            for (const auto& pi : u.permutations()) ASSERT_EQ(u.canon(u.apply(pi, a)), c);
        }
    }
}

TEST(Canon, RepresentativeIsLeastOrbitElement) {
    std::mt19937_64 rng(15);
    Universe u = Universe::build(4, 3);
    for (int t = 0; t < 300; ++t) {
        VarSet c = u.closure(random_set(u, rng, 0.2));
        if (c == u.full() || c.empty()) continue;
        VarSet least = c;
        for (const auto& pi : u.permutations()) least = std::min(least, u.apply(pi, c));
        EXPECT_EQ(u.canon(c).rep, least);
    }
}

TEST(Canon, SameClassImpliesRelabeling) {
    std::mt19937_64 rng(16);
    for (const auto& u : universes()) {
        for (int t = 0; t < 200; ++t) {
            VarSet a = random_set(u, rng, 0.15);
            const auto& perms = u.permutations();
            VarSet b = u.apply(perms[static_cast<std::size_t>(t) % perms.size()], random_set(u, rng, 0.01) | a);
            if (u.canon(a) != u.canon(b)) continue;
            bool found = false;
            for (const auto& pi : perms) found = found || u.apply(pi, u.closure(a)) == u.closure(b);
            EXPECT_TRUE(found);
        }
    }
}

TEST(Permutation, GroupAction) {
    std::mt19937_64 rng(17);
    Universe u = Universe::build(5, 4);
    const auto& perms = u.permutations();
    EXPECT_EQ(perms.size(), 120u);
    for (int t = 0; t < 200; ++t) {
        const auto& p = perms[rng() % perms.size()];
        const auto& q = perms[rng() % perms.size()];
        VarSet a = random_set(u, rng, 0.3);
        EXPECT_EQ(u.apply(p.inverse(), u.apply(p, a)), a);
        std::vector<int> comp(5);
        for (int i = 1; i <= 5; ++i) comp[static_cast<std::size_t>(i - 1)] = p(q(i));
        EXPECT_EQ(u.apply(NodePermutation(comp), a), u.apply(p, u.apply(q, a)));
        // Relabeling commutes with closure.
        EXPECT_EQ(u.closure(u.apply(p, a)), u.apply(p, u.closure(a)));
    }
    EXPECT_THROW(NodePermutation({1, 1, 2}), std::invalid_argument);
}

TEST(Reduce, MinimalGeneratorWithSameClosure) {
    std::mt19937_64 rng(18);
    Universe u = Universe::build(5, 4);
    for (int t = 0; t < 300; ++t) {
        VarSet a = random_set(u, rng, 0.2);
        VarSet r = u.reduce(a);
        EXPECT_EQ(u.closure(r), u.closure(a));
        for (int v : r.indices()) {
            VarSet smaller = r;
            smaller.erase(v);
            EXPECT_NE(u.closure(smaller), u.closure(a));
        }
    }
}
