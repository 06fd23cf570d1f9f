#include "erbound/erbound.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace erb;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(ERBOUND_DATA_DIR) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Certificate load(const std::string& name) { return parse_certificate(slurp(name)); }

const char* tiny = R"({
  "problem": {"n":5,"k":4,"d":4},
  "terms": [{"id":"T2","vars":["W1"]}],
  "rows": [{"coeffs":{"alpha":4,"T2":-4}}, {"coeffs":{"T2":4,"B":-1}}],
  "target": {"coeffs":{"alpha":4,"B":-1}},
  "meta": {"reserved":{"alpha":"T1","B":"T3"}}
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
    auto p = s.find(from);
    if (p == std::string::npos) throw std::logic_error("pattern not found: " + from);
    return s.replace(p, from.size(), to);
}

}  // namespace

TEST(Parse, ReadsTermsRowsAndMeta) {
    Certificate c = parse_certificate(tiny);
    EXPECT_EQ(c.problem, (ProblemId{5, 4, 4}));
    ASSERT_EQ(c.terms.size(), 1u);
    EXPECT_EQ(c.terms[0].id, "T2");
    ASSERT_EQ(c.rows.size(), 2u);
    EXPECT_EQ(c.rows[1].at("T2"), 4);
    EXPECT_EQ(c.meta.reserved.at("alpha"), "T1");
}

TEST(Parse, RejectsMalformedInput) {
    std::string t = tiny;
    auto rejects = [](const std::string& text, const std::string& needle) {
        try {
            parse_certificate(text);
            ADD_FAILURE() << "accepted: " << needle;
        } catch (const CertificateError& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    rejects(replace(t, R"("T2":4)", R"("T99":4)"), "undeclared column 'T99'");
    rejects(replace(t, R"([{"id":"T2","vars":["W1"]}])", R"([{"id":"T2","vars":["W1"]},{"id":"T2","vars":["W2"]}])"),
            "duplicate term id");
    rejects(replace(t, R"("T2":4)", R"("T2":4.5)"), "non-integer coefficient");
    rejects(replace(t, R"("T2":4)", R"("T2":"4")"), "non-integer coefficient");
    rejects(replace(t, R"("meta")", R"("extra": 1, "meta")"), "unknown field 'extra'");
    rejects(replace(t, R"("vars":["W1"])", R"("vars":["W9"])"), "W9");
    rejects(replace(t, R"("id":"T2")", R"("id":"X2")"), "malformed term id");
    rejects(replace(t, R"("alpha":"T1")", R"("alpha":"T2")"), "collides with reserved column");
    rejects(replace(t, R"("d":4)", R"("d":3)"), "unsupported problem");
    rejects("{ \"problem\": ", "syntax error at line 1");
    rejects(R"({"problem":{"n":5,"k":4,"d":4},"terms":[],"rows":[]})", "missing field 'target'");
}

TEST(Serialize, RoundTripsShippedAndSyntheticCertificates) {
    for (const auto& text : {slurp("prop1.cert.json"), slurp("prop2.cert.json"), std::string(tiny)}) {
        Certificate c = parse_certificate(text);
        std::string once = serialize_certificate(c);
        EXPECT_EQ(parse_certificate(once), c);
        EXPECT_EQ(serialize_certificate(parse_certificate(once)), once);
    }
}

TEST(Serialize, ShippedFilesAreInCanonicalForm) {
    for (const char* name : {"prop1.cert.json", "prop2.cert.json"}) {
        std::string text = slurp(name);
        EXPECT_EQ(serialize_certificate(parse_certificate(text)), text) << name;
    }
}

TEST(SeedTerms, ReadsTermsOnlyFiles) {
    Certificate seeds = parse_seed_terms(slurp("prop2.terms.json"));
    Certificate full = load("prop2.cert.json");
    EXPECT_EQ(seeds.terms, full.terms);
    EXPECT_TRUE(seeds.rows.empty());
    EXPECT_THROW(parse_seed_terms("[1,2]"), CertificateError);
}

TEST(SumCheck, ShippedCertificatesMatchTheirFinalRows) {
    Certificate p1 = load("prop1.cert.json");
    Certificate p2 = load("prop2.cert.json");
    EXPECT_EQ(p1.terms.size(), 12u);
    EXPECT_EQ(p1.rows.size(), 13u);
    EXPECT_EQ(p2.terms.size(), 30u);
    EXPECT_EQ(p2.rows.size(), 25u);
    EXPECT_EQ(p1.target, (CoeffRow{{"beta", 10}, {"alpha", 15}, {"B", -6}}));
    EXPECT_EQ(p2.target, (CoeffRow{{"beta", 20}, {"alpha", 10}, {"B", -6}}));
    SumCheck s1 = check_sum(p1), s2 = check_sum(p2);
    EXPECT_TRUE(s1.ok);
    EXPECT_TRUE(s2.ok);
    EXPECT_EQ(s1.meaning->to_string(), "15α+10β ≥ 6B");
    EXPECT_EQ(s2.meaning->to_string(), "5α+10β ≥ 3B");
}

TEST(SumCheck, NamesTheMismatchedColumn) {
    Certificate c = parse_certificate(tiny);
    c.rows[1]["T2"] = 5;
    SumCheck s = check_sum(c);
    EXPECT_FALSE(s.ok);
    ASSERT_EQ(s.mismatched.size(), 1u);
    EXPECT_EQ(s.mismatched[0], "T2: rows sum to 1, target has 0");
}

TEST(Rows, ShippedRowsAreSoundOnReplicationAndZeroVectors) {
    for (const char* name : {"prop1.cert.json", "prop2.cert.json"}) {
        Certificate c = load(name);
        Universe u = Universe::build(c.problem.n, c.problem.k, c.problem.d);
        for (const auto& row : c.rows) {
            LinExpr e = row_expression(u, c, row);
            EXPECT_GE(e.evaluate([](const Column& col) { return replication_value(col, 3); }), 0);
            EXPECT_EQ(e.evaluate([](const Column&) { return Rational(0); }), 0);
        }
    }
}

TEST(Verify, ShippedCertificatesAreValid) {
    for (auto [name, meaning] : {std::pair{"prop1.cert.json", "15α+10β ≥ 6B"}, {"prop2.cert.json", "5α+10β ≥ 3B"}}) {
        Certificate c = load(name);
        Universe u = Universe::build(5, 4);
        VerifyReport rep = verify(u, c);
        EXPECT_EQ(rep.overall, Verdict::valid) << name;
        ASSERT_TRUE(rep.meaning.has_value());
        EXPECT_EQ(rep.meaning->to_string(), meaning);
        for (const auto& r : rep.rows) EXPECT_EQ(r.status, RowStatus::valid);
    }
}

TEST(Verify, TinyCertificateIsValid) {
    // 4 (alpha - H(W1)) >= 0 and 4 H(W1) >= B give 4 alpha >= B.
    Universe u = Universe::build(5, 4);
    VerifyReport rep = verify(u, parse_certificate(tiny));
    EXPECT_EQ(rep.overall, Verdict::valid);
    EXPECT_EQ(rep.meaning->to_string(), "4α ≥ 1B");
}

TEST(Verify, TargetWithEntropyColumnIsInvalid) {
    Universe u = Universe::build(5, 4);
    Certificate c = parse_certificate(tiny);
    c.rows.push_back({{"T2", 1}});
    c.target["T2"] = 1;
    VerifyReport rep = verify(u, c);
    EXPECT_TRUE(rep.sum_ok);
    EXPECT_FALSE(rep.meaning.has_value());
    EXPECT_EQ(rep.overall, Verdict::invalid);
}

TEST(Verify, WrongProblemIsInvalid) {
    Certificate c = load("prop1.cert.json");
    VerifyReport rep = verify(Universe::build(4, 3), c);
    EXPECT_EQ(rep.overall, Verdict::invalid);
}

// Every nonzero coefficient, flipped in sign or moved by one, breaks the
// certificate.
TEST(Mutation, EveryCoefficientChangeIsRejected) {
    Universe u = Universe::build(5, 4);
    for (const char* name : {"prop1.cert.json", "prop2.cert.json"}) {
        const Certificate base = load(name);
        std::size_t mutants = 0;
        auto check = [&](const Certificate& m, const std::string& what) {
            ++mutants;
            VerifyReport rep = verify(u, m);
            EXPECT_NE(rep.overall, Verdict::valid) << name << " " << what;
        };
        for (std::size_t i = 0; i < base.rows.size(); ++i)
            for (const auto& [key, q] : base.rows[i])
                for (std::int64_t v : {-q, q + 1, q - 1}) {
                    Certificate m = base;
                    m.rows[i][key] = v;
                    check(m, "row " + std::to_string(i + 1) + " " + key + " -> " + std::to_string(v));
                }
        for (const auto& [key, q] : base.target)
            for (std::int64_t v : {-q, q + 1, q - 1}) {
                Certificate m = base;
                m.target[key] = v;
                check(m, "target " + key + " -> " + std::to_string(v));
            }
        EXPECT_GT(mutants, 3 * base.rows.size());
    }
}

// Negating row i and adding twice row i to row i+1 keeps every column sum.
// A negated Shannon row is not implied by the cone, so the row check must
// flag it.
TEST(Mutation, SumPreservingChangesFailTheRowCheck) {
    Universe u = Universe::build(5, 4);
    for (const char* name : {"prop1.cert.json", "prop2.cert.json"}) {
        const Certificate base = load(name);
        for (std::size_t i = 0; i + 1 < base.rows.size(); i += 3) {
            Certificate m = base;
            for (auto& [key, q] : m.rows[i]) {
                m.rows[i + 1][key] += 2 * q;
                q = -q;
            }
            VerifyReport rep = verify(u, m);
            EXPECT_TRUE(rep.sum_ok);
            EXPECT_EQ(rep.overall, Verdict::unverified) << name << " row " << i + 1;
            EXPECT_EQ(rep.rows[i].status, RowStatus::unverified) << name << " row " << i + 1;
        }
    }
}

TEST(Latex, TwoTablesWithSumRow) {
    Certificate c = load("prop1.cert.json");
    std::string tex = to_latex(c);
    std::size_t tabulars = 0;
    for (std::size_t p = tex.find("\\begin{tabular}"); p != std::string::npos; p = tex.find("\\begin{tabular}", p + 1))
        ++tabulars;
    EXPECT_EQ(tabulars, 2u);
    EXPECT_NE(tex.find("$T_{15}$ & $B$"), std::string::npos);
    EXPECT_NE(tex.find("$T_{ 3}$ & $H(S_{5\\rightarrow4},W_{1})$"), std::string::npos);
    EXPECT_NE(tex.find("$ 10$     &$ 15$"), std::string::npos);
    EXPECT_EQ(to_latex(c), tex);
}

TEST(Report, JsonListsEveryRow) {
    Certificate c = load("prop1.cert.json");
    Universe u = Universe::build(5, 4);
    auto j = report_json(u, verify(u, c));
    EXPECT_EQ(j["overall"], "VALID");
    EXPECT_EQ(j["meaning"], "15α+10β ≥ 6B");
    EXPECT_EQ(j["rows"].size(), 13u);
    EXPECT_FALSE(j["rows"][0]["witness"].get<std::string>().empty());
}
