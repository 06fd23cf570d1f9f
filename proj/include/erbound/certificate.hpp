#pragma once

// Tabulated proofs: a dictionary of joint-entropy terms and a list of
// integer rows, each a (multiple of a) Shannon-type inequality, whose
// column-wise sum is the claimed bound a*alpha + b*beta - c*B >= 0.

#include "erbound/cone.hpp"
#include "erbound/family.hpp"
#include "erbound/instance.hpp"
#include "erbound/ratlp.hpp"
#include "erbound/rational.hpp"
#include "erbound/universe.hpp"

#include <json.hpp>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace erb {

class CertificateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ProblemId {
    int n = 0;
    int k = 0;
    int d = 0;
    friend bool operator==(const ProblemId&, const ProblemId&) = default;
};

struct CertTerm {
    std::string id;  // "T<number>"
    VarSet vars;
    friend bool operator==(const CertTerm&, const CertTerm&) = default;
};

// Column key -> coefficient. Keys are "alpha", "beta", "B" or a term id.
using CoeffRow = std::map<std::string, std::int64_t>;

struct CertMeta {
    std::string title;
    std::string source;
    std::map<std::string, std::string> reserved;  // alpha/beta/B -> display id
    std::string toolkit;
    nlohmann::ordered_json config;  // null when absent
    friend bool operator==(const CertMeta&, const CertMeta&) = default;
};

struct Certificate {
    ProblemId problem;
    std::vector<CertTerm> terms;
    std::vector<CoeffRow> rows;
    CoeffRow target;
    CertMeta meta;

    const CertTerm* find_term(std::string_view id) const {
        for (const auto& t : terms)
            if (t.id == id) return &t;
        return nullptr;
    }
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline bool is_reserved_column(std::string_view key) { return key == "alpha" || key == "beta" || key == "B"; }

// "a*alpha + b*beta >= c*B" with (a, b, c) coprime integers.
struct BoundMeaning {
    Integer alpha = 0;
    Integer beta = 0;
    Integer b = 0;

    static BoundMeaning from(const Rational& a, const Rational& bt, const Rational& c) {
        Integer den = lcm(lcm(a.get_den(), bt.get_den()), c.get_den());
        BoundMeaning m;
        m.alpha = a.get_num() * (den / a.get_den());
        m.beta = bt.get_num() * (den / bt.get_den());
        m.b = c.get_num() * (den / c.get_den());
        Integer g = gcd(gcd(m.alpha, m.beta), m.b);
        if (g != 0) {
            m.alpha /= g;
            m.beta /= g;
            m.b /= g;
        }
        return m;
    }

    std::string to_string() const {
        std::string s;
        auto term = [&](const Integer& c, const char* sym) {
            if (c == 0) return;
            if (!s.empty()) s += "+";
            if (c != 1) s += c.get_str();
            s += sym;
        };
        term(alpha, "α");
        term(beta, "β");
        if (s.empty()) s = "0";
        return s + " ≥ " + b.get_str() + "B";
    }

    friend bool operator==(const BoundMeaning&, const BoundMeaning&) = default;
};

namespace detail {

inline int id_number(std::string_view id) {
    if (id.size() < 2 || id[0] != 'T' || id.size() > 7) return -1;
    int x = 0;
    for (char c : id.substr(1)) {
        if (c < '0' || c > '9') return -1;
        x = x * 10 + (c - '0');
    }
    return (x >= 1 && !(id.size() > 2 && id[1] == '0')) ? x : -1;
}

inline std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void expect_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                        const std::string& where) {
    if (!obj.is_object()) throw CertificateError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw CertificateError("unknown field '" + key + "' in " + where);
    }
}

inline int get_int(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw CertificateError("missing field '" + std::string(key) + "' in " + where);
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw CertificateError("field '" + std::string(key) + "' in " + where + " must be an integer");
    return v.get<int>();
}

}  // namespace detail

// Columns in display order: by T number when reserved ids are declared,
// otherwise alpha, beta, terms in declared order, B.
inline std::vector<std::string> column_order(const Certificate& cert) {
    std::vector<std::pair<long, std::string>> keyed;
    long pos = 0;
    auto reserved_pos = [&](const std::string& key, long fallback) -> long {
        auto it = cert.meta.reserved.find(key);
        return it != cert.meta.reserved.end() ? detail::id_number(it->second) : fallback;
    };
    bool numbered = !cert.meta.reserved.empty();
    keyed.emplace_back(reserved_pos("alpha", numbered ? LONG_MIN + 1 : -2), "alpha");
    keyed.emplace_back(reserved_pos("beta", numbered ? LONG_MIN + 2 : -1), "beta");
    for (const auto& t : cert.terms) keyed.emplace_back(numbered ? detail::id_number(t.id) : pos++, t.id);
    keyed.emplace_back(reserved_pos("B", LONG_MAX), "B");
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    for (auto& [p, k] : keyed) out.push_back(std::move(k));
    return out;
}

inline Certificate parse_certificate(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw CertificateError("syntax error at " + detail::line_col(text, e.byte) + ": " + e.what());
    }
    detail::expect_keys(doc, {"problem", "terms", "rows", "target", "meta"}, "certificate");
    for (const char* key : {"problem", "terms", "rows", "target"})
        if (!doc.contains(key)) throw CertificateError(std::string("missing field '") + key + "'");

    Certificate cert;
    const json& prob = doc.at("problem");
    detail::expect_keys(prob, {"n", "k", "d"}, "problem");
    cert.problem = {detail::get_int(prob, "n", "problem"), detail::get_int(prob, "k", "problem"),
                    detail::get_int(prob, "d", "problem")};
    std::optional<Universe> u;
    try {
        u = Universe::build(cert.problem.n, cert.problem.k, cert.problem.d);
    } catch (const UnsupportedConfiguration& e) {
        throw CertificateError(std::string("unsupported problem: ") + e.what());
    }

    if (doc.contains("meta")) {
        const json& meta = doc.at("meta");
        detail::expect_keys(meta, {"title", "source", "reserved", "toolkit", "config"}, "meta");
        for (const char* key : {"title", "source", "toolkit"}) {
            if (!meta.contains(key)) continue;
            if (!meta.at(key).is_string()) throw CertificateError(std::string("meta.") + key + " must be a string");
        }
        if (meta.contains("title")) cert.meta.title = meta.at("title").get<std::string>();
        if (meta.contains("source")) cert.meta.source = meta.at("source").get<std::string>();
        if (meta.contains("toolkit")) cert.meta.toolkit = meta.at("toolkit").get<std::string>();
        if (meta.contains("reserved")) {
            const json& res = meta.at("reserved");
            detail::expect_keys(res, {"alpha", "beta", "B"}, "meta.reserved");
            for (const auto& [key, value] : res.items()) {
                if (!value.is_string() || detail::id_number(value.get<std::string>()) < 0)
                    throw CertificateError("meta.reserved." + key + " must be a term id like \"T1\"");
                cert.meta.reserved[key] = value.get<std::string>();
            }
        }
        if (meta.contains("config")) {
            if (!meta.at("config").is_object()) throw CertificateError("meta.config must be an object");
            cert.meta.config = nlohmann::ordered_json::parse(meta.at("config").dump());
        }
    }

    const json& terms = doc.at("terms");
    if (!terms.is_array()) throw CertificateError("terms must be an array");
    for (const auto& t : terms) {
        detail::expect_keys(t, {"id", "vars"}, "term");
        if (!t.contains("id") || !t.at("id").is_string()) throw CertificateError("term without string id");
        std::string id = t.at("id").get<std::string>();
        if (detail::id_number(id) < 0) throw CertificateError("malformed term id '" + id + "'");
        if (cert.find_term(id)) throw CertificateError("duplicate term id '" + id + "'");
        for (const auto& [key, rid] : cert.meta.reserved)
            if (rid == id) throw CertificateError("term id '" + id + "' collides with reserved column " + key);
        if (!t.contains("vars") || !t.at("vars").is_array())
            throw CertificateError("term '" + id + "' needs a vars array");
        std::vector<std::string> toks;
        for (const auto& v : t.at("vars")) {
            if (!v.is_string()) throw CertificateError("term '" + id + "' has a non-string variable");
            toks.push_back(v.get<std::string>());
        }
        try {
            cert.terms.push_back({id, u->parse_tokens(toks)});
        } catch (const std::invalid_argument& e) {
            throw CertificateError("term '" + id + "': " + e.what());
        }
    }

    auto parse_row = [&](const json& r, const std::string& where) {
        detail::expect_keys(r, {"coeffs"}, where);
        if (!r.contains("coeffs") || !r.at("coeffs").is_object())
            throw CertificateError(where + " needs a coeffs object");
        CoeffRow row;
        for (const auto& [key, value] : r.at("coeffs").items()) {
            if (!is_reserved_column(key) && !cert.find_term(key))
                throw CertificateError(where + " references undeclared column '" + key + "'");
            if (!value.is_number_integer())
                throw CertificateError(where + ": non-integer coefficient for '" + key + "'");
            std::int64_t q = value.is_number_unsigned() ? static_cast<std::int64_t>(value.get<std::uint64_t>())
                                                        : value.get<std::int64_t>();
            if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
                throw CertificateError(where + ": coefficient out of range for '" + key + "'");
            if (q != 0) row[key] = q;
        }
        return row;
    };
    const json& rows = doc.at("rows");
    if (!rows.is_array()) throw CertificateError("rows must be an array");
    for (std::size_t i = 0; i < rows.size(); ++i) cert.rows.push_back(parse_row(rows[i], "row " + std::to_string(i + 1)));
    cert.target = parse_row(doc.at("target"), "target");
    return cert;
}

// Problem and terms of a certificate or of a terms-only seed file.
inline Certificate parse_seed_terms(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw CertificateError("syntax error at " + detail::line_col(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw CertificateError("seed file must be a JSON object");
    if (!doc.contains("rows")) doc["rows"] = nlohmann::json::array();
    if (!doc.contains("target")) doc["target"] = {{"coeffs", nlohmann::json::object()}};
    Certificate cert = parse_certificate(doc.dump());
    cert.rows.clear();
    cert.target.clear();
    return cert;
}

inline std::string serialize_certificate(const Certificate& cert) {
    using nlohmann::ordered_json;
    Universe u = Universe::build(cert.problem.n, cert.problem.k, cert.problem.d);
    std::vector<std::string> order = column_order(cert);
    auto row_json = [&](const CoeffRow& row) {
        ordered_json coeffs = ordered_json::object();
        for (const auto& key : order) {
            auto it = row.find(key);
            if (it != row.end() && it->second != 0) coeffs[key] = it->second;
        }
        ordered_json r;
        r["coeffs"] = std::move(coeffs);
        return r.dump();
    };

    std::ostringstream out;
    ordered_json prob;
    prob["n"] = cert.problem.n;
    prob["k"] = cert.problem.k;
    prob["d"] = cert.problem.d;
    out << "{\n  \"problem\": " << prob.dump() << ",\n  \"terms\": [";
    for (std::size_t i = 0; i < cert.terms.size(); ++i) {
        ordered_json t;
        t["id"] = cert.terms[i].id;
        t["vars"] = u.tokens(cert.terms[i].vars);
        out << (i ? ",\n    " : "\n    ") << t.dump();
    }
    out << (cert.terms.empty() ? "]" : "\n  ]") << ",\n  \"rows\": [";
    for (std::size_t i = 0; i < cert.rows.size(); ++i) out << (i ? ",\n    " : "\n    ") << row_json(cert.rows[i]);
    out << (cert.rows.empty() ? "]" : "\n  ]") << ",\n  \"target\": " << row_json(cert.target);

    const CertMeta& m = cert.meta;
    if (!m.title.empty() || !m.source.empty() || !m.reserved.empty() || !m.toolkit.empty() || !m.config.is_null()) {
        ordered_json meta = ordered_json::object();
        if (!m.title.empty()) meta["title"] = m.title;
        if (!m.source.empty()) meta["source"] = m.source;
        if (!m.reserved.empty()) {
            ordered_json res = ordered_json::object();
            for (const char* key : {"alpha", "beta", "B"}) {
                auto it = m.reserved.find(key);
                if (it != m.reserved.end()) res[key] = it->second;
            }
            meta["reserved"] = std::move(res);
        }
        if (!m.toolkit.empty()) meta["toolkit"] = m.toolkit;
        if (!m.config.is_null()) meta["config"] = m.config;
        out << ",\n  \"meta\": " << meta.dump();
    }
    out << "\n}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Verification

struct SumCheck {
    bool ok = false;
    std::vector<std::string> mismatched;  // "column: rows sum to x, target has y"
    std::optional<BoundMeaning> meaning;  // nullopt if the target is not a bound on alpha, beta, B
};

inline std::optional<BoundMeaning> target_meaning(const CoeffRow& target) {
    std::int64_t a = 0, b = 0, c = 0;
    for (const auto& [key, q] : target) {
        if (key == "alpha") a = q;
        else if (key == "beta") b = q;
        else if (key == "B") c = -q;
        else return std::nullopt;
    }
    if (a < 0 || b < 0 || (a == 0 && b == 0)) return std::nullopt;
    return BoundMeaning::from(Rational(Integer(std::to_string(a))), Rational(Integer(std::to_string(b))),
                              Rational(Integer(std::to_string(c))));
}

inline SumCheck check_sum(const Certificate& cert) {
    std::map<std::string, Integer> sums;
    for (const auto& row : cert.rows)
        for (const auto& [key, q] : row) sums[key] += Integer(std::to_string(q));
    for (const auto& [key, q] : cert.target) sums.try_emplace(key, 0);
    SumCheck out;
    out.ok = true;
    for (const auto& key : column_order(cert)) {
        auto it = sums.find(key);
        Integer have = it == sums.end() ? Integer(0) : it->second;
        auto t = cert.target.find(key);
        Integer want = t == cert.target.end() ? Integer(0) : Integer(std::to_string(t->second));
        if (have != want) {
            out.ok = false;
            out.mismatched.push_back(key + ": rows sum to " + have.get_str() + ", target has " + want.get_str());
        }
    }
    out.meaning = target_meaning(cert.target);
    return out;
}

enum class RowStatus { valid, unverified, skipped };

inline const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::valid: return "valid";
        case RowStatus::unverified: return "unverified";
        case RowStatus::skipped: return "skipped";
    }
    return "?";
}

struct WitnessEntry {
    Rational multiplier;
    Constraint row;
};

struct RowCheck {
    RowStatus status = RowStatus::skipped;
    int depth = 0;  // depth that certified the row, or the maximum depth tried
    std::size_t family_size = 0;
    bool placements = false;       // certified only once operands ranged over all placements
    bool uses_identities = false;  // witness reads alpha, beta as H(W_1), H(S_{1->2})
    std::vector<WitnessEntry> witness;
    std::string note;
};

struct VerifyOptions {
    int max_depth = 2;
    std::size_t family_cap = SubsetFamily::default_cap;
    lp::SolverOptions lp;
    // Row checks are skipped once the sum check has already refuted the certificate.
    bool check_rows_on_sum_failure = false;
    // Largest mini family tried when operands range over all placements.
    std::size_t placement_cap = 200;
    // Admit H(W_1) >= alpha and H(S_{1->2}) >= beta in row checks.
    bool capacity_identities = true;
};

// The row as an expression over model columns.
inline LinExpr row_expression(const Universe& u, const Certificate& cert, const CoeffRow& row) {
    LinExpr e;
    for (const auto& [key, q] : row) {
        Rational c{Integer(std::to_string(q))};
        if (key == "alpha") e.add(Column::alpha(), c);
        else if (key == "beta") e.add(Column::beta(), c);
        else if (key == "B") e.add(Column::big_b(), c);
        else {
            const CertTerm* t = cert.find_term(key);
            if (!t) throw CertificateError("undeclared column '" + key + "'");
            e.add(entropy_column(u, t->vars), c);
        }
    }
    return e;
}

// The row is valid when it is a nonnegative combination of the Shannon rows
// over a mini family: the row's term classes and the singletons of their
// variables, closed under union and intersection. Depths 1..max_depth are
// tried first with the terms' own alignment, then with every relative
// placement of the operands. The dual multipliers are the witness.
inline RowCheck check_row(const Universe& u, const Certificate& cert, std::size_t row_index,
                          const VerifyOptions& opts = {}) {
    if (cert.problem != ProblemId{u.n(), u.k(), u.d()})
        throw CertificateError("certificate problem does not match the universe");
    if (row_index >= cert.rows.size()) throw std::out_of_range("row index out of range");
    const CoeffRow& row = cert.rows[row_index];
    LinExpr objective = row_expression(u, cert, row);

    RowCheck out;
    out.depth = opts.max_depth;
    if (objective.evaluate([](const Column& c) { return replication_value(c); }) < 0) {
        out.status = RowStatus::unverified;
        out.note = "row is negative on the replication code";
        return out;
    }

    auto base_family = [&] {
        SubsetFamily fam(u, opts.family_cap);
        for (const auto& [key, q] : row)
            if (const CertTerm* t = cert.find_term(key)) fam.add(t->vars, Provenance::seed);
        for (const auto& [key, q] : row)
            if (const CertTerm* t = cert.find_term(key))
                for (int v : t->vars.indices())
                    fam.add(VarSet(VarSet::bits_type{1} << v), Provenance::singleton, 0, true);
        fam.add(u.node(1), Provenance::singleton);
        fam.add(u.helper(1, 2), Provenance::singleton);
        return fam;
    };

    // True when the row is implied over the family; fills the witness.
    auto implied = [&](const SubsetFamily& fam) {
        ConstraintSet cone = shannon_cone(fam);
        lp::Problem p;
        std::map<Column, std::size_t> index;
        auto add_col = [&](const Column& c) { index.emplace(c, p.add_column(column_name(u, c))); };
        add_col(Column::alpha());
        add_col(Column::beta());
        add_col(Column::big_b());
        for (const auto& m : fam.members()) add_col(Column::entropy(m.cls));
        if (opts.capacity_identities)
            for (auto& c : capacity_identities(u).rows) cone.rows.push_back(std::move(c));
        for (const auto& c : cone.rows) {
            lp::Row r;
            for (const auto& [col, q] : c.expr.coeffs()) r.terms.push_back({index.at(col), q});
            p.rows.push_back(std::move(r));
        }
        for (const auto& [col, q] : objective.coeffs()) p.objective.push_back({index.at(col), q});
        lp::Solution sol = lp::solve(p, opts.lp);
        if (sol.status != lp::Status::optimal) return false;
        for (std::size_t i = 0; i < sol.duals.size(); ++i) {
            if (sol.duals[i] == 0) continue;
            out.witness.push_back({sol.duals[i], cone.rows[i]});
            RowKind k = cone.rows[i].kind;
            if (k == RowKind::storage_identity || k == RowKind::bandwidth_identity) out.uses_identities = true;
        }
        return true;
    };

    for (bool placements : {false, true}) {
        SubsetFamily fam = base_family();
        for (int depth = 1; depth <= opts.max_depth; ++depth) {
            try {
                fam.close(1, placements ? SubsetFamily::Closure::all_placements : SubsetFamily::Closure::aligned);
            } catch (const FamilyOverflow&) {
                break;
            }
            if (placements && fam.size() > opts.placement_cap) break;
            out.family_size = fam.size();
            if (implied(fam)) {
                out.status = RowStatus::valid;
                out.depth = depth;
                out.placements = placements;
                return out;
            }
        }
    }
    out.status = RowStatus::unverified;
    out.note = "not implied by the Shannon rows of its family up to depth " + std::to_string(opts.max_depth);
    return out;
}

enum class Verdict { valid, invalid, unverified };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::valid: return "VALID";
        case Verdict::invalid: return "INVALID";
        case Verdict::unverified: return "UNVERIFIED";
    }
    return "?";
}

struct VerifyReport {
    bool sum_ok = false;
    std::vector<std::string> sum_mismatches;
    std::optional<BoundMeaning> meaning;
    std::vector<RowCheck> rows;
    Verdict overall = Verdict::invalid;
    std::vector<std::string> diagnostics;
};

inline VerifyReport verify(const Universe& u, const Certificate& cert, const VerifyOptions& opts = {}) {
    VerifyReport rep;
    if (cert.problem != ProblemId{u.n(), u.k(), u.d()}) {
        rep.diagnostics.push_back("certificate is for a different (n,k,d) than the universe");
        return rep;
    }
    SumCheck sum = check_sum(cert);
    rep.sum_ok = sum.ok;
    rep.sum_mismatches = sum.mismatched;
    rep.meaning = sum.meaning;
    for (const auto& m : sum.mismatched) rep.diagnostics.push_back("column sum mismatch, " + m);
    if (!sum.meaning) rep.diagnostics.push_back("target is not of the form a*alpha + b*beta - c*B with a, b >= 0");

    bool refuted = !sum.ok || !sum.meaning;
    rep.rows.resize(cert.rows.size());
    if (!refuted || opts.check_rows_on_sum_failure) {
        for (std::size_t i = 0; i < cert.rows.size(); ++i) {
            rep.rows[i] = check_row(u, cert, i, opts);
            if (rep.rows[i].status != RowStatus::valid)
                rep.diagnostics.push_back("row " + std::to_string(i + 1) + " unverified: " + rep.rows[i].note);
        }
    }
    if (refuted) {
        rep.overall = Verdict::invalid;
    } else {
        bool all = std::all_of(rep.rows.begin(), rep.rows.end(),
                               [](const RowCheck& r) { return r.status == RowStatus::valid; });
        bool identities = std::any_of(rep.rows.begin(), rep.rows.end(),
                                      [](const RowCheck& r) { return r.uses_identities; });
        // Rows that read alpha, beta as entropies prove the target for
        // H(W_1), H(S_{1->2}); the caps lift it only with nonnegative weights.
        bool liftable = sum.meaning && sum.meaning->alpha >= 0 && sum.meaning->beta >= 0;
        if (identities && !liftable) {
            rep.diagnostics.push_back("rows read alpha, beta as entropies but the target cannot be lifted to the caps");
            all = false;
        }
        rep.overall = all ? Verdict::valid : Verdict::unverified;
    }
    return rep;
}

inline std::string explain(const Universe& u, const RowCheck& check) {
    std::string s;
    for (const auto& w : check.witness) {
        if (!s.empty()) s += " + ";
        s += to_string(w.multiplier) + "×[" + to_string(u, w.row.expr) + " ≥ 0]";
    }
    return s;
}

inline nlohmann::ordered_json report_json(const Universe& u, const VerifyReport& rep) {
    nlohmann::ordered_json j;
    j["overall"] = to_string(rep.overall);
    j["sum_ok"] = rep.sum_ok;
    j["meaning"] = rep.meaning ? nlohmann::ordered_json(rep.meaning->to_string()) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        nlohmann::ordered_json r;
        r["row"] = i + 1;
        r["status"] = to_string(rep.rows[i].status);
        r["depth"] = rep.rows[i].depth;
        if (!rep.rows[i].witness.empty()) r["witness"] = explain(u, rep.rows[i]);
        if (!rep.rows[i].note.empty()) r["note"] = rep.rows[i].note;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["diagnostics"] = rep.diagnostics;
    return j;
}

// ---------------------------------------------------------------------------
// LaTeX rendering: term dictionary, then coefficient matrix with a sum row.

inline std::string to_latex(const Certificate& cert) {
    Universe u = Universe::build(cert.problem.n, cert.problem.k, cert.problem.d);
    std::vector<std::string> order = column_order(cert);

    std::vector<std::string> used;
    for (const auto& key : order) {
        bool appears = !is_reserved_column(key) || cert.meta.reserved.count(key) || cert.target.count(key);
        for (const auto& r : cert.rows) appears = appears || r.count(key);
        if (appears) used.push_back(key);
    }

    auto symbol = [](const std::string& key) -> std::string {
        if (key == "alpha") return "$\\alpha$";
        if (key == "beta") return "$\\beta$";
        return "$B$";
    };
    auto label = [&](const std::string& key) -> std::string {
        std::string id = key;
        if (is_reserved_column(key)) {
            auto it = cert.meta.reserved.find(key);
            if (it == cert.meta.reserved.end()) return symbol(key);
            id = it->second;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "$T_{%2d}$", detail::id_number(id));
        return buf;
    };
    auto entropy_tex = [&](VarSet s) {
        std::vector<int> idx = s.indices();
        std::string body;
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
            const Variable& v = u.vars()[static_cast<std::size_t>(*it)];
            if (!body.empty()) body += ",";
            if (v.role == VarRole::node)
                body += "W_{" + std::to_string(v.from) + "}";
            else
                body += "S_{" + std::to_string(v.from) + "\\rightarrow" + std::to_string(v.to) + "}";
        }
        return "$H(" + body + ")$";
    };

    std::ostringstream out;
    std::string title = cert.meta.title.empty() ? std::string("the bound") : cert.meta.title;
    out << "\\begin{table}[ht]\n\\begin{center}\n\\caption{The entropy terms used in the proof of " << title
        << ".}\n\\begin{tabular}{|c|c|}\n\\hline\n";
    for (const auto& key : used) {
        out << label(key) << " & ";
        if (is_reserved_column(key))
            out << symbol(key);
        else
            out << entropy_tex(cert.find_term(key)->vars);
        out << " \\\\\n";
    }
    out << "\\hline\n\\end{tabular}\n\\end{center}\n\\end{table}\n\n";

    auto header = [&](const std::string& key) { return is_reserved_column(key) ? symbol(key) : label(key); };
    auto cell = [](std::int64_t q) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "$%3lld$", static_cast<long long>(q));
        return std::string(buf);
    };
    auto print_row = [&](const CoeffRow& row) {
        for (std::size_t c = 0; c < used.size(); ++c) {
            auto it = row.find(used[c]);
            std::string v = (it == row.end() || it->second == 0) ? "" : cell(it->second);
            v.resize(std::max<std::size_t>(v.size(), 9), ' ');
            out << (c ? " &" : "") << v;
        }
        out << " \\\\\n";
    };

    out << "\\begin{table*}[ht]\n\\setlength{\\tabcolsep}{4pt}\n\\begin{center}\n\\caption{Proof of " << title
        << ".}\n\\begin{tabular}{|" << std::string(used.size(), 'c') << "|}\n\\hline\n";
    for (std::size_t c = 0; c < used.size(); ++c) out << (c ? " &" : "") << header(used[c]);
    out << " \\\\\n\\hline\n";
    for (const auto& row : cert.rows) print_row(row);
    out << "\\hline\n\\hline\n";
    print_row(cert.target);
    out << "\\hline\n\\end{tabular}\n\\end{center}\n\\end{table*}\n";
    return out.str();
}

}  // namespace erb
