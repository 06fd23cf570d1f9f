#pragma once

// Shannon-type constraint rows for symmetric exact-repair codes, expressed
// over entropy classes plus the reserved alpha, beta and B columns.

#include "erbound/rational.hpp"
#include "erbound/universe.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace erb {

enum class ColumnKind : std::uint8_t { alpha, beta, entropy, big_b };

struct Column {
    ColumnKind kind = ColumnKind::entropy;
    VarSet set;  // canonical representative; meaningful for entropy columns only

    static Column alpha() { return {ColumnKind::alpha, {}}; }
    static Column beta() { return {ColumnKind::beta, {}}; }
    static Column big_b() { return {ColumnKind::big_b, {}}; }
    static Column entropy(EntropyClass c) { return {ColumnKind::entropy, c.rep}; }

    friend bool operator==(const Column&, const Column&) = default;
    friend auto operator<=>(const Column&, const Column&) = default;
};

inline std::string column_name(const Universe& u, const Column& c) {
    switch (c.kind) {
        case ColumnKind::alpha: return "alpha";
        case ColumnKind::beta: return "beta";
        case ColumnKind::big_b: return "B";
        case ColumnKind::entropy: break;
    }
    std::string s = "H(";
    bool first = true;
    for (const auto& t : u.tokens(c.set)) {
        if (!first) s += ",";
        s += t;
        first = false;
    }
    return s + ")";
}

// Column holding H(a): B for spanning sets, nothing for the empty set.
inline std::optional<Column> entropy_column(const Universe& u, VarSet a) {
    EntropyClass c = u.canon(a);
    if (c.rep.empty()) return std::nullopt;
    if (c.rep == u.full()) return Column::big_b();
    return Column::entropy(c);
}

// Sparse exact-rational combination of columns; read as "expr >= 0".
class LinExpr {
  public:
    using map_type = std::map<Column, Rational>;

    LinExpr() = default;

    void add(const Column& c, const Rational& q) {
        if (q == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(c, q);
        if (!inserted) {
            it->second += q;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    void add(const std::optional<Column>& c, const Rational& q) {
        if (c) add(*c, q);
    }

    LinExpr& operator+=(const LinExpr& o) {
        for (const auto& [c, q] : o.coeffs_) add(c, q);
        return *this;
    }
    friend LinExpr operator*(const Rational& s, const LinExpr& e) {
        LinExpr out;
        if (s == 0) return out;
        for (const auto& [c, q] : e.coeffs_) out.coeffs_.emplace(c, s * q);
        return out;
    }

    Rational coeff(const Column& c) const {
        auto it = coeffs_.find(c);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    bool empty() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }
    const map_type& coeffs() const { return coeffs_; }

    Rational evaluate(const std::function<Rational(const Column&)>& value) const {
        Rational sum = 0;
        for (const auto& [c, q] : coeffs_) sum += q * value(c);
        return sum;
    }

    friend bool operator==(const LinExpr&, const LinExpr&) = default;
    friend bool operator<(const LinExpr& a, const LinExpr& b) { return a.coeffs_ < b.coeffs_; }

  private:
    map_type coeffs_;
};

inline std::string to_string(const Universe& u, const LinExpr& e) {
    std::string s;
    for (const auto& [c, q] : e.coeffs()) {
        std::string mag = to_string(Rational(abs(q)));
        s += (q < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + "));
        if (mag != "1") s += mag + "*";
        s += column_name(u, c);
    }
    return s.empty() ? "0" : s;
}

enum class RowKind { submodularity, monotonicity, storage_cap, bandwidth_cap, spanning_value, storage_identity, bandwidth_identity };

inline const char* to_string(RowKind k) {
    switch (k) {
        case RowKind::submodularity: return "submodularity";
        case RowKind::monotonicity: return "monotonicity";
        case RowKind::storage_cap: return "storage-cap";
        case RowKind::bandwidth_cap: return "bandwidth-cap";
        case RowKind::spanning_value: return "spanning-value";
        case RowKind::storage_identity: return "storage-identity";
        case RowKind::bandwidth_identity: return "bandwidth-identity";
    }
    return "?";
}

struct Constraint {
    RowKind kind;
    LinExpr expr;  // expr >= 0
    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct ConstraintSet {
    std::vector<Constraint> rows;
};

// alpha >= H(W_1) and beta >= H(S_{1->2}); by symmetry these cover every
// node and every helper message.
inline ConstraintSet storage_and_bandwidth_caps(const Universe& u) {
    ConstraintSet out;
    LinExpr storage;
    storage.add(Column::alpha(), 1);
    storage.add(entropy_column(u, u.node(1)), -1);
    out.rows.push_back({RowKind::storage_cap, std::move(storage)});
    LinExpr bandwidth;
    bandwidth.add(Column::beta(), 1);
    bandwidth.add(entropy_column(u, u.helper(1, 2)), -1);
    out.rows.push_back({RowKind::bandwidth_cap, std::move(bandwidth)});
    return out;
}

// H(W_1) >= alpha and H(S_{1->2}) >= beta. Together with the caps these read
// alpha and beta as the entropies of a node and of a helper message, the
// convention of hand-written tabulated proofs. A bound derived this way
// carries over to the caps whenever its alpha and beta coefficients are
// nonnegative.
inline ConstraintSet capacity_identities(const Universe& u) {
    ConstraintSet out;
    LinExpr storage;
    storage.add(entropy_column(u, u.node(1)), 1);
    storage.add(Column::alpha(), -1);
    out.rows.push_back({RowKind::storage_identity, std::move(storage)});
    LinExpr bandwidth;
    bandwidth.add(entropy_column(u, u.helper(1, 2)), 1);
    bandwidth.add(Column::beta(), -1);
    out.rows.push_back({RowKind::bandwidth_identity, std::move(bandwidth)});
    return out;
}

class ContractViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// H(a) + H(b) - H(a u b) - H(a n b) >= 0 for closed a, b.
inline LinExpr submodularity(const Universe& u, VarSet a, VarSet b) {
    if (!u.contains(a) || !u.contains(b) || !u.is_closed(a) || !u.is_closed(b))
        throw ContractViolation("submodularity arguments must be closed subsets of the universe");
    LinExpr e;
    e.add(entropy_column(u, a), 1);
    e.add(entropy_column(u, b), 1);
    e.add(entropy_column(u, a | b), -1);
    e.add(entropy_column(u, a & b), -1);
    return e;
}

// H(b) - H(a) >= 0 for closed a subset of closed b.
inline LinExpr monotonicity(const Universe& u, VarSet a, VarSet b) {
    if (!u.contains(a) || !u.contains(b) || !u.is_closed(a) || !u.is_closed(b))
        throw ContractViolation("monotonicity arguments must be closed subsets of the universe");
    if (!a.is_subset_of(b)) throw ContractViolation("monotonicity requires a to be a subset of b");
    LinExpr e;
    e.add(entropy_column(u, b), 1);
    e.add(entropy_column(u, a), -1);
    return e;
}

// Entropy vector of the replication code: every nonempty set has entropy
// b0 and alpha = beta = B = b0.
inline Rational replication_value(const Column& c, const Rational& b0 = 1) {
    if (c.kind == ColumnKind::entropy && c.set.empty()) return 0;
    return b0;
}

}  // namespace erb
