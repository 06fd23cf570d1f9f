#pragma once

// Random-variable universe of an (n, k, d = n-1) exact-repair regenerating
// code: node contents W_i and helper messages S_{i->j}, the functional
// dependencies between them, and node relabeling.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace erb {

class UnsupportedConfiguration : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class VarSet {
  public:
    using bits_type = std::uint64_t;

    constexpr VarSet() = default;
    constexpr explicit VarSet(bits_type bits) : bits_(bits) {}

    static VarSet of(std::initializer_list<int> indices) {
        VarSet s;
        for (int i : indices) s.insert(i);
        return s;
    }

    constexpr bits_type bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
    constexpr void insert(int i) { bits_ |= bits_type{1} << i; }
    constexpr void erase(int i) { bits_ &= ~(bits_type{1} << i); }
    constexpr bool is_subset_of(VarSet other) const { return (bits_ & ~other.bits_) == 0; }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (bits_type b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.bits_ | b.bits_); }
    friend constexpr VarSet operator&(VarSet a, VarSet b) { return VarSet(a.bits_ & b.bits_); }
    constexpr VarSet& operator|=(VarSet o) { bits_ |= o.bits_; return *this; }
    constexpr VarSet& operator&=(VarSet o) { bits_ &= o.bits_; return *this; }
    friend constexpr bool operator==(VarSet, VarSet) = default;
    friend constexpr auto operator<=>(VarSet a, VarSet b) { return a.bits_ <=> b.bits_; }

  private:
    bits_type bits_ = 0;
};

enum class VarRole { node, helper };

// Node indices are 1-based to match the W_i / S_{i->j} notation.
struct Variable {
    VarRole role;
    int from;  // node i for W_i, source i for S_{i->j}
    int to;    // destination j for S_{i->j}; 0 for nodes
};

// Bijection on {1..n}; image[i-1] is the image of node i.
class NodePermutation {
  public:
    NodePermutation() = default;
    explicit NodePermutation(std::vector<int> image) : image_(std::move(image)) {
        std::vector<int> sorted = image_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i) + 1)
                throw std::invalid_argument("not a permutation of 1..n");
    }
    static NodePermutation identity(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return NodePermutation(std::move(v));
    }
    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int node) const { return image_.at(static_cast<std::size_t>(node - 1)); }
    const std::vector<int>& image() const { return image_; }
    NodePermutation inverse() const {
        std::vector<int> inv(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i] - 1)] = static_cast<int>(i) + 1;
        return NodePermutation(std::move(inv));
    }
    friend bool operator==(const NodePermutation&, const NodePermutation&) = default;

  private:
    std::vector<int> image_;
};

// Canonical representative of a variable set: the least set (by bit
// pattern, variable 0 least significant) in the node-relabeling orbit of
// its functional-dependency closure.
struct EntropyClass {
    VarSet rep;
    friend bool operator==(EntropyClass, EntropyClass) = default;
    friend auto operator<=>(EntropyClass a, EntropyClass b) { return a.rep <=> b.rep; }
};

namespace detail {
struct CanonCache {
    mutable std::shared_mutex mutex;
    std::unordered_map<VarSet::bits_type, VarSet::bits_type> canon;
};
}  // namespace detail

class Universe {
  public:
    static constexpr int max_nodes = 6;

    // d defaults to n-1, the only supported repair degree.
    static Universe build(int n, int k, std::optional<int> d = std::nullopt) {
        if (n < 3) throw UnsupportedConfiguration("n must be at least 3 (got " + std::to_string(n) + ")");
        if (n > max_nodes)
            throw UnsupportedConfiguration("n > " + std::to_string(max_nodes) + " is not supported");
        if (k < 2 || k > n - 1)
            throw UnsupportedConfiguration("k must satisfy 2 <= k <= n-1 (got k=" + std::to_string(k) + ")");
        if (d && *d != n - 1)
            throw UnsupportedConfiguration("only d = n-1 is supported (got d=" + std::to_string(*d) + ")");
        return Universe(n, k);
    }

    int n() const { return n_; }
    int k() const { return k_; }
    int d() const { return n_ - 1; }
    int size() const { return static_cast<int>(vars_.size()); }
    const std::vector<Variable>& vars() const { return vars_; }

    VarSet full() const { return full_; }
    VarSet nodes() const { return nodes_; }

    int node_var(int i) const { return i - 1; }
    int helper_var(int i, int j) const {
        if (i == j) throw std::invalid_argument("helper S_{i->i} does not exist");
        return n_ + (i - 1) * (n_ - 1) + (j < i ? j - 1 : j - 2);
    }
    VarSet node(int i) const { return VarSet(VarSet::bits_type{1} << node_var(i)); }
    VarSet helper(int i, int j) const { return VarSet(VarSet::bits_type{1} << helper_var(i, j)); }
    VarSet outgoing(int i) const { return out_[static_cast<std::size_t>(i - 1)]; }
    VarSet incoming(int j) const { return in_[static_cast<std::size_t>(j - 1)]; }

    bool contains(VarSet a) const { return a.is_subset_of(full_); }

    std::string token(int var) const {
        const Variable& v = vars_.at(static_cast<std::size_t>(var));
        if (v.role == VarRole::node) return "W" + std::to_string(v.from);
        return "S" + std::to_string(v.from) + "->" + std::to_string(v.to);
    }

    int parse_token(std::string_view tok) const {
        auto number = [&](std::string_view s) -> int {
            if (s.empty() || s.size() > 2) return -1;
            int x = 0;
            for (char c : s) {
                if (c < '0' || c > '9') return -1;
                x = x * 10 + (c - '0');
            }
            return (x >= 1 && x <= n_) ? x : -1;
        };
        if (tok.size() >= 2 && tok[0] == 'W') {
            int i = number(tok.substr(1));
            if (i > 0) return node_var(i);
        } else if (tok.size() >= 2 && tok[0] == 'S') {
            auto arrow = tok.find("->");
            if (arrow != std::string_view::npos) {
                int i = number(tok.substr(1, arrow - 1));
                int j = number(tok.substr(arrow + 2));
                if (i > 0 && j > 0 && i != j) return helper_var(i, j);
            }
        }
        throw std::invalid_argument("unknown variable token '" + std::string(tok) + "'");
    }

    // Tokens in universe order (W_1..W_n, then helpers row-major).
    std::vector<std::string> tokens(VarSet a) const {
        std::vector<std::string> out;
        for (int i : a.indices()) out.push_back(token(i));
        return out;
    }

    VarSet parse_tokens(std::span<const std::string> toks) const {
        VarSet s;
        for (const auto& t : toks) {
            int v = parse_token(t);
            if (s.contains(v)) throw std::invalid_argument("duplicate variable token '" + t + "'");
            s.insert(v);
        }
        return s;
    }

    std::string format(VarSet a) const {
        std::string out = "{";
        bool first = true;
        for (const auto& t : tokens(a)) {
            if (!first) out += ",";
            out += t;
            first = false;
        }
        return out + "}";
    }

    // Smallest superset closed under: node -> its outgoing helpers;
    // all incoming helpers -> node; k nodes -> everything.
    VarSet closure(VarSet a) const {
        VarSet::bits_type s = a.bits();
        for (;;) {
            VarSet::bits_type before = s;
            for (int i = 0; i < n_; ++i) {
                if ((s >> i) & 1U) s |= out_[static_cast<std::size_t>(i)].bits();
            }
            for (int j = 0; j < n_; ++j) {
                VarSet::bits_type in = in_[static_cast<std::size_t>(j)].bits();
                if ((s & in) == in) s |= VarSet::bits_type{1} << j;
            }
            if (std::popcount(s & nodes_.bits()) >= k_) return full_;
            if (s == before) return VarSet(s);
        }
    }

    bool is_closed(VarSet a) const { return closure(a) == a; }

    // A minimal subset with the same closure, found by dropping variables
    // from the last index down while the closure is unchanged.
    VarSet reduce(VarSet a) const {
        VarSet target = closure(a);
        VarSet r = target;
        std::vector<int> idx = target.indices();
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
            VarSet t(r.bits() & ~(VarSet::bits_type{1} << *it));
            if (closure(t) == target) r = t;
        }
        return r;
    }
    bool is_spanning(VarSet a) const { return closure(a) == full_; }

    const std::vector<NodePermutation>& permutations() const { return perms_; }

    VarSet apply(const NodePermutation& pi, VarSet a) const {
        VarSet out;
        for (int v : a.indices()) {
            const Variable& var = vars_[static_cast<std::size_t>(v)];
            out.insert(var.role == VarRole::node ? node_var(pi(var.from)) : helper_var(pi(var.from), pi(var.to)));
        }
        return out;
    }

    // Fast path for the p-th permutation of permutations().
    VarSet apply(std::size_t p, VarSet a) const {
        const VarSet::bits_type* table = &perm_tables_[p * byte_count_ * 256];
        VarSet::bits_type out = 0;
        VarSet::bits_type bits = a.bits();
        for (int b = 0; b < byte_count_ && bits != 0; ++b, bits >>= 8)
            out |= table[static_cast<std::size_t>(b) * 256 + (bits & 0xFFU)];
        return VarSet(out);
    }

    // Distinct images of a set under all node relabelings, ascending.
    std::vector<VarSet> orbit(VarSet a) const {
        std::vector<VarSet> images;
        images.reserve(perms_.size());
        for (std::size_t p = 0; p < perms_.size(); ++p) images.push_back(apply(p, a));
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        return images;
    }

    EntropyClass canon(VarSet a) const {
        VarSet c = closure(a);
        if (c == full_ || c.empty()) return EntropyClass{c};
        {
            std::shared_lock lock(cache_->mutex);
            auto it = cache_->canon.find(c.bits());
            if (it != cache_->canon.end()) return EntropyClass{VarSet(it->second)};
        }
        std::vector<VarSet> images = orbit(c);
        VarSet least = images.front();
        std::unique_lock lock(cache_->mutex);
        for (VarSet img : images) cache_->canon.emplace(img.bits(), least.bits());
        return EntropyClass{least};
    }

    friend bool operator==(const Universe& a, const Universe& b) { return a.n_ == b.n_ && a.k_ == b.k_; }

  private:
    Universe(int n, int k) : n_(n), k_(k), cache_(std::make_shared<detail::CanonCache>()) {
        for (int i = 1; i <= n; ++i) vars_.push_back({VarRole::node, i, 0});
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j) vars_.push_back({VarRole::helper, i, j});
        full_ = VarSet(size() == 64 ? ~VarSet::bits_type{0} : (VarSet::bits_type{1} << size()) - 1);
        nodes_ = VarSet((VarSet::bits_type{1} << n) - 1);
        out_.resize(static_cast<std::size_t>(n));
        in_.resize(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j) {
                    out_[static_cast<std::size_t>(i - 1)].insert(helper_var(i, j));
                    in_[static_cast<std::size_t>(j - 1)].insert(helper_var(i, j));
                }
        std::vector<int> image(static_cast<std::size_t>(n));
        std::iota(image.begin(), image.end(), 1);
        do {
            perms_.emplace_back(image);
        } while (std::next_permutation(image.begin(), image.end()));

        byte_count_ = (size() + 7) / 8;
        perm_tables_.assign(perms_.size() * static_cast<std::size_t>(byte_count_) * 256, 0);
        for (std::size_t p = 0; p < perms_.size(); ++p) {
            std::vector<int> var_image(static_cast<std::size_t>(size()));
            for (int v = 0; v < size(); ++v) {
                const Variable& var = vars_[static_cast<std::size_t>(v)];
                const NodePermutation& pi = perms_[p];
                var_image[static_cast<std::size_t>(v)] =
                    var.role == VarRole::node ? node_var(pi(var.from)) : helper_var(pi(var.from), pi(var.to));
            }
            for (int b = 0; b < byte_count_; ++b)
                for (int byte = 0; byte < 256; ++byte) {
                    VarSet::bits_type img = 0;
                    for (int bit = 0; bit < 8; ++bit) {
                        int v = b * 8 + bit;
                        if (((byte >> bit) & 1) && v < size())
                            img |= VarSet::bits_type{1} << var_image[static_cast<std::size_t>(v)];
                    }
                    perm_tables_[(p * static_cast<std::size_t>(byte_count_) + static_cast<std::size_t>(b)) * 256 +
                                 static_cast<std::size_t>(byte)] = img;
                }
        }
    }

    int n_;
    int k_;
    std::vector<Variable> vars_;
    VarSet full_;
    VarSet nodes_;
    std::vector<VarSet> out_;
    std::vector<VarSet> in_;
    std::vector<NodePermutation> perms_;
    int byte_count_ = 0;
    std::vector<VarSet::bits_type> perm_tables_;
    std::shared_ptr<detail::CanonCache> cache_;
};

}  // namespace erb
