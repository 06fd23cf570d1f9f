#pragma once

// Families of entropy classes that restrict the Shannon LP to a tractable
// set of joint-entropy terms.

#include "erbound/universe.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace erb {

enum class Provenance { seed, singleton, node_subsets, helper_augmented, closure_depth };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::seed: return "seed";
        case Provenance::singleton: return "singleton";
        case Provenance::node_subsets: return "node-subsets";
        case Provenance::helper_augmented: return "helper-augmented";
        case Provenance::closure_depth: return "closure-depth";
    }
    return "?";
}

class FamilyOverflow : public std::runtime_error {
  public:
    FamilyOverflow(std::size_t cap, int round)
        : std::runtime_error("subset family exceeded its cap of " + std::to_string(cap) + " classes in " +
                             (round == 0 ? std::string("the base round") : "closure round " + std::to_string(round))),
          round_(round) {}
    int round() const { return round_; }

  private:
    int round_;
};

struct FamilyMember {
    EntropyClass cls;
    Provenance tag;
    int depth;  // closure round that introduced the class (0 for base classes)
};

// A set of entropy classes (never the empty or spanning class, which are
// implicit) plus the concrete closed sets used to grow it. Concrete sets
// keep the relative alignment of seeds so that unions and intersections in
// closure rounds are the ones a tabulated proof would use.
class SubsetFamily {
  public:
    static constexpr std::size_t default_cap = 20000;

    explicit SubsetFamily(const Universe& u, std::size_t cap = default_cap) : u_(&u), cap_(cap) {}

    const Universe& universe() const { return *u_; }
    std::size_t cap() const { return cap_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<FamilyMember>& members() const { return members_; }
    const std::vector<VarSet>& generators() const { return generators_; }

    // Index of the class of a closed set, looked up by orbit image.
    std::optional<std::size_t> find(VarSet closed) const {
        auto it = images_.find(closed.bits());
        if (it == images_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(VarSet any) const { return find(u_->closure(any)).has_value(); }

    // Adds the class of closure(set). Returns its index, or nullopt for the
    // empty and spanning classes. Seeds always keep their concrete set as a generator; other tags only
    // when `keep_concrete` is set.
    std::optional<std::size_t> add(VarSet set, Provenance tag, int depth = 0, bool keep_concrete = false) {
        VarSet closed = u_->closure(set);
        if (closed.empty() || closed == u_->full()) return std::nullopt;
        if (auto existing = find(closed)) {
            if ((tag == Provenance::seed || keep_concrete) && !is_generator(closed)) push_generator(closed);
            return existing;
        }
        if (members_.size() >= cap_) throw FamilyOverflow(cap_, depth);
        std::size_t index = members_.size();
        members_.push_back({u_->canon(closed), tag, depth});
        for (VarSet img : u_->orbit(closed)) images_.emplace(img.bits(), index);
        push_generator(closed);
        return index;
    }

    // One round combines the current generators pairwise by union and
    // intersection. `aligned` uses the generators as placed; `extended`
    // also joins every generator with each single variable; `all_placements`
    // lets the second operand range over every relabeling.
    enum class Closure { aligned, extended, all_placements };

    void close(int rounds, Closure mode = Closure::aligned) {
        for (int r = 0; r < rounds; ++r) {
            int round = ++rounds_done_;
            std::vector<VarSet> gens = generators_;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                for (std::size_t j = mode == Closure::all_placements ? i : i + 1; j < gens.size(); ++j) {
                    if (mode != Closure::all_placements) {
                        add(gens[i] | gens[j], Provenance::closure_depth, round);
                        add(gens[i] & gens[j], Provenance::closure_depth, round);
                        continue;
                    }
                    for (VarSet b : u_->orbit(gens[j])) {
                        add(gens[i] | b, Provenance::closure_depth, round);
                        add(gens[i] & b, Provenance::closure_depth, round);
                    }
                }
                if (mode == Closure::extended)
                    for (int v = 0; v < u_->size(); ++v)
                        if (!gens[i].contains(v))
                            add(gens[i] | VarSet(VarSet::bits_type{1} << v), Provenance::closure_depth, round, true);
            }
        }
    }

    int rounds_done() const { return rounds_done_; }

  private:
    bool is_generator(VarSet s) const {
        return generator_set_.find(s.bits()) != generator_set_.end();
    }
    void push_generator(VarSet s) {
        if (generator_set_.emplace(s.bits(), generators_.size()).second) generators_.push_back(s);
    }

    const Universe* u_;
    std::size_t cap_;
    std::vector<FamilyMember> members_;
    std::unordered_map<VarSet::bits_type, std::size_t> images_;
    std::vector<VarSet> generators_;
    std::unordered_map<VarSet::bits_type, std::size_t> generator_set_;
    int rounds_done_ = 0;
};

// Seeds first (their concrete alignment is kept), then every singleton
// variable, node-only subsets {W_1..W_m}, and helper fans
// {W_1..W_m} u {S_{x->m+1} : x in C} for consecutive source sets C of every
// size; finally `depth` extended closure rounds.
inline SubsetFamily default_family(const Universe& u, std::span<const VarSet> seeds, int depth,
                                   std::size_t cap = SubsetFamily::default_cap) {
    if (depth < 0) throw std::invalid_argument("family depth must be nonnegative");
    SubsetFamily fam(u, cap);
    for (VarSet s : seeds) {
        if (!u.contains(s)) throw std::invalid_argument("seed set lies outside the universe");
        fam.add(s, Provenance::seed);
    }
    for (int v = 0; v < u.size(); ++v) fam.add(VarSet(VarSet::bits_type{1} << v), Provenance::singleton);
    VarSet prefix;
    for (int m = 0; m < u.k(); ++m) {
        if (m > 0) {
            prefix |= u.node(m);
            fam.add(prefix, Provenance::node_subsets);
        }
        int target = m + 1;
        VarSet fan = prefix;
        for (int x = m + 2; x <= u.n(); ++x) {
            fan |= u.helper(x, target);
            fam.add(fan, Provenance::helper_augmented);
        }
    }
    fam.close(depth, SubsetFamily::Closure::extended);
    return fam;
}

}  // namespace erb
