#pragma once

// Functional-repair (cut-set) tradeoff  B <= sum_{i<k} min(alpha, (d-i) beta)
// and its linear facets  j*alpha + w_j*beta >= 1,  w_j = sum_{i=j}^{k-1} (d-i).

#include "erbound/rational.hpp"
#include "erbound/region.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace erb {

struct CutsetBound {
    int n = 0;
    int k = 0;
    int d = 0;
    std::vector<HalfPlane> facets;  // facets[j]: j*alpha + w_j*beta >= 1
};

inline CutsetBound cutset_facets(int n, int k, int d) {
    if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("cut-set parameters need 1 <= k <= n-1");
    if (d != n - 1) throw std::invalid_argument("only d = n-1 is supported");
    CutsetBound cb{n, k, d, {}};
    for (int j = 0; j <= k; ++j) {
        long w = 0;
        for (int i = j; i <= k - 1; ++i) w += d - i;
        cb.facets.emplace_back(Rational(j), Rational(w), Rational(1));
    }
    return cb;
}

inline Rational cutset_min_sum(const CutsetBound& cb, const Rational& alpha, const Rational& beta) {
    Rational s = 0;
    for (int i = 0; i < cb.k; ++i) {
        Rational t = Rational(cb.d - i) * beta;
        s += alpha < t ? alpha : t;
    }
    return s;
}

// Evaluates both the facet description and the min-sum form.
inline bool cutset_feasible(const CutsetBound& cb, const Rational& alpha, const Rational& beta) {
    bool by_facets = true;
    for (const auto& h : cb.facets) by_facets = by_facets && h.satisfied_by(alpha, beta);
    bool by_sum = cutset_min_sum(cb, alpha, beta) >= 1;
    if (by_facets != by_sum) throw std::logic_error("cut-set facet and min-sum evaluations disagree");
    return by_facets;
}

}  // namespace erb
