#pragma once

// All sub-modularity and monotonicity instances whose arguments fall inside
// a subset family (with the empty and spanning classes always available),
// together with the storage/bandwidth caps.

#include "erbound/family.hpp"
#include "erbound/instance.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace erb {

namespace detail {

// Compact column ids used while enumerating: 0 alpha, 1 beta, 2 B, 3+i class i.
inline constexpr int compact_alpha = 0;
inline constexpr int compact_beta = 1;
inline constexpr int compact_b = 2;
inline constexpr int compact_offset = 3;

using CompactRow = std::vector<std::pair<int, int>>;

inline void compact_add(CompactRow& row, int col, int q) {
    for (auto& [c, v] : row)
        if (c == col) {
            v += q;
            return;
        }
    row.emplace_back(col, q);
}

inline CompactRow compact_normalize(CompactRow row) {
    row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second == 0; }), row.end());
    std::sort(row.begin(), row.end());
    return row;
}

}  // namespace detail

inline ConstraintSet shannon_cone(const SubsetFamily& fam) {
    using namespace detail;
    const Universe& u = fam.universe();
    const std::size_t f = fam.size();

    std::vector<VarSet> reps(f);
    std::vector<std::vector<VarSet>> orbits(f);
    for (std::size_t i = 0; i < f; ++i) {
        reps[i] = fam.members()[i].cls.rep;
        orbits[i] = u.orbit(reps[i]);
    }
    // Column of a closed set: -1 empty, compact_b spanning, class id, or -2 if absent.
    auto column_of = [&](VarSet closed) -> int {
        if (closed.empty()) return -1;
        if (closed == u.full()) return compact_b;
        auto idx = fam.find(closed);
        return idx ? compact_offset + static_cast<int>(*idx) : -2;
    };

    std::set<CompactRow> seen;
    std::vector<std::pair<RowKind, CompactRow>> rows;
    auto emit = [&](RowKind kind, CompactRow row) {
        row = compact_normalize(std::move(row));
        if (row.empty()) return;
        if (seen.insert(row).second) rows.emplace_back(kind, std::move(row));
    };

    if (auto w = fam.find(u.closure(u.node(1))))
        emit(RowKind::storage_cap, {{compact_alpha, 1}, {compact_offset + static_cast<int>(*w), -1}});
    if (auto s = fam.find(u.closure(u.helper(1, 2))))
        emit(RowKind::bandwidth_cap, {{compact_beta, 1}, {compact_offset + static_cast<int>(*s), -1}});

    for (std::size_t i = 0; i < f; ++i) {
        const int ci = compact_offset + static_cast<int>(i);
        emit(RowKind::spanning_value, {{compact_b, 1}, {ci, -1}});
        const VarSet a = reps[i];
        for (std::size_t j = i; j < f; ++j) {
            const int cj = compact_offset + static_cast<int>(j);
            for (VarSet b : orbits[j]) {
                if (a == b) continue;
                if (a.is_subset_of(b)) {
                    emit(RowKind::monotonicity, {{cj, 1}, {ci, -1}});
                    continue;
                }
                if (b.is_subset_of(a)) {
                    emit(RowKind::monotonicity, {{ci, 1}, {cj, -1}});
                    continue;
                }
                int cu = column_of(u.closure(a | b));
                if (cu == -2) continue;
                int cn = column_of(a & b);
                if (cn == -2) continue;
                CompactRow row;
                compact_add(row, ci, 1);
                compact_add(row, cj, 1);
                compact_add(row, cu, -1);
                if (cn >= 0) compact_add(row, cn, -1);
                emit(RowKind::submodularity, std::move(row));
            }
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return static_cast<int>(x.first) < static_cast<int>(y.first);
        return x.second < y.second;
    });

    auto to_column = [&](int c) -> Column {
        switch (c) {
            case compact_alpha: return Column::alpha();
            case compact_beta: return Column::beta();
            case compact_b: return Column::big_b();
            default: return Column::entropy(fam.members()[static_cast<std::size_t>(c - compact_offset)].cls);
        }
    };
    ConstraintSet out;
    out.rows.reserve(rows.size());
    for (const auto& [kind, row] : rows) {
        LinExpr e;
        for (const auto& [c, q] : row) e.add(to_column(c), q);
        out.rows.push_back({kind, std::move(e)});
    }
    return out;
}

}  // namespace erb
