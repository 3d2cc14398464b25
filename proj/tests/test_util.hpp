// Shared helpers for the test binaries.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "hierarr/assoc_array.hpp"

#include "oracles.hpp"

namespace testutil {

// Checks the canonical-form invariants through the public surface: strictly
// ascending key lists, triples sorted by (row, col), no stored zero, and no
// dangling keys. Returns an empty string when everything holds.
inline std::string canonical_violation(const hierarr::assoc_array& a) {
    auto strictly_ascending = [](const std::vector<std::string>& keys) {
        for (std::size_t i = 1; i < keys.size(); ++i) {
            if (!(keys[i - 1] < keys[i])) return false;
        }
        return true;
    };
    if (!strictly_ascending(a.row_keys())) return "row keys not strictly ascending";
    if (!strictly_ascending(a.col_keys())) return "col keys not strictly ascending";

    std::vector<hierarr::triple> ts = a.to_triples();
    if (ts.size() != a.nnz()) return "nnz disagrees with to_triples size";
    std::set<std::string> rows_seen, cols_seen;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i].val == 0) return "stored zero value";
        if (i > 0) {
            const auto& p = ts[i - 1];
            const auto& c = ts[i];
            if (!(p.row < c.row || (p.row == c.row && p.col < c.col))) {
                return "triples not strictly sorted by (row, col)";
            }
        }
        rows_seen.insert(ts[i].row);
        cols_seen.insert(ts[i].col);
    }
    if (std::vector<std::string>(rows_seen.begin(), rows_seen.end()) != a.row_keys()) {
        return "row keys do not match stored entries";
    }
    if (std::vector<std::string>(cols_seen.begin(), cols_seen.end()) != a.col_keys()) {
        return "col keys do not match stored entries";
    }
    return "";
}

inline bool matches_oracle(const hierarr::assoc_array& a, const oracle::entry_map& m) {
    return a.to_triples() == oracle::map_to_triples(m);
}

} // namespace testutil
