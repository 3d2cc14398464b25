// Sparse string-keyed associative array with semiring algebra.
//
// Representation is row-major compressed sparse form: sorted unique key
// vectors for rows and columns, a row pointer array, and per-row sorted
// column indices. The form is canonical:
//   - key vectors strictly ascending (byte-wise lexicographic),
//   - no stored value equals the additive identity T{},
//   - every row key and column key is referenced by at least one entry.
// Canonical form makes operator== structural equality of the mapping.
//
// Arrays are values: every operation returns a new array and mutates
// nothing, so instances can move freely between threads.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hierarr/semiring.hpp"
#include "hierarr/triple.hpp"

namespace hierarr {

template <typename T>
class basic_assoc_array;

template <typename T>
basic_assoc_array<T> add(const basic_assoc_array<T>& a, const basic_assoc_array<T>& b);

template <typename T, typename F>
basic_assoc_array<T> elementwise_multiply(const basic_assoc_array<T>& a,
                                          const basic_assoc_array<T>& b, F times);

template <typename T>
basic_assoc_array<T> semiring_matmul(const basic_assoc_array<T>& a,
                                     const basic_assoc_array<T>& b, const semiring<T>& sr);

template <typename T>
class basic_assoc_array {
public:
    using value_type = T;
    using triple_type = basic_triple<T>;
    using index_type = std::uint32_t;

    basic_assoc_array() = default;

    // Block construction: sorts the batch, folds duplicate (row, col) pairs
    // with `collision` (associative and commutative), drops zero results and
    // any key left without entries. Rejects malformed keys naming the
    // offending triple index; on throw nothing is constructed.
    template <typename F = checked_plus<T>>
    static basic_assoc_array from_triples(std::span<const triple_type> triples,
                                          F collision = F{}) {
        validate_triples(triples);
        if (triples.empty()) return {};

        std::vector<std::string_view> rk = collect_keys(triples, /*rows=*/true);
        std::vector<std::string_view> ck = collect_keys(triples, /*rows=*/false);

        std::vector<entry> entries;
        entries.reserve(triples.size());
        for (const triple_type& t : triples) {
            entries.push_back(entry{key_index(rk, t.row), key_index(ck, t.col), t.val});
        }
        std::sort(entries.begin(), entries.end(), entry_order);

        // Fold runs of equal (row, col); keep non-zero results.
        std::vector<entry> folded;
        folded.reserve(entries.size());
        for (std::size_t i = 0; i < entries.size();) {
            entry acc = entries[i];
            std::size_t j = i + 1;
            for (; j < entries.size() && entries[j].r == acc.r && entries[j].c == acc.c; ++j) {
                acc.v = collision(acc.v, entries[j].v);
            }
            if (acc.v != T{}) folded.push_back(acc);
            i = j;
        }

        return build_compact(materialize_keys(rk), materialize_keys(ck), std::move(folded));
    }

    std::size_t nnz() const { return vals_.size(); }
    bool empty() const { return vals_.empty(); }

    const std::vector<std::string>& row_keys() const { return row_keys_; }
    const std::vector<std::string>& col_keys() const { return col_keys_; }

    // Value at (row, col), or T{} when absent.
    T get(std::string_view row, std::string_view col) const {
        std::size_t r = find_key(row_keys_, row);
        if (r == npos) return T{};
        std::size_t c = find_key(col_keys_, col);
        if (c == npos) return T{};
        auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
        auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
        auto it = std::lower_bound(first, last, static_cast<index_type>(c));
        if (it == last || *it != static_cast<index_type>(c)) return T{};
        return vals_[static_cast<std::size_t>(it - col_idx_.begin())];
    }

    // Single-row sub-array; its column keys are exactly the neighbor set of
    // `row`. Absent row yields the empty array.
    basic_assoc_array row_query(std::string_view row) const {
        std::size_t r = find_key(row_keys_, row);
        if (r == npos) return {};
        basic_assoc_array out;
        std::size_t begin = row_ptr_[r];
        std::size_t end = row_ptr_[r + 1];
        out.row_keys_.emplace_back(row);
        out.col_keys_.reserve(end - begin);
        out.col_idx_.reserve(end - begin);
        out.vals_.reserve(end - begin);
        for (std::size_t k = begin; k < end; ++k) {
            out.col_keys_.push_back(col_keys_[col_idx_[k]]);
            out.col_idx_.push_back(static_cast<index_type>(k - begin));
            out.vals_.push_back(vals_[k]);
        }
        out.row_ptr_.push_back(out.vals_.size());
        return out;
    }

    // (r,c) -> (c,r). Involution: transpose(transpose(A)) == A.
    basic_assoc_array transpose() const {
        basic_assoc_array out;
        out.row_keys_ = col_keys_;
        out.col_keys_ = row_keys_;
        out.row_ptr_.assign(col_keys_.size() + 1, 0);
        for (index_type c : col_idx_) out.row_ptr_[c + 1]++;
        for (std::size_t i = 1; i < out.row_ptr_.size(); ++i) out.row_ptr_[i] += out.row_ptr_[i - 1];
        out.col_idx_.resize(vals_.size());
        out.vals_.resize(vals_.size());
        std::vector<std::size_t> cursor(out.row_ptr_.begin(), out.row_ptr_.end() - 1);
        for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                std::size_t slot = cursor[col_idx_[k]]++;
                out.col_idx_[slot] = static_cast<index_type>(r);
                out.vals_[slot] = vals_[k];
            }
        }
        return out;
    }

    // Triples sorted by (row, col); from_triples(to_triples(A)) == A.
    std::vector<triple_type> to_triples() const {
        std::vector<triple_type> out;
        out.reserve(vals_.size());
        for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                out.push_back(triple_type{row_keys_[r], col_keys_[col_idx_[k]], vals_[k]});
            }
        }
        return out;
    }

    friend bool operator==(const basic_assoc_array&, const basic_assoc_array&) = default;

    template <typename U>
    friend basic_assoc_array<U> add(const basic_assoc_array<U>&, const basic_assoc_array<U>&);
    template <typename U, typename F>
    friend basic_assoc_array<U> elementwise_multiply(const basic_assoc_array<U>&,
                                                     const basic_assoc_array<U>&, F);
    template <typename U>
    friend basic_assoc_array<U> semiring_matmul(const basic_assoc_array<U>&,
                                                const basic_assoc_array<U>&,
                                                const semiring<U>&);

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    static constexpr index_type no_index = std::numeric_limits<index_type>::max();

    struct entry {
        index_type r;
        index_type c;
        T v;
    };

    static bool entry_order(const entry& a, const entry& b) {
        return a.r != b.r ? a.r < b.r : a.c < b.c;
    }

    template <typename Seq>
    static std::vector<std::string_view> collect_keys(const Seq& triples, bool rows) {
        std::vector<std::string_view> keys;
        keys.reserve(triples.size());
        for (const auto& t : triples) keys.push_back(rows ? t.row : t.col);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        if (keys.size() > static_cast<std::size_t>(no_index)) {
            throw std::length_error("key space exceeds index width");
        }
        return keys;
    }

    static std::vector<std::string> materialize_keys(const std::vector<std::string_view>& views) {
        return {views.begin(), views.end()};
    }

    static index_type key_index(const std::vector<std::string_view>& keys, std::string_view k) {
        auto it = std::lower_bound(keys.begin(), keys.end(), k);
        return static_cast<index_type>(it - keys.begin());
    }

    static std::size_t find_key(const std::vector<std::string>& keys, std::string_view k) {
        auto it = std::lower_bound(keys.begin(), keys.end(), k);
        if (it == keys.end() || *it != k) return npos;
        return static_cast<std::size_t>(it - keys.begin());
    }

    // Assemble canonical form from entries sorted by (r, c) with no zero
    // values and no duplicate pairs. Keys without entries are dropped and
    // indices remapped.
    static basic_assoc_array build_compact(std::vector<std::string>&& rk,
                                           std::vector<std::string>&& ck,
                                           std::vector<entry>&& entries) {
        basic_assoc_array out;
        if (entries.empty()) return out;

        std::vector<index_type> row_map(rk.size(), no_index);
        std::vector<index_type> col_map(ck.size(), no_index);
        for (const entry& e : entries) {
            row_map[e.r] = 0;
            col_map[e.c] = 0;
        }
        index_type nr = 0;
        for (std::size_t i = 0; i < rk.size(); ++i) {
            if (row_map[i] != no_index) {
                row_map[i] = nr++;
                out.row_keys_.push_back(std::move(rk[i]));
            }
        }
        index_type nc = 0;
        for (std::size_t i = 0; i < ck.size(); ++i) {
            if (col_map[i] != no_index) {
                col_map[i] = nc++;
                out.col_keys_.push_back(std::move(ck[i]));
            }
        }

        out.row_ptr_.assign(static_cast<std::size_t>(nr) + 1, 0);
        out.col_idx_.reserve(entries.size());
        out.vals_.reserve(entries.size());
        for (const entry& e : entries) {
            out.row_ptr_[row_map[e.r] + 1]++;
            out.col_idx_.push_back(col_map[e.c]);
            out.vals_.push_back(e.v);
        }
        for (std::size_t i = 1; i < out.row_ptr_.size(); ++i) {
            out.row_ptr_[i] += out.row_ptr_[i - 1];
        }
        return out;
    }

    // Union-merge of two sorted key vectors. Fills per-input remaps to union
    // indices; the remaps are strictly monotone, so remapped index streams
    // stay sorted.
    static std::vector<std::string> merge_keys(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b,
                                               std::vector<index_type>& remap_a,
                                               std::vector<index_type>& remap_b) {
        std::vector<std::string> out;
        out.reserve(a.size() + b.size());
        remap_a.resize(a.size());
        remap_b.resize(b.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() || j < b.size()) {
            int cmp;
            if (i == a.size()) {
                cmp = 1;
            } else if (j == b.size()) {
                cmp = -1;
            } else {
                cmp = a[i].compare(b[j]);
                cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
            }
            auto u = static_cast<index_type>(out.size());
            if (cmp <= 0) {
                out.push_back(a[i]);
                remap_a[i++] = u;
            } else {
                out.push_back(b[j]);
            }
            if (cmp >= 0 && j < b.size()) remap_b[j++] = u;
        }
        return out;
    }

    std::vector<std::string> row_keys_;
    std::vector<std::string> col_keys_;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<index_type> col_idx_;
    std::vector<T> vals_;
};

using assoc_array = basic_assoc_array<std::int64_t>;

// Element-wise union with overflow-checked plus: keys are the union of the
// inputs' keys, values combined where both sides have an entry. Exact
// cancellation drops the entry and any key it leaves dangling.
template <typename T>
basic_assoc_array<T> add(const basic_assoc_array<T>& a, const basic_assoc_array<T>& b) {
    using array = basic_assoc_array<T>;
    using index_type = typename array::index_type;
    using entry = typename array::entry;
    if (a.empty()) return b;
    if (b.empty()) return a;

    std::vector<index_type> row_map_a, row_map_b, col_map_a, col_map_b;
    std::vector<std::string> urk = array::merge_keys(a.row_keys_, b.row_keys_, row_map_a, row_map_b);
    std::vector<std::string> uck = array::merge_keys(a.col_keys_, b.col_keys_, col_map_a, col_map_b);

    // Locate each input row under the union row index.
    std::vector<index_type> a_row(urk.size(), array::no_index);
    std::vector<index_type> b_row(urk.size(), array::no_index);
    for (std::size_t i = 0; i < row_map_a.size(); ++i) a_row[row_map_a[i]] = static_cast<index_type>(i);
    for (std::size_t i = 0; i < row_map_b.size(); ++i) b_row[row_map_b[i]] = static_cast<index_type>(i);

    std::vector<entry> entries;
    entries.reserve(a.nnz() + b.nnz());
    for (std::size_t u = 0; u < urk.size(); ++u) {
        index_type ra = a_row[u];
        index_type rb = b_row[u];
        std::size_t ia = ra == array::no_index ? 0 : a.row_ptr_[ra];
        std::size_t ea = ra == array::no_index ? 0 : a.row_ptr_[ra + 1];
        std::size_t ib = rb == array::no_index ? 0 : b.row_ptr_[rb];
        std::size_t eb = rb == array::no_index ? 0 : b.row_ptr_[rb + 1];
        auto uidx = static_cast<index_type>(u);
        while (ia < ea || ib < eb) {
            index_type ca = ia < ea ? col_map_a[a.col_idx_[ia]] : array::no_index;
            index_type cb = ib < eb ? col_map_b[b.col_idx_[ib]] : array::no_index;
            if (ca < cb) {
                entries.push_back(entry{uidx, ca, a.vals_[ia++]});
            } else if (cb < ca) {
                entries.push_back(entry{uidx, cb, b.vals_[ib++]});
            } else {
                T v = checked_add<T>(a.vals_[ia++], b.vals_[ib++]);
                if (v != T{}) entries.push_back(entry{uidx, ca, v});
            }
        }
    }
    return array::build_compact(std::move(urk), std::move(uck), std::move(entries));
}

// Intersection semantics: only (row, col) pairs present in both inputs
// survive, combined with `times`. Zero results are dropped.
template <typename T, typename F>
basic_assoc_array<T> elementwise_multiply(const basic_assoc_array<T>& a,
                                          const basic_assoc_array<T>& b, F times) {
    using array = basic_assoc_array<T>;
    using index_type = typename array::index_type;
    using entry = typename array::entry;
    if (a.empty() || b.empty()) return {};

    // a-index -> b-index for keys present in both, else no_index.
    auto match = [](const std::vector<std::string>& ka, const std::vector<std::string>& kb) {
        std::vector<index_type> m(ka.size(), array::no_index);
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < ka.size() && j < kb.size()) {
            int cmp = ka[i].compare(kb[j]);
            if (cmp < 0) {
                ++i;
            } else if (cmp > 0) {
                ++j;
            } else {
                m[i++] = static_cast<index_type>(j++);
            }
        }
        return m;
    };
    std::vector<index_type> row_match = match(a.row_keys_, b.row_keys_);
    std::vector<index_type> col_match = match(a.col_keys_, b.col_keys_);

    std::vector<entry> entries;
    for (std::size_t ra = 0; ra < a.row_keys_.size(); ++ra) {
        index_type rb = row_match[ra];
        if (rb == array::no_index) continue;
        std::size_t ia = a.row_ptr_[ra];
        std::size_t ea = a.row_ptr_[ra + 1];
        std::size_t ib = b.row_ptr_[rb];
        std::size_t eb = b.row_ptr_[rb + 1];
        while (ia < ea && ib < eb) {
            index_type ca = col_match[a.col_idx_[ia]];
            index_type cb = b.col_idx_[ib];
            if (ca == array::no_index || ca < cb) {
                ++ia;
            } else if (cb < ca) {
                ++ib;
            } else {
                T v = times(a.vals_[ia], b.vals_[ib]);
                if (v != T{}) {
                    entries.push_back(entry{static_cast<index_type>(ra), a.col_idx_[ia], v});
                }
                ++ia;
                ++ib;
            }
        }
    }
    auto rk = a.row_keys_;
    auto ck = a.col_keys_;
    return array::build_compact(std::move(rk), std::move(ck), std::move(entries));
}

// Semiring matrix product: entry (r, c) is the sr.plus-fold over shared key
// k of sr.times(A[r,k], B[k,c]), where A's column keys are matched to B's
// row keys by string equality. Row-by-row sparse accumulation.
template <typename T>
basic_assoc_array<T> semiring_matmul(const basic_assoc_array<T>& a,
                                     const basic_assoc_array<T>& b, const semiring<T>& sr) {
    using array = basic_assoc_array<T>;
    using index_type = typename array::index_type;
    using entry = typename array::entry;
    if (a.empty() || b.empty()) return {};

    std::vector<index_type> kmap(a.col_keys_.size(), array::no_index);
    {
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.col_keys_.size() && j < b.row_keys_.size()) {
            int cmp = a.col_keys_[i].compare(b.row_keys_[j]);
            if (cmp < 0) {
                ++i;
            } else if (cmp > 0) {
                ++j;
            } else {
                kmap[i++] = static_cast<index_type>(j++);
            }
        }
    }

    std::vector<T> acc(b.col_keys_.size());
    std::vector<char> present(b.col_keys_.size(), 0);
    std::vector<index_type> touched;
    std::vector<entry> entries;

    for (std::size_t ra = 0; ra < a.row_keys_.size(); ++ra) {
        touched.clear();
        for (std::size_t ka = a.row_ptr_[ra]; ka < a.row_ptr_[ra + 1]; ++ka) {
            index_type rb = kmap[a.col_idx_[ka]];
            if (rb == array::no_index) continue;
            T va = a.vals_[ka];
            for (std::size_t kb = b.row_ptr_[rb]; kb < b.row_ptr_[rb + 1]; ++kb) {
                index_type c = b.col_idx_[kb];
                T t = sr.times(va, b.vals_[kb]);
                if (present[c]) {
                    acc[c] = sr.plus(acc[c], t);
                } else {
                    acc[c] = t;
                    present[c] = 1;
                    touched.push_back(c);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (index_type c : touched) {
            if (acc[c] != sr.zero) {
                entries.push_back(entry{static_cast<index_type>(ra), c, acc[c]});
            }
            present[c] = 0;
        }
    }
    auto rk = a.row_keys_;
    auto ck = b.col_keys_;
    return array::build_compact(std::move(rk), std::move(ck), std::move(entries));
}

template <typename T>
std::size_t nnz(const basic_assoc_array<T>& a) {
    return a.nnz();
}

} // namespace hierarr
