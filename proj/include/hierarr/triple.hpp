// Triple: one (row key, column key, value) update record.
//
// Keys are arbitrary UTF-8 byte strings ordered byte-wise. TAB and LF are
// reserved by the TSV interchange format and rejected everywhere, as are
// empty keys.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "hierarr/error.hpp"

namespace hierarr {

template <typename T>
struct basic_triple {
    std::string row;
    std::string col;
    T val{};

    friend bool operator==(const basic_triple&, const basic_triple&) = default;
};

using triple = basic_triple<std::int64_t>;

inline bool valid_key(std::string_view key) {
    return !key.empty() && key.find('\t') == std::string_view::npos &&
           key.find('\n') == std::string_view::npos;
}

// Throws malformed_key_error naming the offending triple index.
template <typename T>
void validate_triples(std::span<const basic_triple<T>> triples) {
    for (std::size_t i = 0; i < triples.size(); ++i) {
        if (!valid_key(triples[i].row) || !valid_key(triples[i].col)) {
            throw malformed_key_error(
                "triple " + std::to_string(i) +
                ": keys must be non-empty and free of TAB/LF");
        }
    }
}

} // namespace hierarr
