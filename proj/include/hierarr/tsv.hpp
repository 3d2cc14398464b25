// TSV triple files: one triple per line as row TAB col TAB decimal-value LF,
// no header, no escaping. Keys must be TAB/LF-free, so save then load
// reproduces the triple sequence exactly. Loading accepts CRLF line endings
// (one trailing CR per line is stripped) and a missing final newline.

#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hierarr/error.hpp"
#include "hierarr/triple.hpp"

namespace hierarr {

// Writes triples in input order; returns the number of lines written.
inline std::uint64_t save_tsv(std::span<const triple> triples, const std::filesystem::path& path) {
    for (std::size_t i = 0; i < triples.size(); ++i) {
        if (!valid_key(triples[i].row) || !valid_key(triples[i].col)) {
            throw malformed_key_error("line " + std::to_string(i + 1) +
                                      ": keys must be non-empty and free of TAB/LF");
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("save_tsv: cannot open " + path.string());
    }
    std::string buf;
    buf.reserve(1 << 16);
    for (const triple& t : triples) {
        buf += t.row;
        buf += '\t';
        buf += t.col;
        buf += '\t';
        buf += std::to_string(t.val);
        buf += '\n';
        if (buf.size() >= (1 << 16) - 4096) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw std::runtime_error("save_tsv: write failed for " + path.string());
    }
    return triples.size();
}

inline std::vector<triple> load_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("load_tsv: cannot open " + path.string());
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw std::runtime_error("load_tsv: read failed for " + path.string());
    }

    std::vector<triple> out;
    std::size_t pos = 0;
    std::uint64_t line_no = 0;
    auto fail = [&](const std::string& reason) -> parse_error {
        return parse_error(path.string() + ":" + std::to_string(line_no) + ": " + reason);
    };
    while (pos < content.size()) {
        ++line_no;
        std::size_t eol = content.find('\n', pos);
        std::size_t end = eol == std::string::npos ? content.size() : eol;
        std::string_view line(content.data() + pos, end - pos);
        pos = eol == std::string::npos ? content.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t tab1 = line.find('\t');
        std::size_t tab2 = tab1 == std::string_view::npos ? std::string_view::npos
                                                          : line.find('\t', tab1 + 1);
        if (tab1 == std::string_view::npos || tab2 == std::string_view::npos ||
            line.find('\t', tab2 + 1) != std::string_view::npos) {
            throw fail("expected 3 tab-separated fields");
        }
        std::string_view row = line.substr(0, tab1);
        std::string_view col = line.substr(tab1 + 1, tab2 - tab1 - 1);
        std::string_view val = line.substr(tab2 + 1);
        if (row.empty() || col.empty()) {
            throw fail("empty key");
        }
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || ptr != val.data() + val.size()) {
            throw fail("non-integer value '" + std::string(val) + "'");
        }
        out.push_back(triple{std::string(row), std::string(col), v});
    }
    return out;
}

} // namespace hierarr
