// Exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace hierarr {

// A row or column key violated the key rules (empty, or contains TAB/LF).
class malformed_key_error : public std::runtime_error {
public:
    explicit malformed_key_error(const std::string& what) : std::runtime_error(what) {}
};

// Signed 64-bit arithmetic overflowed during an accumulate or combine.
class value_overflow_error : public std::runtime_error {
public:
    explicit value_overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// A TSV triple file failed to parse; message carries path and 1-based line.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A benchmark worker's materialized result did not match its input stream.
class verification_error : public std::runtime_error {
public:
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hierarr
