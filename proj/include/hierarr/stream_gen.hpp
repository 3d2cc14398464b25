// Seedable power-law edge-stream generator.
//
// Vertex IDs for source and destination are drawn independently from a
// Zipf(alpha) distribution over [1, vertex_count] via an inverse-CDF table.
// Each batch runs its own splitmix64 stream seeded from (seed, batch_index),
// and every sample consumes exactly one 64-bit draw, so batches are
// generatable in any order, in parallel, with identical content. Output is
// reproducible for a fixed seed; the CDF table is built with std::pow in a
// fixed summation order, so byte-identical streams across platforms assume
// matching libm rounding.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hierarr/triple.hpp"

namespace hierarr {

inline constexpr std::uint64_t splitmix64_gamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix_bits(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    return mix_bits(state += splitmix64_gamma);
}

// Deterministic combine for deriving per-batch and per-worker seeds.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix_bits(a + splitmix64_gamma * (b + 1));
}

inline double to_unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

enum class key_format { decimal, dotted_quad };

// decimal: base-10. dotted-quad: the four bytes of the 32-bit ID joined by
// '.', most significant first (16909060 = 0x01020304 -> "1.2.3.4").
inline std::string format_key(std::uint64_t vertex_id, key_format fmt) {
    if (fmt == key_format::decimal) return std::to_string(vertex_id);
    if (vertex_id > 0xFFFFFFFFull) {
        throw std::invalid_argument("dotted-quad keys require vertex ids below 2^32, got " +
                                    std::to_string(vertex_id));
    }
    std::string out;
    out.reserve(15);
    out += std::to_string((vertex_id >> 24) & 0xFF);
    out += '.';
    out += std::to_string((vertex_id >> 16) & 0xFF);
    out += '.';
    out += std::to_string((vertex_id >> 8) & 0xFF);
    out += '.';
    out += std::to_string(vertex_id & 0xFF);
    return out;
}

struct stream_config {
    std::uint64_t total_entries = 100'000'000;
    std::uint64_t batch_size = 100'000;
    std::uint64_t num_batches = 1'000;
    std::uint64_t vertex_count = 1u << 24;
    double alpha = 1.2;
    std::uint64_t seed = 1;
    key_format fmt = key_format::decimal;

    void validate() const {
        if (batch_size == 0 || num_batches == 0) {
            throw std::invalid_argument("batch_size and num_batches must be positive");
        }
        if (total_entries != batch_size * num_batches) {
            throw std::invalid_argument("total_entries must equal batch_size * num_batches");
        }
        if (vertex_count < 2) {
            throw std::invalid_argument("vertex_count must be at least 2");
        }
        if (!(alpha > 0.0)) {
            throw std::invalid_argument("alpha must be positive");
        }
        if (fmt == key_format::dotted_quad && vertex_count > 0xFFFFFFFFull) {
            throw std::invalid_argument("dotted-quad keys require vertex_count below 2^32");
        }
    }
};

// Inverse-CDF sampler for P(i) proportional to i^-alpha over [1, n]. One
// uniform draw maps to one vertex by binary search; sampling never touches
// shared mutable state, so a const table can back many threads.
class zipf_table {
public:
    zipf_table(std::uint64_t n, double alpha) : n_(n), alpha_(alpha) {
        cdf_.resize(n);
        double total = 0.0;
        for (std::uint64_t i = 1; i <= n; ++i) {
            total += std::pow(static_cast<double>(i), -alpha);
            cdf_[i - 1] = total;
        }
        for (double& c : cdf_) c /= total;
        cdf_.back() = 1.0;
    }

    std::uint64_t vertex_count() const { return n_; }
    double alpha() const { return alpha_; }

    std::uint64_t sample(std::uint64_t bits) const {
        double u = to_unit_interval(bits);
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) --it;
        return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
    }

private:
    std::uint64_t n_;
    double alpha_;
    std::vector<double> cdf_;
};

class stream_generator {
public:
    explicit stream_generator(stream_config cfg)
        : stream_generator(cfg, std::make_shared<const zipf_table>(cfg.vertex_count, cfg.alpha)) {}

    // Shares a prebuilt table across generators; the table must match the
    // config's vertex_count and alpha.
    stream_generator(stream_config cfg, std::shared_ptr<const zipf_table> table)
        : cfg_(cfg), table_(std::move(table)) {
        cfg_.validate();
        if (table_->vertex_count() != cfg_.vertex_count || table_->alpha() != cfg_.alpha) {
            throw std::invalid_argument("shared zipf table does not match stream config");
        }
    }

    const stream_config& config() const { return cfg_; }

    // Exactly batch_size triples with value 1; fully determined by
    // (seed, batch_index).
    std::vector<triple> batch(std::uint64_t batch_index) const {
        if (batch_index >= cfg_.num_batches) {
            throw std::out_of_range("batch index " + std::to_string(batch_index) +
                                    " out of range [0, " + std::to_string(cfg_.num_batches) + ")");
        }
        std::uint64_t state = mix64(cfg_.seed, batch_index);
        std::vector<triple> out;
        out.reserve(cfg_.batch_size);
        for (std::uint64_t k = 0; k < cfg_.batch_size; ++k) {
            std::uint64_t src = table_->sample(splitmix64_next(state));
            std::uint64_t dst = table_->sample(splitmix64_next(state));
            out.push_back(triple{format_key(src, cfg_.fmt), format_key(dst, cfg_.fmt), 1});
        }
        return out;
    }

private:
    stream_config cfg_;
    std::shared_ptr<const zipf_table> table_;
};

// Rank-frequency slope of the out-degree distribution: least-squares fit of
// log(count) against log(rank) over the top min(1000, #sources) ranks. A
// Zipf(alpha) stream fits near -alpha; a uniform stream fits near 0.
inline double degree_check(std::span<const triple> triples) {
    constexpr std::size_t min_samples = 100'000;
    if (triples.size() < min_samples) {
        throw std::invalid_argument("degree_check needs at least " +
                                    std::to_string(min_samples) + " triples, got " +
                                    std::to_string(triples.size()));
    }
    std::unordered_map<std::string_view, std::uint64_t> out_degree;
    out_degree.reserve(triples.size() / 4);
    for (const triple& t : triples) out_degree[t.row]++;

    if (out_degree.size() < 10) {
        throw std::invalid_argument("degenerate degree distribution: only " +
                                    std::to_string(out_degree.size()) + " distinct sources");
    }
    std::vector<std::uint64_t> counts;
    counts.reserve(out_degree.size());
    for (const auto& [key, c] : out_degree) counts.push_back(c);
    std::sort(counts.begin(), counts.end(), std::greater<>());

    std::size_t ranks = std::min<std::size_t>(counts.size(), 1000);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t r = 0; r < ranks; ++r) {
        double x = std::log(static_cast<double>(r + 1));
        double y = std::log(static_cast<double>(counts[r]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(ranks);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace hierarr
