// Layered store over associative arrays.
//
// Updates land in the smallest layer; when a layer's entry count exceeds its
// cut threshold the layer is add-merged into the next one and cleared, and
// the cascade may chain upward within the same call. Queries sum layers
// without mutating them. Cut values tune performance only: materialize() is
// identical to a flat fold of the full update history for every schedule.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hierarr/assoc_array.hpp"

namespace hierarr {

// Strictly increasing positive non-zero-count thresholds c_1 < ... < c_{L-1}.
// An empty schedule means a single unbounded layer (flat store).
class cut_schedule {
public:
    cut_schedule() = default;

    explicit cut_schedule(std::vector<std::uint64_t> cuts) : cuts_(std::move(cuts)) {
        for (std::size_t i = 0; i < cuts_.size(); ++i) {
            if (cuts_[i] == 0) {
                throw std::invalid_argument("cut values must be positive");
            }
            if (i > 0 && cuts_[i] <= cuts_[i - 1]) {
                throw std::invalid_argument("cut values must be strictly increasing");
            }
        }
    }

    // Geometrically spaced defaults, roughly tracking memory-tier sizes.
    static cut_schedule default_schedule() {
        return cut_schedule({1u << 15, 1u << 19, 1u << 23});
    }

    const std::vector<std::uint64_t>& cuts() const { return cuts_; }
    std::size_t layer_count() const { return cuts_.size() + 1; }

    friend bool operator==(const cut_schedule&, const cut_schedule&) = default;

private:
    std::vector<std::uint64_t> cuts_;
};

struct hier_stats {
    std::vector<std::size_t> layer_nnz;
    std::vector<std::uint64_t> cascades; // threshold-triggered flushes per layer; last is always 0
    std::uint64_t lifetime_updates = 0;
};

template <typename T>
class basic_hier_array {
public:
    using array_type = basic_assoc_array<T>;
    using triple_type = basic_triple<T>;

    explicit basic_hier_array(cut_schedule schedule = cut_schedule())
        : schedule_(std::move(schedule)),
          layers_(schedule_.layer_count()),
          cascades_(schedule_.layer_count(), 0) {}

    // Folds the batch (collision = plus) into the smallest layer, then scans
    // layers in order: any layer whose nnz exceeds its cut is merged into the
    // next layer and cleared. Malformed triples are rejected before anything
    // is applied; arithmetic overflow mid-cascade leaves the layers valid
    // with the batch already counted.
    void insert_batch(std::span<const triple_type> batch) {
        if (batch.empty()) return;
        array_type delta = array_type::from_triples(batch); // validates; throws first
        layers_[0] = add(layers_[0], delta);
        lifetime_updates_ += batch.size();
        const auto& cuts = schedule_.cuts();
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            if (layers_[i].nnz() > cuts[i]) {
                layers_[i + 1] = add(layers_[i + 1], layers_[i]);
                layers_[i] = array_type{};
                ++cascades_[i];
            }
        }
    }

    // Sum of all layers; non-destructive. Equals from_triples over every
    // triple ever inserted, folded with plus.
    array_type materialize() const {
        array_type out;
        for (const array_type& layer : layers_) out = add(out, layer);
        return out;
    }

    // Destructive collapse: all layers summed into the last, lower layers
    // emptied. materialize() is unchanged by compaction.
    void compact() {
        array_type all = materialize();
        for (std::size_t i = 0; i + 1 < layers_.size(); ++i) layers_[i] = array_type{};
        layers_.back() = std::move(all);
    }

    // Neighbor query summed layer by layer; equals
    // materialize().row_query(row) without building the full collapse.
    array_type query_neighbors(std::string_view row) const {
        array_type out;
        for (const array_type& layer : layers_) out = add(out, layer.row_query(row));
        return out;
    }

    hier_stats stats() const {
        hier_stats s;
        s.layer_nnz.reserve(layers_.size());
        for (const array_type& layer : layers_) s.layer_nnz.push_back(layer.nnz());
        s.cascades = cascades_;
        s.lifetime_updates = lifetime_updates_;
        return s;
    }

    const cut_schedule& schedule() const { return schedule_; }
    const std::vector<array_type>& layers() const { return layers_; }
    std::uint64_t lifetime_updates() const { return lifetime_updates_; }

private:
    cut_schedule schedule_;
    std::vector<array_type> layers_;
    std::vector<std::uint64_t> cascades_;
    std::uint64_t lifetime_updates_ = 0;
};

using hier_array = basic_hier_array<std::int64_t>;

} // namespace hierarr
