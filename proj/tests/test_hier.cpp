#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hierarr/hier_array.hpp"

#include "oracles.hpp"
#include "test_util.hpp"

using hierarr::assoc_array;
using hierarr::cut_schedule;
using hierarr::hier_array;
using hierarr::triple;
using testutil::canonical_violation;

namespace {

std::vector<triple> distinct_triples(int count, int start) {
    std::vector<triple> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(triple{"r" + std::to_string(start + i), "c" + std::to_string(start + i), 1});
    }
    return out;
}

std::vector<std::size_t> layer_nnz(const hier_array& h) {
    return h.stats().layer_nnz;
}

// Random insertion history over a small key pool; returns the batches.
std::vector<std::vector<triple>> random_history(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num_batches(1, 10);
    std::uniform_int_distribution<std::size_t> batch_len(0, 60);
    std::vector<std::vector<triple>> batches(num_batches(rng));
    for (auto& b : batches) b = oracle::random_triples(rng, batch_len(rng), 20);
    return batches;
}

cut_schedule random_schedule(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> layers(1, 4);
    std::uniform_int_distribution<std::uint64_t> step(1, 12);
    int n = layers(rng) - 1;
    std::vector<std::uint64_t> cuts;
    std::uint64_t c = 0;
    for (int i = 0; i < n; ++i) {
        c += step(rng);
        cuts.push_back(c);
    }
    return cut_schedule(cuts);
}

} // namespace

TEST_CASE("construction sets up empty layers per the schedule") {
    hier_array h(cut_schedule({4, 16}));
    REQUIRE(layer_nnz(h) == std::vector<std::size_t>{0, 0, 0});
    REQUIRE(h.stats().cascades == std::vector<std::uint64_t>{0, 0, 0});
    REQUIRE(h.stats().lifetime_updates == 0);

    hier_array flat{cut_schedule({})};
    REQUIRE(layer_nnz(flat) == std::vector<std::size_t>{0});
}

TEST_CASE("invalid cut schedules are rejected") {
    REQUIRE_THROWS_AS(cut_schedule({16, 4}), std::invalid_argument);
    REQUIRE_THROWS_AS(cut_schedule({4, 4}), std::invalid_argument);
    REQUIRE_THROWS_AS(cut_schedule({0}), std::invalid_argument);
}

TEST_CASE("insert cascades a layer once its cut is surpassed") {
    hier_array h(cut_schedule({4, 16}));
    h.insert_batch(distinct_triples(3, 0));
    REQUIRE(layer_nnz(h) == std::vector<std::size_t>{3, 0, 0});

    h.insert_batch(distinct_triples(3, 100));
    REQUIRE(layer_nnz(h) == std::vector<std::size_t>{0, 6, 0});

    hierarr::hier_stats s = h.stats();
    REQUIRE(s.cascades == std::vector<std::uint64_t>{1, 0, 0});
    REQUIRE(s.lifetime_updates == 6);
}

TEST_CASE("empty batch is a no-op") {
    hier_array h(cut_schedule({4, 16}));
    h.insert_batch(distinct_triples(3, 0));
    auto before = h.stats();
    h.insert_batch({});
    REQUIRE(h.stats().layer_nnz == before.layer_nnz);
    REQUIRE(h.stats().cascades == before.cascades);
    REQUIRE(h.stats().lifetime_updates == before.lifetime_updates);
}

TEST_CASE("cascades chain upward within one insert") {
    // One batch of 9 distinct pairs overflows every cut in turn.
    hier_array h(cut_schedule({2, 4}));
    h.insert_batch(distinct_triples(9, 0));
    REQUIRE(layer_nnz(h) == std::vector<std::size_t>{0, 0, 9});

    // The same 9 pairs in three batches follow the step-by-step flush rule.
    oracle::sim_hier sim({2, 4});
    hier_array h3(cut_schedule({2, 4}));
    for (int b = 0; b < 3; ++b) {
        auto batch = distinct_triples(3, b * 3);
        h3.insert_batch(batch);
        sim.insert(batch);
    }
    REQUIRE(layer_nnz(h3) == sim.layer_sizes());
    REQUIRE(h3.materialize().to_triples() == oracle::map_to_triples(sim.materialize()));
}

TEST_CASE("random histories match the reference simulator layer by layer") {
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 60; ++iter) {
        cut_schedule schedule = random_schedule(rng);
        hier_array h(schedule);
        oracle::sim_hier sim(schedule.cuts());
        for (const auto& batch : random_history(rng)) {
            h.insert_batch(batch);
            sim.insert(batch);
            REQUIRE(layer_nnz(h) == sim.layer_sizes());
        }
        REQUIRE(h.lifetime_updates() == sim.lifetime());
        REQUIRE(h.materialize().to_triples() == oracle::map_to_triples(sim.materialize()));
    }
}

TEST_CASE("malformed batches are rejected atomically") {
    hier_array h(cut_schedule({4}));
    h.insert_batch(distinct_triples(2, 0));
    auto before = h.stats();
    assoc_array snapshot = h.materialize();

    std::vector<triple> bad = distinct_triples(3, 50);
    bad.push_back(triple{"bad\tkey", "c", 1});
    REQUIRE_THROWS_AS(h.insert_batch(bad), hierarr::malformed_key_error);

    REQUIRE(h.stats().layer_nnz == before.layer_nnz);
    REQUIRE(h.stats().lifetime_updates == before.lifetime_updates);
    REQUIRE(h.materialize() == snapshot);
}

TEST_CASE("materialize sums all layers without mutating them") {
    hier_array h(cut_schedule({1}));
    h.insert_batch({{"a", "b", 1}, {"c", "d", 1}}); // cascades into layer 2
    h.insert_batch({{"a", "b", 2}});                // stays in layer 1
    REQUIRE(layer_nnz(h) == std::vector<std::size_t>{1, 2});

    assoc_array m = h.materialize();
    REQUIRE(m.get("a", "b") == 3);
    REQUIRE(m.get("c", "d") == 1);
    REQUIRE(layer_nnz(h) == std::vector<std::size_t>{1, 2}); // unchanged

    REQUIRE(hier_array{cut_schedule({4, 16})}.materialize().empty());
}

TEST_CASE("materialize equals the flat fold of the concatenated history") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<std::size_t> batch_len(0, 40);
    hier_array h(cut_schedule({100, 1000}));
    std::vector<triple> all;
    for (int b = 0; b < 1000; ++b) {
        std::vector<triple> batch = oracle::random_triples(rng, batch_len(rng), 40);
        h.insert_batch(batch);
        all.insert(all.end(), batch.begin(), batch.end());
    }
    assoc_array m = h.materialize();
    REQUIRE(canonical_violation(m).empty());
    REQUIRE(m == assoc_array::from_triples(all));
}

TEST_CASE("compact collapses everything into the last layer") {
    hier_array h(cut_schedule({4, 16}));
    h.insert_batch(distinct_triples(3, 0));
    h.insert_batch(distinct_triples(4, 10));
    assoc_array before = h.materialize();

    h.compact();
    std::vector<std::size_t> nnz = layer_nnz(h);
    REQUIRE(nnz == std::vector<std::size_t>{0, 0, before.nnz()});
    REQUIRE(h.materialize() == before);

    hier_array empty(cut_schedule({4}));
    REQUIRE_NOTHROW(empty.compact());
    REQUIRE(empty.materialize().empty());
}

TEST_CASE("compact preserves materialize on random histories") {
    std::mt19937_64 rng(71);
    for (int iter = 0; iter < 40; ++iter) {
        hier_array h(random_schedule(rng));
        for (const auto& batch : random_history(rng)) h.insert_batch(batch);
        assoc_array before = h.materialize();
        h.compact();
        REQUIRE(h.materialize() == before);
        std::vector<std::size_t> nnz = layer_nnz(h);
        for (std::size_t i = 0; i + 1 < nnz.size(); ++i) REQUIRE(nnz[i] == 0);
    }
}

TEST_CASE("query_neighbors folds per-layer row queries") {
    hier_array h(cut_schedule({1}));
    h.insert_batch({{"1.1.1.1", "3.3.3.3", 1}, {"9.9.9.9", "9.9.9.9", 1}}); // to layer 2
    h.insert_batch({{"1.1.1.1", "2.2.2.2", 1}});                            // stays in layer 1
    assoc_array n = h.query_neighbors("1.1.1.1");
    REQUIRE(n.col_keys() == std::vector<std::string>{"2.2.2.2", "3.3.3.3"});
    REQUIRE(h.query_neighbors("8.8.8.8").empty());
}

TEST_CASE("query_neighbors equals materialize-then-query") {
    std::mt19937_64 rng(73);
    for (int iter = 0; iter < 40; ++iter) {
        hier_array h(random_schedule(rng));
        for (const auto& batch : random_history(rng)) h.insert_batch(batch);
        assoc_array m = h.materialize();
        for (int k = 0; k < 20; ++k) {
            std::string probe = "k" + std::to_string(k);
            REQUIRE(h.query_neighbors(probe) == m.row_query(probe));
        }
    }
}

TEST_CASE("stats reports per-layer state and update counts") {
    hier_array fresh(cut_schedule({4, 16}));
    hierarr::hier_stats s = fresh.stats();
    REQUIRE(s.layer_nnz == std::vector<std::size_t>{0, 0, 0});
    REQUIRE(s.cascades == std::vector<std::uint64_t>{0, 0, 0});
    REQUIRE(s.lifetime_updates == 0);

    std::mt19937_64 rng(79);
    hier_array h(random_schedule(rng));
    std::uint64_t inserted = 0;
    std::vector<std::uint64_t> prev_casc = h.stats().cascades;
    for (const auto& batch : random_history(rng)) {
        h.insert_batch(batch);
        inserted += batch.size();
        hierarr::hier_stats st = h.stats();
        REQUIRE(st.lifetime_updates == inserted);
        REQUIRE(st.cascades.back() == 0);
        for (std::size_t i = 0; i < st.cascades.size(); ++i) {
            REQUIRE(st.cascades[i] >= prev_casc[i]);
        }
        prev_casc = st.cascades;
    }
}

TEST_CASE("layer bound holds at rest after every insert") {
    std::mt19937_64 rng(83);
    for (int iter = 0; iter < 40; ++iter) {
        cut_schedule schedule = random_schedule(rng);
        hier_array h(schedule);
        for (const auto& batch : random_history(rng)) {
            h.insert_batch(batch);
            std::vector<std::size_t> nnz = layer_nnz(h);
            for (std::size_t i = 0; i < schedule.cuts().size(); ++i) {
                REQUIRE(nnz[i] <= schedule.cuts()[i]);
            }
        }
    }
}

TEST_CASE("results are independent of batch boundaries") {
    std::mt19937_64 rng(89);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<triple> stream = oracle::random_triples(rng, 200, 25);
        cut_schedule schedule({7, 23});

        std::uniform_int_distribution<std::size_t> chunk(1, 50);
        auto run = [&](std::mt19937_64& chunk_rng) {
            hier_array h(schedule);
            std::size_t off = 0;
            while (off < stream.size()) {
                std::size_t len = std::min(chunk(chunk_rng), stream.size() - off);
                h.insert_batch(std::span<const triple>(stream.data() + off, len));
                off += len;
            }
            return h.materialize();
        };
        std::mt19937_64 ra(iter);
        std::mt19937_64 rb(iter + 1000);
        REQUIRE(run(ra) == run(rb));
    }
}

TEST_CASE("results are independent of the cut schedule") {
    std::mt19937_64 rng(97);
    for (int iter = 0; iter < 30; ++iter) {
        auto batches = random_history(rng);
        hier_array h1(random_schedule(rng));
        hier_array h2(random_schedule(rng));
        hier_array flat{cut_schedule({})};
        for (const auto& batch : batches) {
            h1.insert_batch(batch);
            h2.insert_batch(batch);
            flat.insert_batch(batch);
        }
        REQUIRE(h1.materialize() == h2.materialize());
        REQUIRE(h1.materialize() == flat.materialize());
    }
}
