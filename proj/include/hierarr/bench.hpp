// Shared-nothing streaming-update benchmark.
//
// Each worker owns a private layered store and a distinct stream seed
// derived from (global seed, worker index), generates its own batches, and
// times only the insert calls. Workers never share mutable state; the
// coordinator collects one record per worker and aggregates. The reported
// rate is timed updates divided by wall-clock spent inside timed insert
// calls; the aggregate uses the maximum worker span, so concurrent workers
// are never credited with more than elapsed time allows.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <exception>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <unistd.h>

#include "hierarr/hier_array.hpp"
#include "hierarr/stream_gen.hpp"

namespace hierarr {

enum class bench_mode { hierarchical, flat };

inline std::string_view mode_name(bench_mode m) {
    return m == bench_mode::hierarchical ? "hierarchical" : "flat";
}

struct bench_config {
    std::uint64_t workers = 1;
    stream_config stream;                              // per-worker workload; stream.seed is global
    cut_schedule schedule = cut_schedule::default_schedule();
    bench_mode mode = bench_mode::hierarchical;
    std::uint64_t warmup_batches = 0;                  // inserted but untimed
    bool verify = false;                               // check materialize against the stream fold
    bool inject_fault = false;                         // test hook: drop one triple before insert

    void validate() const {
        if (workers == 0) {
            throw std::invalid_argument("workers must be at least 1");
        }
        stream.validate();
        if (warmup_batches >= stream.num_batches) {
            throw std::invalid_argument("warmup_batches must be below num_batches");
        }
    }
};

struct worker_record {
    std::uint64_t index = 0;
    std::uint64_t updates = 0; // timed updates only; warmup excluded
    double span_s = 0.0;       // wall-clock inside timed insert calls
    double rate_per_s = 0.0;
};

struct aggregate_record {
    std::uint64_t updates = 0;
    double span_s = 0.0; // max worker span
    double rate_per_s = 0.0;
};

struct bench_report {
    bench_config config;
    std::string host;
    std::string timestamp_utc;
    std::vector<worker_record> workers;
    aggregate_record aggregate;
};

// Total updates over the maximum worker span.
inline aggregate_record aggregate(std::span<const worker_record> records) {
    if (records.empty()) {
        throw std::invalid_argument("aggregate requires at least one worker record");
    }
    aggregate_record agg;
    for (const worker_record& r : records) {
        agg.updates += r.updates;
        agg.span_s = std::max(agg.span_s, r.span_s);
    }
    agg.rate_per_s = agg.span_s > 0.0 ? static_cast<double>(agg.updates) / agg.span_s : 0.0;
    return agg;
}

namespace detail {

inline std::string hostname() {
    char buf[256] = {};
    if (gethostname(buf, sizeof(buf) - 1) != 0) return "unknown";
    return buf;
}

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline worker_record run_worker(const bench_config& cfg, std::uint64_t index,
                                std::shared_ptr<const zipf_table> table) {
    stream_config wcfg = cfg.stream;
    wcfg.seed = mix64(cfg.stream.seed, index);
    stream_generator gen(wcfg, std::move(table));

    cut_schedule schedule = cfg.mode == bench_mode::hierarchical ? cfg.schedule : cut_schedule{};
    hier_array store(schedule);

    worker_record rec;
    rec.index = index;
    std::chrono::steady_clock::duration timed{0};
    for (std::uint64_t b = 0; b < wcfg.num_batches; ++b) {
        std::vector<triple> batch = gen.batch(b);
        if (cfg.inject_fault && b + 1 == wcfg.num_batches && !batch.empty()) {
            batch.pop_back();
        }
        if (b < cfg.warmup_batches) {
            store.insert_batch(batch);
            continue;
        }
        auto t0 = std::chrono::steady_clock::now();
        store.insert_batch(batch);
        timed += std::chrono::steady_clock::now() - t0;
        rec.updates += batch.size();
    }

    if (cfg.verify) {
        assoc_array expected;
        for (std::uint64_t b = 0; b < wcfg.num_batches; ++b) {
            std::vector<triple> batch = gen.batch(b);
            expected = add(expected, assoc_array::from_triples(batch));
        }
        if (!(expected == store.materialize())) {
            throw verification_error("worker " + std::to_string(index) +
                                     ": materialized store does not match its input stream");
        }
    }

    rec.span_s = std::chrono::duration<double>(timed).count();
    rec.rate_per_s = rec.span_s > 0.0 ? static_cast<double>(rec.updates) / rec.span_s : 0.0;
    return rec;
}

} // namespace detail

// Runs cfg.workers independent workers and aggregates their records. Any
// worker failure aborts the whole run; a partial report is never returned.
inline bench_report run_bench(const bench_config& cfg) {
    cfg.validate();
    auto table = std::make_shared<const zipf_table>(cfg.stream.vertex_count, cfg.stream.alpha);

    std::vector<worker_record> records(cfg.workers);
    std::vector<std::exception_ptr> failures(cfg.workers);
    std::vector<std::thread> threads;
    threads.reserve(cfg.workers);
    for (std::uint64_t w = 0; w < cfg.workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                records[w] = detail::run_worker(cfg, w, table);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();

    for (std::uint64_t w = 0; w < cfg.workers; ++w) {
        if (!failures[w]) continue;
        try {
            std::rethrow_exception(failures[w]);
        } catch (const verification_error&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error("worker " + std::to_string(w) + ": " + e.what());
        }
    }

    bench_report report;
    report.config = cfg;
    report.host = detail::hostname();
    report.timestamp_utc = detail::utc_timestamp();
    report.workers = std::move(records);
    report.aggregate = aggregate(report.workers);
    return report;
}

// Weak-scaling sweep: one run per worker count, fixed per-worker workload.
inline std::vector<bench_report> sweep(std::span<const std::uint64_t> worker_counts,
                                       bench_config base) {
    if (worker_counts.empty()) {
        throw std::invalid_argument("sweep requires at least one worker count");
    }
    for (std::size_t i = 0; i < worker_counts.size(); ++i) {
        if (worker_counts[i] == 0) {
            throw std::invalid_argument("sweep worker counts must be positive");
        }
        if (i > 0 && worker_counts[i] <= worker_counts[i - 1]) {
            throw std::invalid_argument("sweep worker counts must be ascending");
        }
    }
    std::vector<bench_report> reports;
    reports.reserve(worker_counts.size());
    for (std::uint64_t count : worker_counts) {
        base.workers = count;
        try {
            reports.push_back(run_bench(base));
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep failed at workers=" + std::to_string(count) + ": " +
                                     e.what());
        }
    }
    return reports;
}

} // namespace hierarr
