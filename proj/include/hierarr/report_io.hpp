// Benchmark report serialization.
//
// JSON carries the full report: config echo, environment note, per-worker
// records, and the aggregate. CSV is the plot-friendly table with header
//   workers,updates,span_s,rate_per_s,mode,cuts
// one row per worker (workers column = worker index) plus one aggregate row
// (workers column = worker count). A sweep emits only the aggregate rows,
// one per worker count. Cut values are joined with '|' so the field stays
// comma-free.

#pragma once

#include <cstdio>
#include <span>
#include <string>

#include <json.hpp>

#include "hierarr/bench.hpp"

namespace hierarr {

inline std::string cuts_to_string(const cut_schedule& schedule) {
    std::string out;
    for (std::uint64_t c : schedule.cuts()) {
        if (!out.empty()) out += '|';
        out += std::to_string(c);
    }
    return out;
}

inline std::string_view key_format_name(key_format f) {
    return f == key_format::decimal ? "decimal" : "dotted-quad";
}

inline nlohmann::json report_to_json(const bench_report& report) {
    const bench_config& cfg = report.config;
    nlohmann::json workers = nlohmann::json::array();
    for (const worker_record& w : report.workers) {
        workers.push_back({{"index", w.index},
                           {"updates", w.updates},
                           {"span_s", w.span_s},
                           {"rate_per_s", w.rate_per_s}});
    }
    return nlohmann::json{
        {"config",
         {{"workers", cfg.workers},
          {"mode", mode_name(cfg.mode)},
          {"cuts", cfg.schedule.cuts()},
          {"warmup_batches", cfg.warmup_batches},
          {"verify", cfg.verify},
          {"stream",
           {{"total_entries", cfg.stream.total_entries},
            {"batch_size", cfg.stream.batch_size},
            {"num_batches", cfg.stream.num_batches},
            {"vertex_count", cfg.stream.vertex_count},
            {"alpha", cfg.stream.alpha},
            {"seed", cfg.stream.seed},
            {"key_format", key_format_name(cfg.stream.fmt)}}}}},
        {"env", {{"host", report.host}, {"timestamp_utc", report.timestamp_utc}}},
        {"workers", workers},
        {"aggregate",
         {{"updates", report.aggregate.updates},
          {"span_s", report.aggregate.span_s},
          {"rate_per_s", report.aggregate.rate_per_s}}}};
}

namespace detail {

inline std::string csv_row(std::uint64_t workers, std::uint64_t updates, double span_s,
                           double rate_per_s, std::string_view mode, const std::string& cuts) {
    char num[96];
    std::string row = std::to_string(workers) + ',' + std::to_string(updates) + ',';
    std::snprintf(num, sizeof(num), "%.6f", span_s);
    row += num;
    row += ',';
    std::snprintf(num, sizeof(num), "%.3f", rate_per_s);
    row += num;
    row += ',';
    row += mode;
    row += ',';
    row += cuts;
    row += '\n';
    return row;
}

} // namespace detail

inline constexpr std::string_view csv_header = "workers,updates,span_s,rate_per_s,mode,cuts\n";

inline std::string report_to_csv(const bench_report& report) {
    std::string cuts = report.config.mode == bench_mode::hierarchical
                           ? cuts_to_string(report.config.schedule)
                           : std::string{};
    std::string_view mode = mode_name(report.config.mode);
    std::string out{csv_header};
    for (const worker_record& w : report.workers) {
        out += detail::csv_row(w.index, w.updates, w.span_s, w.rate_per_s, mode, cuts);
    }
    out += detail::csv_row(report.config.workers, report.aggregate.updates,
                           report.aggregate.span_s, report.aggregate.rate_per_s, mode, cuts);
    return out;
}

inline nlohmann::json sweep_to_json(std::span<const bench_report> reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const bench_report& r : reports) out.push_back(report_to_json(r));
    return out;
}

inline std::string sweep_to_csv(std::span<const bench_report> reports) {
    std::string out{csv_header};
    for (const bench_report& r : reports) {
        std::string cuts = r.config.mode == bench_mode::hierarchical
                               ? cuts_to_string(r.config.schedule)
                               : std::string{};
        out += detail::csv_row(r.config.workers, r.aggregate.updates, r.aggregate.span_s,
                               r.aggregate.rate_per_s, mode_name(r.config.mode), cuts);
    }
    return out;
}

} // namespace hierarr
