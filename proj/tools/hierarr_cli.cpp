// Command-line front end: stream generation, TSV ingestion, neighbor
// queries, and the streaming-update benchmark. Every subcommand is a thin
// shell over the library calls.
//
// Exit codes: 0 success, 1 usage error, 2 data or verification error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hierarr/assoc_array.hpp"
#include "hierarr/bench.hpp"
#include "hierarr/hier_array.hpp"
#include "hierarr/report_io.hpp"
#include "hierarr/stream_gen.hpp"
#include "hierarr/tsv.hpp"

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

std::vector<std::uint64_t> parse_uint_list(const std::string& text, const char* what) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::size_t end = comma == std::string::npos ? text.size() : comma;
        std::string item = text.substr(pos, end - pos);
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": expected comma-separated " +
                                        "unsigned integers, got '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

hierarr::key_format parse_key_format(const std::string& name) {
    if (name == "decimal") return hierarr::key_format::decimal;
    if (name == "dotted-quad") return hierarr::key_format::dotted_quad;
    throw std::invalid_argument("--key-format must be 'decimal' or 'dotted-quad'");
}

hierarr::bench_mode parse_mode(const std::string& name) {
    if (name == "hierarchical") return hierarr::bench_mode::hierarchical;
    if (name == "flat") return hierarr::bench_mode::flat;
    throw std::invalid_argument("--mode must be 'hierarchical' or 'flat'");
}

hierarr::stream_config make_stream_config(std::uint64_t entries, std::uint64_t batch_size,
                                          std::uint64_t vertices, double alpha,
                                          std::uint64_t seed, const std::string& fmt) {
    if (batch_size == 0 || entries == 0 || entries % batch_size != 0) {
        throw std::invalid_argument("--entries must be a positive multiple of --batch-size");
    }
    hierarr::stream_config cfg;
    cfg.total_entries = entries;
    cfg.batch_size = batch_size;
    cfg.num_batches = entries / batch_size;
    cfg.vertex_count = vertices;
    cfg.alpha = alpha;
    cfg.seed = seed;
    cfg.fmt = parse_key_format(fmt);
    cfg.validate();
    return cfg;
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("cannot write " + out_path);
}

struct gen_options {
    std::uint64_t entries = 0;
    std::uint64_t batch_size = 100'000;
    std::uint64_t vertices = 1u << 24;
    double alpha = 1.2;
    std::uint64_t seed = 1;
    std::string fmt = "decimal";
    std::string out_dir;
};

int run_gen(const gen_options& opt) {
    hierarr::stream_config cfg = make_stream_config(opt.entries, opt.batch_size, opt.vertices,
                                                    opt.alpha, opt.seed, opt.fmt);
    std::filesystem::create_directories(opt.out_dir);
    hierarr::stream_generator gen(cfg);
    std::uint64_t written = 0;
    for (std::uint64_t b = 0; b < cfg.num_batches; ++b) {
        char name[32];
        std::snprintf(name, sizeof(name), "batch_%05llu.tsv",
                      static_cast<unsigned long long>(b));
        written += hierarr::save_tsv(gen.batch(b), std::filesystem::path(opt.out_dir) / name);
    }
    std::cout << "wrote " << cfg.num_batches << " batches (" << written << " triples) to "
              << opt.out_dir << "\n";
    return 0;
}

struct load_options {
    std::string in_path;
    std::string cuts = "32768,524288,8388608";
    std::uint64_t batch_size = 100'000;
};

hierarr::cut_schedule schedule_from_flag(const std::string& cuts) {
    if (cuts.empty()) return hierarr::cut_schedule{};
    return hierarr::cut_schedule(parse_uint_list(cuts, "--cuts"));
}

int run_load(const load_options& opt) {
    if (opt.batch_size == 0) throw std::invalid_argument("--batch-size must be positive");
    std::vector<hierarr::triple> triples = hierarr::load_tsv(opt.in_path);
    hierarr::hier_array store(schedule_from_flag(opt.cuts));
    for (std::size_t off = 0; off < triples.size(); off += opt.batch_size) {
        std::size_t len = std::min<std::size_t>(opt.batch_size, triples.size() - off);
        store.insert_batch(std::span<const hierarr::triple>(triples.data() + off, len));
    }
    hierarr::hier_stats stats = store.stats();
    std::cout << "layers: " << stats.layer_nnz.size() << "\n";
    for (std::size_t i = 0; i < stats.layer_nnz.size(); ++i) {
        std::cout << "layer " << i << ": nnz=" << stats.layer_nnz[i]
                  << " cascades=" << stats.cascades[i] << "\n";
    }
    std::cout << "lifetime updates: " << stats.lifetime_updates << "\n";
    return 0;
}

int run_query(const std::string& in_path, const std::string& row) {
    std::vector<hierarr::triple> triples = hierarr::load_tsv(in_path);
    hierarr::assoc_array array = hierarr::assoc_array::from_triples(triples);
    hierarr::assoc_array neighbors = array.row_query(row);
    for (const std::string& col : neighbors.col_keys()) {
        std::cout << col << "\n";
    }
    return 0;
}

struct bench_options {
    std::uint64_t workers = 1;
    std::uint64_t entries_per_worker = 1'000'000;
    std::uint64_t batch_size = 100'000;
    std::uint64_t vertices = 1u << 24;
    double alpha = 1.2;
    std::uint64_t seed = 1;
    std::uint64_t warmup = 0;
    std::string cuts = "32768,524288,8388608";
    std::string mode = "hierarchical";
    std::string fmt = "decimal";
    std::string report = "json";
    std::string out_path;
    bool verify = false;
    bool inject_fault = false;
    std::string workers_list; // sweep only
};

hierarr::bench_config make_bench_config(const bench_options& opt) {
    hierarr::bench_config cfg;
    cfg.workers = opt.workers;
    cfg.stream = make_stream_config(opt.entries_per_worker, opt.batch_size, opt.vertices,
                                    opt.alpha, opt.seed, opt.fmt);
    cfg.schedule = schedule_from_flag(opt.cuts);
    cfg.mode = parse_mode(opt.mode);
    cfg.warmup_batches = opt.warmup;
    cfg.verify = opt.verify;
    cfg.inject_fault = opt.inject_fault;
    cfg.validate();
    if (opt.report != "json" && opt.report != "csv") {
        throw std::invalid_argument("--report must be 'json' or 'csv'");
    }
    return cfg;
}

int run_bench_cmd(const bench_options& opt) {
    hierarr::bench_config cfg = make_bench_config(opt);
    hierarr::bench_report report = hierarr::run_bench(cfg);
    if (opt.report == "json") {
        emit_text(hierarr::report_to_json(report).dump(2) + "\n", opt.out_path);
    } else {
        emit_text(hierarr::report_to_csv(report), opt.out_path);
    }
    return 0;
}

int run_sweep_cmd(const bench_options& opt) {
    hierarr::bench_config base = make_bench_config(opt);
    std::vector<std::uint64_t> counts = parse_uint_list(opt.workers_list, "--workers-list");
    std::vector<hierarr::bench_report> reports = hierarr::sweep(counts, base);
    if (opt.report == "json") {
        emit_text(hierarr::sweep_to_json(reports).dump(2) + "\n", opt.out_path);
    } else {
        emit_text(hierarr::sweep_to_csv(reports), opt.out_path);
    }
    return 0;
}

void add_bench_flags(CLI::App* cmd, bench_options& opt) {
    cmd->add_option("--entries-per-worker", opt.entries_per_worker,
                    "Stream entries per worker (multiple of --batch-size)");
    cmd->add_option("--batch-size", opt.batch_size, "Triples per insert batch");
    cmd->add_option("--vertices", opt.vertices, "Vertex ID space size");
    cmd->add_option("--alpha", opt.alpha, "Power-law exponent");
    cmd->add_option("--seed", opt.seed, "Global PRNG seed");
    cmd->add_option("--warmup", opt.warmup, "Warmup batches excluded from timing");
    cmd->add_option("--cuts", opt.cuts, "Comma-separated layer cut thresholds");
    cmd->add_option("--mode", opt.mode, "hierarchical or flat");
    cmd->add_option("--key-format", opt.fmt, "decimal or dotted-quad");
    cmd->add_option("--report", opt.report, "Report format: json or csv");
    cmd->add_option("--out", opt.out_path, "Write the report to a file instead of stdout");
    cmd->add_flag("--verify", opt.verify,
                  "Check each worker's materialized store against its stream");
    cmd->add_flag("--inject-fault", opt.inject_fault)->group(""); // test hook, hidden
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchical associative array store"};
    app.require_subcommand(1);

    gen_options gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "Generate power-law edge batches as TSV files");
    gen->add_option("--entries", gen_opt.entries, "Total triples to generate")->required();
    gen->add_option("--batch-size", gen_opt.batch_size, "Triples per batch file");
    gen->add_option("--vertices", gen_opt.vertices, "Vertex ID space size");
    gen->add_option("--alpha", gen_opt.alpha, "Power-law exponent");
    gen->add_option("--seed", gen_opt.seed, "PRNG seed");
    gen->add_option("--key-format", gen_opt.fmt, "decimal or dotted-quad");
    gen->add_option("--out-dir", gen_opt.out_dir, "Output directory")->required();

    load_options load_opt;
    CLI::App* load = app.add_subcommand("load", "Load a TSV triple file into a layered store");
    load->add_option("--in", load_opt.in_path, "Input TSV file")->required();
    load->add_option("--cuts", load_opt.cuts, "Comma-separated layer cut thresholds");
    load->add_option("--batch-size", load_opt.batch_size, "Triples per insert batch");

    std::string query_in;
    std::string query_row;
    CLI::App* query = app.add_subcommand("query", "Print the neighbor column keys of a row");
    query->add_option("--in", query_in, "Input TSV file")->required();
    query->add_option("--row", query_row, "Row key to query")->required();

    bench_options bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "Run the streaming-update benchmark");
    bench->add_option("--workers", bench_opt.workers, "Number of shared-nothing workers");
    add_bench_flags(bench, bench_opt);

    bench_options sweep_opt;
    CLI::App* sweep = app.add_subcommand("sweep", "Benchmark across worker counts");
    sweep->add_option("--workers-list", sweep_opt.workers_list,
                      "Comma-separated ascending worker counts")
        ->required();
    add_bench_flags(sweep, sweep_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_opt);
        if (load->parsed()) return run_load(load_opt);
        if (query->parsed()) return run_query(query_in, query_row);
        if (bench->parsed()) return run_bench_cmd(bench_opt);
        if (sweep->parsed()) return run_sweep_cmd(sweep_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return 0;
}
