// cdcbench: chunk, deduplicate, benchmark and tune from the command line.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 I/O error,
// 3 a chunking self-check failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cdc/chunk_core.hpp"
#include "cdc/corpus.hpp"
#include "cdc/dedup.hpp"
#include "cdc/microbench.hpp"
#include "cdc/report.hpp"
#include "cdc/tuner.hpp"

using namespace cdc;
namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 1;
constexpr int kIo = 2;
constexpr int kInvariant = 3;

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigOptions {
  std::string algo = "seq";
  std::size_t avg = 8 * KiB;
  std::size_t min = 0;
  std::size_t max = 0;
  std::string mode;
  std::uint32_t seq_length = 0;
  std::uint32_t skip_trigger = 0;
  std::int64_t skip_size = -1;
  std::uint32_t mask_bits = 0;
  std::uint32_t window = 0;
  std::string backend = "auto";

  void add_to(CLI::App* app, bool with_algo = true) {
    if (with_algo) app->add_option("--algo", algo, "fixed, rabin, gear, fastcdc, ae, ram or seq")->capture_default_str();
    app->add_option("--avg", avg, "target average chunk size in bytes")->capture_default_str();
    app->add_option("--min", min, "minimum chunk size (default avg/2, 1 KiB at 4 KiB)");
    app->add_option("--max", max, "maximum chunk size (default 2*avg)");
    app->add_option("--mode", mode, "seq: inc or dec");
    app->add_option("--seq-length", seq_length, "seq: bytes in a boundary run");
    app->add_option("--skip-trigger", skip_trigger, "seq: opposing pairs before a skip");
    app->add_option("--skip-size", skip_size, "seq: bytes skipped per trigger, 0 disables");
    app->add_option("--mask-bits", mask_bits, "rabin/gear: boundary mask width");
    app->add_option("--window", window, "rabin/ae/ram: window size");
    app->add_option("--backend", backend, "auto, scalar, w16, w32 or w64")->capture_default_str();
  }

  ChunkerConfig config(Algorithm a) const {
    ChunkerConfig cfg = make_config(a, avg);
    if (min) cfg.min_size = min;
    if (max) cfg.max_size = max;
    if (!mode.empty()) cfg.seq.mode = parse_mode(mode);
    if (seq_length) cfg.seq.seq_length = seq_length;
    if (skip_trigger) cfg.seq.skip_trigger = skip_trigger;
    if (skip_size >= 0) cfg.seq.skip_size = static_cast<std::uint32_t>(skip_size);
    if (mask_bits) cfg.hash.mask_bits = mask_bits;
    if (window) {
      cfg.hash.window_size = window;
      cfg.extremum.window_size = window;
    }
    validate(cfg);
    return cfg;
  }
  ChunkerConfig config() const { return config(parse_algorithm(algo)); }
  Backend requested_backend() const { return parse_backend(backend); }
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

int cmd_chunk(const ConfigOptions& o, const std::string& path, bool quiet) {
  const ChunkerConfig cfg = o.config();
  const auto data = read_file(path);
  const auto events = chunk_stream(data, cfg, o.requested_backend());
  const AuditResult audit = audit_events(data, cfg, events);
  if (!quiet) {
    std::printf("offset\tlength\tkind\tsha256\n");
    std::size_t prev = 0;
    for (const auto& ev : events) {
      const std::size_t len = ev.position - prev;
      std::printf("%zu\t%zu\t%s\t%s\n", prev, len, std::string(to_string(ev.kind)).c_str(),
                  to_hex(fingerprint(ByteSpan(data).subspan(prev, len))).c_str());
      prev = ev.position;
    }
  }
  std::fprintf(stderr, "%zu chunks, backend %s\n", events.size(), backend_used(cfg, o.requested_backend()).c_str());
  if (!audit.ok()) throw InvariantError("self-check failed: chunk bounds, partition or boundary witness");
  return 0;
}

int cmd_dedup(const ConfigOptions& o, const std::string& corpus, const std::string& json_out,
              const std::string& index_out, int runs) {
  const ChunkerConfig cfg = o.config();
  const DedupReport d = dedup_run(corpus, cfg, o.requested_backend());
  ThroughputStats t;
  if (runs > 0) {
    std::vector<std::vector<std::uint8_t>> files;
    for (const auto& p : list_corpus(corpus)) {
      try {
        files.push_back(read_file(p));
      } catch (const IoError&) {
      }
    }
    t = measure_throughput(files, cfg, runs, o.requested_backend());
  }
  const RunReport r = make_report(corpus, cfg, d, t, o.requested_backend(), host_description(false));
  const std::string text = to_json(r).dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!json_out.empty()) write_text(json_out, text);
  if (!index_out.empty()) {
    FingerprintIndex idx;
    for (const auto& p : list_corpus(corpus)) {
      std::vector<std::uint8_t> data;
      try {
        data = read_file(p);
      } catch (const IoError&) {
        continue;
      }
      for (const auto& rec : to_records(data, chunk_stream(data, cfg, o.requested_backend()))) {
        idx.insert(rec.fingerprint, rec.length);
      }
    }
    idx.save(index_out);
  }
  for (const auto& e : d.errors) std::fprintf(stderr, "error: %s: %s\n", e.path.c_str(), e.message.c_str());
  if (!d.audit.ok()) throw InvariantError("self-check failed during dedup");
  return 0;
}

int cmd_bench(const ConfigOptions& o, const std::string& corpus, const std::string& algos_s,
              const std::string& sizes_s, int runs, const std::string& csv_out, const std::string& json_dir,
              bool with_microbench) {
  std::vector<Algorithm> algos;
  for (const auto& a : split(algos_s)) algos.push_back(parse_algorithm(a));
  std::vector<std::size_t> sizes;
  for (const auto& s : split(sizes_s)) {
    try {
      sizes.push_back(std::stoull(s));
    } catch (const std::exception&) {
      throw ConfigError("bad size '" + s + "'");
    }
  }
  if (algos.empty() || sizes.empty()) throw ConfigError("need at least one algorithm and one size");

  const auto host = host_description(with_microbench);
  const auto cells = run_experiment(corpus, algos, sizes, runs, o.requested_backend(), host);
  std::string csv = csv_header() + "\n";
  for (const auto& c : cells) {
    if (!c.report) {
      std::fprintf(stderr, "cell %s/%zu failed: %s\n", std::string(to_string(c.algorithm)).c_str(), c.target_avg,
                   c.error.c_str());
      continue;
    }
    const RunReport& r = *c.report;
    csv += csv_row(r) + "\n";
    std::printf("%-8s %6zu  savings %.4f  mean %8.1f  %.3f GB/s (sd %.3f)  %s\n",
                std::string(to_string(r.cfg.algorithm)).c_str(), r.cfg.target_avg, r.space_savings, r.mean_chunk,
                r.throughput.mean, r.throughput.stddev, r.backend.c_str());
    if (!json_dir.empty()) {
      fs::create_directories(json_dir);
      write_text(fs::path(json_dir) / (std::string(to_string(r.cfg.algorithm)) + "_" +
                                       std::to_string(r.cfg.target_avg) + ".json"),
                 to_json(r).dump(2) + "\n");
    }
  }
  if (!csv_out.empty()) write_text(csv_out, csv);
  return 0;
}

int cmd_gen_corpus(const std::string& manifest_path, const std::string& out) {
  const CorpusManifest m = load_manifest(manifest_path);
  const fs::path dir = out.empty() ? fs::path(manifest_path).parent_path() / m.name : fs::path(out);
  const CorpusManifest written = gen_corpus(m, dir);
  std::printf("wrote %zu files to %s\n", written.paths.size(), dir.string().c_str());
  return 0;
}

int cmd_tune(std::size_t target, const std::string& mode, std::size_t sample_mib, std::uint64_t seed,
             const std::string& json_out) {
  const TunerResult r = tune(target, parse_mode(mode), sample_mib * MiB, seed);
  std::printf("target %zu: seq_length %u skip_trigger %u skip_size %u  mean %.1f\n", r.target_avg,
              r.chosen.seq_length, r.chosen.skip_trigger, r.chosen.skip_size, r.chosen_mean);
  nlohmann::ordered_json j;
  j["target_avg"] = r.target_avg;
  j["mode"] = mode;
  j["chosen"] = {{"seq_length", r.chosen.seq_length},
                 {"skip_trigger", r.chosen.skip_trigger},
                 {"skip_size", r.chosen.skip_size},
                 {"mean", r.chosen_mean}};
  j["candidates"] = nlohmann::ordered_json::array();
  for (const auto& c : r.candidates) {
    std::printf("  L=%u T=%u S=%u  mean %.1f  p50 %zu\n", c.params.seq_length, c.params.skip_trigger,
                c.params.skip_size, c.mean, c.p50);
    j["candidates"].push_back({{"seq_length", c.params.seq_length},
                               {"skip_trigger", c.params.skip_trigger},
                               {"skip_size", c.params.skip_size},
                               {"mean", c.mean},
                               {"p50", c.p50}});
  }
  if (!json_out.empty()) write_text(json_out, j.dump(2) + "\n");
  return 0;
}

int cmd_microbench(std::uint64_t iterations) {
  const MicrobenchResult r = microbench_bitops(iterations);
  std::printf("%-22s %10s\n", "primitive", "ns/op");
  for (const auto& row : r.rows) std::printf("%-22s %10.3f\n", row.name.c_str(), row.ns_per_op);
  std::printf("correctness lane: %s\n", r.correctness_ok ? "ok" : "FAILED");
  return r.correctness_ok ? 0 : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"content-defined chunking workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CDC_VERSION));

  ConfigOptions chunk_opt;
  std::string chunk_path;
  bool quiet = false;
  auto* chunk = app.add_subcommand("chunk", "print the chunks of one file");
  chunk_opt.add_to(chunk);
  chunk->add_flag("--quiet", quiet, "only run the self-check");
  chunk->add_option("path", chunk_path)->required();

  ConfigOptions dedup_opt;
  std::string dedup_corpus, dedup_json, dedup_index;
  int dedup_runs = 0;
  auto* dedup = app.add_subcommand("dedup", "deduplicate a corpus and print its report");
  dedup_opt.add_to(dedup);
  dedup->add_option("--json", dedup_json, "also write the report here");
  dedup->add_option("--index", dedup_index, "save the fingerprint index here");
  dedup->add_option("--runs", dedup_runs, "timed chunking passes, 0 skips timing");
  dedup->add_option("corpus", dedup_corpus)->required();

  ConfigOptions bench_opt;
  std::string bench_corpus, bench_algos = "fixed,rabin,gear,fastcdc,ae,ram,seq", bench_sizes = "4096,8192,16384";
  std::string bench_csv, bench_json;
  int bench_runs = 5;
  bool bench_micro = false;
  auto* bench = app.add_subcommand("bench", "dedup and throughput for every algorithm and size");
  bench->add_option("--backend", bench_opt.backend, "auto, scalar, w16, w32 or w64")->capture_default_str();
  bench->add_option("--algo", bench_algos, "comma-separated algorithms")->capture_default_str();
  bench->add_option("--sizes", bench_sizes, "comma-separated target sizes")->capture_default_str();
  bench->add_option("--runs", bench_runs, "timed passes per cell")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--csv", bench_csv, "write the combined CSV here");
  bench->add_option("--json-dir", bench_json, "write one report per cell here");
  bench->add_flag("--microbench", bench_micro, "embed bit-helper timings in the host description");
  bench->add_option("corpus", bench_corpus)->required();

  std::string manifest, gen_out;
  auto* gen = app.add_subcommand("gen-corpus", "generate a versioned random corpus");
  gen->add_option("--manifest", manifest, "manifest JSON")->required();
  gen->add_option("--out", gen_out, "output directory (default: next to the manifest, named after it)");

  std::size_t tune_target = 0, tune_sample = 64;
  std::string tune_mode = "inc", tune_json;
  std::uint64_t tune_seed = 1;
  auto* tune_cmd = app.add_subcommand("tune", "search seq parameters for a target mean");
  tune_cmd->add_option("--target", tune_target, "target mean chunk size")->required();
  tune_cmd->add_option("--mode", tune_mode)->capture_default_str();
  tune_cmd->add_option("--sample-mib", tune_sample, "random sample size in MiB")->capture_default_str();
  tune_cmd->add_option("--seed", tune_seed)->capture_default_str();
  tune_cmd->add_option("--json", tune_json, "write candidates here");

  std::uint64_t iterations = 1u << 22;
  auto* micro = app.add_subcommand("microbench", "time the bit helpers");
  micro->add_option("--iterations", iterations)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*chunk) return cmd_chunk(chunk_opt, chunk_path, quiet);
    if (*dedup) return cmd_dedup(dedup_opt, dedup_corpus, dedup_json, dedup_index, dedup_runs);
    if (*bench) {
      return cmd_bench(bench_opt, bench_corpus, bench_algos, bench_sizes, bench_runs, bench_csv, bench_json,
                       bench_micro);
    }
    if (*gen) return cmd_gen_corpus(manifest, gen_out);
    if (*tune_cmd) return cmd_tune(tune_target, tune_mode, tune_sample, tune_seed, tune_json);
    if (*micro) return cmd_microbench(iterations);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const InvariantError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvariant;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
