#include "cdc/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cdc/bitops.hpp"
#include "cdc/microbench.hpp"
#include "cdc/seqcdc_accel.hpp"

namespace cdc {

using ojson = nlohmann::ordered_json;

ojson params_json(const ChunkerConfig& cfg) {
  ojson p;
  p["target_avg"] = cfg.target_avg;
  p["min_size"] = cfg.min_size;
  p["max_size"] = cfg.max_size;
  switch (cfg.algorithm) {
    case Algorithm::Seq:
      p["mode"] = to_string(cfg.seq.mode);
      p["seq_length"] = cfg.seq.seq_length;
      p["skip_trigger"] = cfg.seq.skip_trigger;
      p["skip_size"] = cfg.seq.skip_size;
      break;
    case Algorithm::Rabin:
      p["window_size"] = cfg.hash.window_size;
      p["mask_bits"] = cfg.hash.mask_bits;
      break;
    case Algorithm::Gear:
      p["mask_bits"] = cfg.hash.mask_bits;
      break;
    case Algorithm::FastCDC:
      p["strict_bits"] = cfg.hash.strict_bits;
      p["relaxed_bits"] = cfg.hash.relaxed_bits;
      break;
    case Algorithm::AE:
    case Algorithm::RAM:
      p["window_size"] = cfg.extremum.window_size;
      break;
    case Algorithm::Fixed:
      break;
  }
  return p;
}

ChunkerConfig params_from_json(Algorithm algo, const ojson& p) {
  ChunkerConfig cfg = make_config(algo, p.at("target_avg").get<std::size_t>());
  cfg.min_size = p.at("min_size").get<std::size_t>();
  cfg.max_size = p.at("max_size").get<std::size_t>();
  switch (algo) {
    case Algorithm::Seq:
      cfg.seq.mode = parse_mode(p.at("mode").get<std::string>());
      cfg.seq.seq_length = p.at("seq_length").get<std::uint32_t>();
      cfg.seq.skip_trigger = p.at("skip_trigger").get<std::uint32_t>();
      cfg.seq.skip_size = p.at("skip_size").get<std::uint32_t>();
      break;
    case Algorithm::Rabin:
      cfg.hash.window_size = p.at("window_size").get<std::uint32_t>();
      cfg.hash.mask_bits = p.at("mask_bits").get<std::uint32_t>();
      break;
    case Algorithm::Gear:
      cfg.hash.mask_bits = p.at("mask_bits").get<std::uint32_t>();
      break;
    case Algorithm::FastCDC:
      cfg.hash.strict_bits = p.at("strict_bits").get<std::uint32_t>();
      cfg.hash.relaxed_bits = p.at("relaxed_bits").get<std::uint32_t>();
      break;
    case Algorithm::AE:
    case Algorithm::RAM:
      cfg.extremum.window_size = p.at("window_size").get<std::uint32_t>();
      break;
    case Algorithm::Fixed:
      break;
  }
  return cfg;
}

ojson to_json(const RunReport& r) {
  ojson j;
  j["corpus"] = r.corpus;
  j["algorithm"] = to_string(r.cfg.algorithm);
  j["params"] = params_json(r.cfg);
  j["total_bytes"] = r.total_bytes;
  j["chunk_count"] = r.chunk_count;
  j["unique_chunks"] = r.unique_chunks;
  j["unique_bytes"] = r.unique_bytes;
  j["space_savings"] = r.space_savings;
  j["mean_chunk"] = r.mean_chunk;
  j["histogram"] = ojson::array();
  for (const auto& b : r.histogram) j["histogram"].push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  j["throughput"] = {{"runs", r.throughput.runs}, {"mean", r.throughput.mean}, {"stddev", r.throughput.stddev}};
  j["backend"] = r.backend;
  j["host"] = r.host;
  j["version"] = r.version;
  const Quantiles& q = r.quantiles;
  j["quantiles"] = {{"p1", q.p1}, {"p25", q.p25}, {"p50", q.p50}, {"p75", q.p75}, {"p99", q.p99}};
  j["metadata_bytes"] = r.metadata_bytes;
  j["errors"] = ojson::array();
  for (const auto& e : r.errors) j["errors"].push_back({{"path", e.path}, {"message", e.message}});
  return j;
}

RunReport report_from_json(const ojson& j) {
  try {
    RunReport r;
    r.corpus = j.at("corpus").get<std::string>();
    r.cfg = params_from_json(parse_algorithm(j.at("algorithm").get<std::string>()), j.at("params"));
    r.total_bytes = j.at("total_bytes").get<std::uint64_t>();
    r.chunk_count = j.at("chunk_count").get<std::uint64_t>();
    r.unique_chunks = j.at("unique_chunks").get<std::uint64_t>();
    r.unique_bytes = j.at("unique_bytes").get<std::uint64_t>();
    r.space_savings = j.at("space_savings").get<double>();
    r.mean_chunk = j.at("mean_chunk").get<double>();
    for (const auto& b : j.at("histogram")) {
      r.histogram.push_back({b.at("lo").get<std::size_t>(), b.at("hi").get<std::size_t>(),
                             b.at("count").get<std::uint64_t>()});
    }
    const auto& t = j.at("throughput");
    r.throughput.runs = t.at("runs").get<std::vector<double>>();
    r.throughput.mean = t.at("mean").get<double>();
    r.throughput.stddev = t.at("stddev").get<double>();
    r.backend = j.at("backend").get<std::string>();
    r.host = j.at("host");
    r.version = j.at("version").get<std::string>();
    if (j.contains("quantiles")) {
      const auto& q = j.at("quantiles");
      r.quantiles = {q.at("p1").get<std::size_t>(), q.at("p25").get<std::size_t>(), q.at("p50").get<std::size_t>(),
                     q.at("p75").get<std::size_t>(), q.at("p99").get<std::size_t>()};
    }
    r.metadata_bytes = j.value("metadata_bytes", std::uint64_t{0});
    if (j.contains("errors")) {
      for (const auto& e : j.at("errors")) r.errors.push_back({e.at("path"), e.at("message")});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad report: ") + e.what());
  }
}

std::string csv_header() {
  return "corpus,algorithm,target_avg,min_size,max_size,backend,total_bytes,chunk_count,unique_chunks,"
         "unique_bytes,space_savings,mean_chunk,p50,throughput_mean,throughput_stddev";
}

std::string csv_row(const RunReport& r) {
  std::string corpus = r.corpus;
  if (corpus.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : corpus) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    corpus = quoted + "\"";
  }
  std::ostringstream s;
  s.precision(17);
  s << corpus << ',' << to_string(r.cfg.algorithm) << ',' << r.cfg.target_avg << ',' << r.cfg.min_size << ','
    << r.cfg.max_size << ',' << r.backend << ',' << r.total_bytes << ',' << r.chunk_count << ',' << r.unique_chunks
    << ',' << r.unique_bytes << ',' << r.space_savings << ',' << r.mean_chunk << ',' << r.quantiles.p50 << ','
    << r.throughput.mean << ',' << r.throughput.stddev;
  return s.str();
}

std::string backend_used(const ChunkerConfig& cfg, Backend requested) {
  if (cfg.algorithm != Algorithm::Seq) return "scalar";
  return std::string(to_string(resolve_backend(requested)));
}

namespace {

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto start = line.find_first_not_of(' ', colon + 1);
        return start == std::string::npos ? "" : line.substr(start);
      }
    }
  }
  return "unknown";
}

}  // namespace

ojson host_description(bool with_microbench) {
  ojson h;
  h["cpu"] = cpu_model();
  ojson features = ojson::array();
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("sse4.2")) features.push_back("sse4.2");
  if (__builtin_cpu_supports("avx2")) features.push_back("avx2");
  if (__builtin_cpu_supports("avx512f")) features.push_back("avx512f");
  if (__builtin_cpu_supports("avx512bw")) features.push_back("avx512bw");
  if (__builtin_cpu_supports("bmi2")) features.push_back("bmi2");
  if (__builtin_cpu_supports("popcnt")) features.push_back("popcnt");
#endif
  h["features"] = features;
  const auto widest = widest_supported_width();
  h["widest_lanes"] = widest ? lanes(*widest) : 0u;
  if (with_microbench) {
    const MicrobenchResult mb = microbench_bitops();
    ojson b;
    for (const auto& row : mb.rows) b[row.name] = row.ns_per_op;
    b["correct"] = mb.correctness_ok;
    h["bitops_ns"] = b;
  }
  return h;
}

RunReport make_report(std::string corpus, const ChunkerConfig& cfg, const DedupReport& d, const ThroughputStats& t,
                      Backend requested, const ojson& host) {
  RunReport r;
  r.corpus = std::move(corpus);
  r.cfg = cfg;
  r.total_bytes = d.total_bytes;
  r.chunk_count = d.chunk_count;
  r.unique_chunks = d.unique_chunks;
  r.unique_bytes = d.unique_bytes;
  r.space_savings = d.space_savings;
  r.mean_chunk = d.histogram.mean;
  r.histogram = d.histogram.buckets;
  r.quantiles = d.histogram.quantiles;
  r.metadata_bytes = d.metadata_bytes;
  r.throughput = t;
  r.backend = backend_used(cfg, requested);
  r.host = host;
  r.errors = d.errors;
  return r;
}

std::vector<ExperimentCell> run_experiment(const std::filesystem::path& corpus, std::span<const Algorithm> algos,
                                           std::span<const std::size_t> sizes, int runs, Backend backend,
                                           const ojson& host) {
  std::vector<std::vector<std::uint8_t>> files;
  std::vector<FileError> read_errors;
  for (const auto& path : list_corpus(corpus)) {
    try {
      files.push_back(read_file(path));
    } catch (const IoError& e) {
      read_errors.push_back({path.string(), e.what()});
    }
  }

  std::vector<ExperimentCell> cells;
  for (Algorithm algo : algos) {
    for (std::size_t size : sizes) {
      ExperimentCell cell{algo, size, std::nullopt, {}};
      try {
        const ChunkerConfig cfg = make_config(algo, size);
        DedupReport d = dedup_buffers(files, cfg, backend);
        d.errors = read_errors;
        const ThroughputStats t = measure_throughput(files, cfg, runs, backend);
        cell.report = make_report(corpus.string(), cfg, d, t, backend, host);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace cdc
