#pragma once
// Per-run reports: JSON with a stable key set, CSV rows, and the experiment
// runner that fills them.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cdc/chunk_core.hpp"
#include "cdc/dedup.hpp"
#include "json.hpp"

namespace cdc {

struct RunReport {
  std::string corpus;
  ChunkerConfig cfg;
  std::uint64_t total_bytes = 0;
  std::uint64_t chunk_count = 0;
  std::uint64_t unique_chunks = 0;
  std::uint64_t unique_bytes = 0;
  double space_savings = 0.0;
  double mean_chunk = 0.0;
  std::vector<HistogramBucket> histogram;
  Quantiles quantiles;
  std::uint64_t metadata_bytes = 0;
  ThroughputStats throughput;
  std::string backend;  // engine actually used
  nlohmann::ordered_json host = nlohmann::ordered_json::object();
  std::string version = CDC_VERSION;
  std::vector<FileError> errors;
};

nlohmann::ordered_json params_json(const ChunkerConfig& cfg);
ChunkerConfig params_from_json(Algorithm algo, const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::ordered_json& j);

std::string csv_header();
std::string csv_row(const RunReport& r);

// Engine name for reports: the resolved lane width for Seq, "scalar" otherwise.
std::string backend_used(const ChunkerConfig& cfg, Backend requested);

// CPU model, detected instruction sets, lane width in use and, if asked, the
// bit-helper timings.
nlohmann::ordered_json host_description(bool with_microbench);

RunReport make_report(std::string corpus, const ChunkerConfig& cfg, const DedupReport& d,
                      const ThroughputStats& t, Backend requested, const nlohmann::ordered_json& host);

struct ExperimentCell {
  Algorithm algorithm;
  std::size_t target_avg;
  std::optional<RunReport> report;
  std::string error;  // set when the cell failed
};

// Every (algorithm, size) pair over the corpus: dedup statistics plus
// chunking throughput over the resident files. A failing cell is recorded
// and the rest still run.
std::vector<ExperimentCell> run_experiment(const std::filesystem::path& corpus, std::span<const Algorithm> algos,
                                           std::span<const std::size_t> sizes, int runs, Backend backend,
                                           const nlohmann::ordered_json& host);

}  // namespace cdc
