#include "cdc/chunk_core.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "cdc/baseline_constants.hpp"
#include "cdc/baselines.hpp"
#include "cdc/seqcdc.hpp"
#include "cdc/seqcdc_accel.hpp"

namespace cdc {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 7> kAlgorithmNames = {{
    {Algorithm::Fixed, "fixed"},
    {Algorithm::Rabin, "rabin"},
    {Algorithm::Gear, "gear"},
    {Algorithm::FastCDC, "fastcdc"},
    {Algorithm::AE, "ae"},
    {Algorithm::RAM, "ram"},
    {Algorithm::Seq, "seq"},
}};

constexpr std::array<std::pair<Backend, std::string_view>, 5> kBackendNames = {{
    {Backend::Auto, "auto"},
    {Backend::Scalar, "scalar"},
    {Backend::W16, "w16"},
    {Backend::W32, "w32"},
    {Backend::W64, "w64"},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view to_string(Algorithm algo) {
  for (const auto& [a, name] : kAlgorithmNames) {
    if (a == algo) return name;
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& [a, n] : kAlgorithmNames) {
    if (n == key) return a;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(SeqMode mode) { return mode == SeqMode::Increasing ? "inc" : "dec"; }

SeqMode parse_mode(std::string_view name) {
  const std::string key = lower(name);
  if (key == "inc" || key == "increasing") return SeqMode::Increasing;
  if (key == "dec" || key == "decreasing") return SeqMode::Decreasing;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected inc or dec)");
}

std::string_view to_string(Backend backend) {
  for (const auto& [b, name] : kBackendNames) {
    if (b == backend) return name;
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& [b, n] : kBackendNames) {
    if (n == key) return b;
  }
  throw ConfigError("unknown backend '" + std::string(name) + "'");
}

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Sequence: return "sequence";
    case BoundaryKind::MaxForced: return "max";
    case BoundaryKind::EndOfStream: return "end";
  }
  return "unknown";
}

SizeLimits default_limits(std::size_t target_avg) {
  if (target_avg == 4 * KiB) return {1 * KiB, 8 * KiB};
  return {std::max<std::size_t>(1, target_avg / 2), target_avg * 2};
}

ChunkerConfig make_config(Algorithm algo, std::size_t target_avg) {
  if (target_avg == 0) throw ConfigError("target average must be positive");
  ChunkerConfig cfg;
  cfg.algorithm = algo;
  cfg.target_avg = target_avg;
  const SizeLimits lim = default_limits(target_avg);
  cfg.min_size = lim.min_size;
  cfg.max_size = lim.max_size;

  const BaselineConstants c = baseline_constants(target_avg);
  cfg.seq = table_params(target_avg);
  cfg.seq.seq_length = std::min<std::uint32_t>(cfg.seq.seq_length, static_cast<std::uint32_t>(cfg.min_size));
  cfg.seq.seq_length = std::max<std::uint32_t>(cfg.seq.seq_length, 2);
  cfg.hash.window_size = std::min<std::uint32_t>(kRabinWindow, static_cast<std::uint32_t>(cfg.min_size));
  cfg.hash.mask_bits = algo == Algorithm::Rabin ? c.rabin_bits : c.gear_bits;
  cfg.hash.strict_bits = c.fastcdc_strict_bits;
  cfg.hash.relaxed_bits = c.fastcdc_relaxed_bits;
  cfg.extremum.window_size = algo == Algorithm::AE ? c.ae_window : c.ram_window;
  cfg.extremum.window_size = std::min<std::uint32_t>(cfg.extremum.window_size,
                                                     static_cast<std::uint32_t>(cfg.max_size - 1));
  cfg.extremum.window_size = std::max<std::uint32_t>(cfg.extremum.window_size, 1);
  return cfg;
}

void validate(const ChunkerConfig& cfg) {
  if (cfg.min_size == 0) throw ConfigError("min_size must be positive");
  if (cfg.min_size > cfg.target_avg) throw ConfigError("min_size exceeds target_avg");
  if (cfg.target_avg > cfg.max_size) throw ConfigError("target_avg exceeds max_size");
  switch (cfg.algorithm) {
    case Algorithm::Seq:
      if (cfg.seq.seq_length < 2) throw ConfigError("seq_length must be at least 2");
      if (cfg.seq.seq_length > cfg.min_size) throw ConfigError("seq_length exceeds min_size");
      if (cfg.seq.skip_trigger < 1) throw ConfigError("skip_trigger must be at least 1");
      break;
    case Algorithm::Rabin:
      if (cfg.hash.window_size == 0) throw ConfigError("rabin window must be positive");
      if (cfg.hash.window_size > cfg.min_size) throw ConfigError("rabin window exceeds min_size");
      if (cfg.hash.mask_bits > 52) throw ConfigError("rabin mask wider than the fingerprint");
      break;
    case Algorithm::Gear:
      if (cfg.hash.mask_bits > 63) throw ConfigError("gear mask too wide");
      break;
    case Algorithm::FastCDC:
      if (cfg.hash.strict_bits > 63 || cfg.hash.relaxed_bits > 63) throw ConfigError("fastcdc mask too wide");
      break;
    case Algorithm::AE:
    case Algorithm::RAM:
      if (cfg.extremum.window_size == 0) throw ConfigError("extremum window must be positive");
      break;
    case Algorithm::Fixed:
      break;
  }
}

std::vector<BoundaryEvent> enforce_limits(std::span<const std::size_t> candidates, std::size_t length,
                                          std::size_t min_size, std::size_t max_size) {
  std::vector<BoundaryEvent> events;
  std::size_t last = 0;
  auto next = candidates.begin();
  while (last < length) {
    const std::size_t earliest = last + min_size;
    const std::size_t latest = std::min(length, last + max_size);
    while (next != candidates.end() && *next < earliest) ++next;
    if (next != candidates.end() && *next <= latest) {
      events.push_back({BoundaryKind::Sequence, *next});
      last = *next;
      ++next;
    } else {
      events.push_back(forced_event(latest, length));
      last = latest;
    }
  }
  return events;
}

std::vector<BoundaryEvent> chunk_stream(ByteSpan data, const ChunkerConfig& cfg, Backend backend) {
  validate(cfg);
  if (data.empty()) return {};
  switch (cfg.algorithm) {
    case Algorithm::Fixed: return fixed_chunk(data, cfg);
    case Algorithm::Rabin: return rabin_chunk(data, cfg);
    case Algorithm::Gear: return gear_chunk(data, cfg);
    case Algorithm::FastCDC: return fastcdc_chunk(data, cfg);
    case Algorithm::AE: return ae_chunk(data, cfg);
    case Algorithm::RAM: return ram_chunk(data, cfg);
    case Algorithm::Seq: break;
  }
  switch (resolve_backend(backend)) {
    case Backend::W16: return accel_chunk(data, cfg, LaneWidth::W16);
    case Backend::W32: return accel_chunk(data, cfg, LaneWidth::W32);
    case Backend::W64: return accel_chunk(data, cfg, LaneWidth::W64);
    default: return seq_chunk(data, cfg);
  }
}

bool is_strict_run(ByteSpan data, std::size_t end, std::size_t len, SeqMode mode) {
  if (len == 0 || end < len || end > data.size()) return false;
  for (std::size_t i = end - len; i + 1 < end; ++i) {
    const bool ok = mode == SeqMode::Increasing ? data[i] < data[i + 1] : data[i] > data[i + 1];
    if (!ok) return false;
  }
  return true;
}

AuditResult audit_events(ByteSpan data, const ChunkerConfig& cfg, std::span<const BoundaryEvent> events) {
  AuditResult r;
  r.chunks = events.size();
  std::size_t prev = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const BoundaryEvent& ev = events[i];
    if (ev.position <= prev || ev.position > data.size()) {
      r.partition_ok = false;
      break;
    }
    const std::size_t len = ev.position - prev;
    const bool last = i + 1 == events.size();
    if (len > cfg.max_size || (!last && len < cfg.min_size)) ++r.bounds_violations;
    if (cfg.algorithm == Algorithm::Seq && ev.kind == BoundaryKind::Sequence) {
      ++r.witness_checked;
      if (!is_strict_run(data, ev.position, cfg.seq.seq_length, cfg.seq.mode)) ++r.witness_violations;
    }
    prev = ev.position;
  }
  if (prev != data.size()) r.partition_ok = false;
  return r;
}

}  // namespace cdc
