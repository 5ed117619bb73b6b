#include "cdc/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "cdc/baseline_constants.hpp"
#include "cdc/prng.hpp"
#include "cdc/rabin.hpp"

namespace cdc {

BaselineConstants baseline_constants(std::size_t target_avg) {
  const BaselineConstants* nearest = &kCalibratedBaselines[0];
  double best = 1e300;
  for (const auto& row : kCalibratedBaselines) {
    const double d = std::abs(std::log2(static_cast<double>(target_avg) / static_cast<double>(row.target_avg)));
    if (d < best) {
      best = d;
      nearest = &row;
    }
  }
  if (nearest->target_avg == target_avg) return *nearest;

  const double ratio = static_cast<double>(target_avg) / static_cast<double>(nearest->target_avg);
  const int shift = static_cast<int>(std::lround(std::log2(ratio)));
  auto bits = [shift](std::uint32_t b) { return static_cast<std::uint32_t>(std::clamp<int>(int(b) + shift, 1, 48)); };
  BaselineConstants c = *nearest;
  c.target_avg = target_avg;
  c.rabin_bits = bits(c.rabin_bits);
  c.gear_bits = bits(c.gear_bits);
  c.fastcdc_strict_bits = bits(c.fastcdc_strict_bits);
  c.fastcdc_relaxed_bits = bits(c.fastcdc_relaxed_bits);
  c.ae_window = static_cast<std::uint32_t>(std::max(1.0, std::round(c.ae_window * ratio)));
  return c;
}

const std::array<std::uint64_t, 256>& gear_table() {
  static const std::array<std::uint64_t, 256> table = [] {
    std::array<std::uint64_t, 256> t{};
    SplitMix64 rng(kGearTableSeed);
    for (auto& v : t) v = rng.next();
    return t;
  }();
  return table;
}

namespace {

// True when the top `bits` bits of the hash are zero.
inline bool top_zero(std::uint64_t hash, std::uint32_t bits) { return bits == 0 || (hash >> (64 - bits)) == 0; }

}  // namespace

std::vector<std::size_t> rabin_candidates(ByteSpan data, const HashChunkerParams& params) {
  std::vector<std::size_t> out;
  RabinWindow window(params.window_size);
  const std::uint64_t mask = (std::uint64_t{1} << params.mask_bits) - 1;
  const std::size_t w = params.window_size;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::uint64_t fp = window.roll(data[i]);
    if (i + 1 >= w && (fp & mask) == 0) out.push_back(i + 1);
  }
  return out;
}

std::vector<std::size_t> gear_candidates(ByteSpan data, std::uint32_t mask_bits) {
  std::vector<std::size_t> out;
  const auto& table = gear_table();
  std::uint64_t hash = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    hash = (hash << 1) + table[data[i]];
    if (top_zero(hash, mask_bits)) out.push_back(i + 1);
  }
  return out;
}

std::vector<BoundaryEvent> fixed_chunk(ByteSpan data, const ChunkerConfig& cfg) {
  validate(cfg);
  std::vector<BoundaryEvent> events;
  events.reserve(data.size() / cfg.target_avg + 1);
  for (std::size_t pos = 0; pos < data.size();) {
    pos = std::min(data.size(), pos + cfg.target_avg);
    events.push_back(forced_event(pos, data.size()));
  }
  return events;
}

std::vector<BoundaryEvent> rabin_chunk(ByteSpan data, const ChunkerConfig& cfg) {
  validate(cfg);
  const auto candidates = rabin_candidates(data, cfg.hash);
  return enforce_limits(candidates, data.size(), cfg.min_size, cfg.max_size);
}

std::vector<BoundaryEvent> gear_chunk(ByteSpan data, const ChunkerConfig& cfg) {
  validate(cfg);
  const auto candidates = gear_candidates(data, cfg.hash.mask_bits);
  return enforce_limits(candidates, data.size(), cfg.min_size, cfg.max_size);
}

namespace {

// One FastCDC chunk starting at `start`; returns its end and whether a hash
// match produced it.
std::pair<std::size_t, bool> fastcdc_cut(ByteSpan data, std::size_t start, const ChunkerConfig& cfg) {
  const std::size_t n = data.size();
  if (n - start <= cfg.min_size) return {n, false};
  const std::size_t end = std::min(n, start + cfg.max_size);
  const std::size_t normal = std::min(end, start + cfg.target_avg);
  const auto& table = gear_table();
  const std::uint32_t strict = cfg.hash.strict_bits;
  const std::uint32_t relaxed = cfg.hash.relaxed_bits;

  std::uint64_t hash = 0;
  std::size_t i = start + cfg.min_size;
  for (; i < normal; ++i) {
    hash = (hash << 1) + table[data[i]];
    if (top_zero(hash, strict)) return {i + 1, true};
  }
  for (; i < end; ++i) {
    hash = (hash << 1) + table[data[i]];
    if (top_zero(hash, relaxed)) return {i + 1, true};
  }
  return {end, false};
}

std::pair<std::size_t, bool> ae_cut(ByteSpan data, std::size_t start, const ChunkerConfig& cfg) {
  const std::size_t n = data.size();
  const std::size_t end = std::min(n, start + cfg.max_size);
  const std::size_t window = cfg.extremum.window_size;
  std::uint8_t max_value = data[start];
  std::size_t max_pos = start;
  for (std::size_t i = start + 1; i < end; ++i) {
    if (data[i] <= max_value) {
      if (i >= max_pos + window && i + 1 - start >= cfg.min_size) return {i + 1, true};
    } else {
      max_value = data[i];
      max_pos = i;
    }
  }
  return {end, false};
}

std::pair<std::size_t, bool> ram_cut(ByteSpan data, std::size_t start, const ChunkerConfig& cfg) {
  const std::size_t n = data.size();
  const std::size_t end = std::min(n, start + cfg.max_size);
  const std::size_t window = std::min<std::size_t>(cfg.extremum.window_size, end - start);
  const std::uint8_t max_value = *std::max_element(data.begin() + start, data.begin() + start + window);
  const std::size_t first = std::max(start + window, start + cfg.min_size - 1);
  if (max_value == 255) return {end, false};
  for (std::size_t i = first; i < end; ++i) {
    if (data[i] > max_value) return {i + 1, true};
  }
  return {end, false};
}

template <class Cut>
std::vector<BoundaryEvent> chunk_by(ByteSpan data, const ChunkerConfig& cfg, Cut cut) {
  validate(cfg);
  std::vector<BoundaryEvent> events;
  events.reserve(data.size() / cfg.target_avg + 1);
  std::size_t start = 0;
  while (start < data.size()) {
    const auto [end, content] = cut(data, start, cfg);
    events.push_back(content ? BoundaryEvent{BoundaryKind::Sequence, end} : forced_event(end, data.size()));
    start = end;
  }
  return events;
}

}  // namespace

std::vector<BoundaryEvent> fastcdc_chunk(ByteSpan data, const ChunkerConfig& cfg) {
  return chunk_by(data, cfg, fastcdc_cut);
}

std::vector<BoundaryEvent> ae_chunk(ByteSpan data, const ChunkerConfig& cfg) { return chunk_by(data, cfg, ae_cut); }

std::vector<BoundaryEvent> ram_chunk(ByteSpan data, const ChunkerConfig& cfg) { return chunk_by(data, cfg, ram_cut); }

}  // namespace cdc
