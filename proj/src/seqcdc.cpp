#include "cdc/seqcdc.hpp"

#include <algorithm>

namespace cdc {

SeqParams table_params(std::size_t target_avg) {
  if (target_avg <= 6 * KiB) return {SeqMode::Increasing, 5, 55, 256};
  if (target_avg <= 12 * KiB) return {SeqMode::Increasing, 5, 50, 256};
  return {SeqMode::Increasing, 5, 50, 512};
}

namespace detail {

namespace {

template <bool Decreasing, bool Skipping>
std::optional<std::size_t> scan_impl(const std::uint8_t* data, std::size_t limit,
                                     const SeqParams& params, ScanState& state) {
  const std::uint32_t seq_length = params.seq_length;
  std::uint32_t run = state.run_len;
  std::uint32_t opposing = state.opposing_count;
  std::size_t i = state.cursor;

  while (i + 1 < limit) {
    int diff = int{data[i + 1]} - int{data[i]};
    if constexpr (Decreasing) diff = -diff;
    if (diff > 0) {
      if (++run == seq_length) {
        state = {run, opposing, i + 1};
        return i + 2;
      }
      ++i;
      continue;
    }
    run = 1;
    if constexpr (Skipping) {
      if (diff < 0 && ++opposing == params.skip_trigger) {
        opposing = 0;
        i += 1 + params.skip_size;
        continue;
      }
    }
    ++i;
  }
  state = {run, opposing, i};
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> seq_scan(const std::uint8_t* data, std::size_t limit,
                                    const SeqParams& params, ScanState& state) {
  const bool dec = params.mode == SeqMode::Decreasing;
  if (params.skipping()) {
    return dec ? scan_impl<true, true>(data, limit, params, state)
               : scan_impl<false, true>(data, limit, params, state);
  }
  return dec ? scan_impl<true, false>(data, limit, params, state)
             : scan_impl<false, false>(data, limit, params, state);
}

}  // namespace detail

BoundaryEvent seq_find_boundary(ByteSpan data, std::size_t start, const SeqParams& params,
                                std::size_t min_size, std::size_t max_size) {
  const std::size_t n = data.size();
  const std::size_t limit = std::min(n, start + max_size);
  ScanState state{1, 0, start + (min_size - params.seq_length)};
  if (auto cut = detail::seq_scan(data.data(), limit, params, state)) {
    return {BoundaryKind::Sequence, *cut};
  }
  return forced_event(limit, n);
}

std::vector<BoundaryEvent> seq_chunk(ByteSpan data, const ChunkerConfig& cfg) {
  validate(cfg);
  std::vector<BoundaryEvent> events;
  if (data.empty()) return events;
  events.reserve(data.size() / cfg.target_avg + 1);
  std::size_t start = 0;
  while (start < data.size()) {
    const BoundaryEvent ev = seq_find_boundary(data, start, cfg.seq, cfg.min_size, cfg.max_size);
    events.push_back(ev);
    start = ev.position;
  }
  return events;
}

}  // namespace cdc
