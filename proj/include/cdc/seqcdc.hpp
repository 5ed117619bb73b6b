#pragma once
// Scalar SeqCDC.
//
// A boundary is placed right after the first run of `seq_length` strictly
// monotone bytes (increasing or decreasing, per mode). Each chunk starts with a
// sub-minimum region of min_size - seq_length bytes that is never examined.
// Adjacent pairs ordered against the mode are counted; once `skip_trigger` of
// them have been seen the scan jumps `skip_size` bytes past the second byte of
// the triggering pair and both counters restart. Equal neighbours neither
// extend a run nor count as opposing. Skipped bytes still count toward
// max_size.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cdc/chunk_core.hpp"

namespace cdc {

struct ScanState {
  // Bytes in the monotone run ending at `cursor` (1 = just the anchor byte).
  std::uint32_t run_len = 1;
  std::uint32_t opposing_count = 0;
  std::size_t cursor = 0;
};

// Table I parameter rows for 4, 8 and 16 KiB. Other targets get the row of
// the nearest listed size.
SeqParams table_params(std::size_t target_avg);

// One boundary starting from `start`.
BoundaryEvent seq_find_boundary(ByteSpan data, std::size_t start, const SeqParams& params,
                                std::size_t min_size, std::size_t max_size);

std::vector<BoundaryEvent> seq_chunk(ByteSpan data, const ChunkerConfig& cfg);

// Byte-at-a-time oracle. Re-checks the whole candidate window at every
// position instead of keeping a run counter.
std::vector<BoundaryEvent> seq_reference(ByteSpan data, const ChunkerConfig& cfg);

namespace detail {

// Continues a scalar scan from state.cursor until a boundary or until no pair
// with its second byte below `limit` remains. Returns the boundary position if
// one is found; otherwise the state is left at the exhausted cursor.
std::optional<std::size_t> seq_scan(const std::uint8_t* data, std::size_t limit,
                                    const SeqParams& params, ScanState& state);

}  // namespace detail

}  // namespace cdc
