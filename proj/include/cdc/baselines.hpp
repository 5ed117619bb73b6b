#pragma once
// Comparison chunkers. Each produces a boundary list with the same partition
// and size-bound guarantees as SeqCDC.
//
//   fixed    cut every target_avg bytes
//   rabin    Rabin fingerprint over a sliding window, cut where low bits are 0
//   gear     hash = (hash << 1) + table[byte], cut where the top bits are 0
//   fastcdc  Gear with sub-minimum skipping and two-mask normalization
//   ae       asymmetric extremum: a maximum not exceeded for `window` bytes
//   ram      running maximum of the first `window` bytes, cut after the first
//            later byte strictly above it
//
// Rabin and Gear emit raw candidates over the whole stream that enforce_limits
// then filters. The others scan chunk by chunk and only accept cut points at
// or beyond min_size.

#include <array>
#include <cstdint>
#include <vector>

#include "cdc/chunk_core.hpp"

namespace cdc {

const std::array<std::uint64_t, 256>& gear_table();

std::vector<std::size_t> rabin_candidates(ByteSpan data, const HashChunkerParams& params);
std::vector<std::size_t> gear_candidates(ByteSpan data, std::uint32_t mask_bits);

std::vector<BoundaryEvent> fixed_chunk(ByteSpan data, const ChunkerConfig& cfg);
std::vector<BoundaryEvent> rabin_chunk(ByteSpan data, const ChunkerConfig& cfg);
std::vector<BoundaryEvent> gear_chunk(ByteSpan data, const ChunkerConfig& cfg);
std::vector<BoundaryEvent> fastcdc_chunk(ByteSpan data, const ChunkerConfig& cfg);
std::vector<BoundaryEvent> ae_chunk(ByteSpan data, const ChunkerConfig& cfg);
std::vector<BoundaryEvent> ram_chunk(ByteSpan data, const ChunkerConfig& cfg);

}  // namespace cdc
