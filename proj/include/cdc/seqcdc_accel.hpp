#pragma once
// Lane-parallel SeqCDC. Each block of W lanes is scanned with seq_length
// overlapping loads: AND-ing the W-bit "pair extends" masks of consecutive
// loads marks lanes where a qualifying run starts, and one opposite compare
// of the first two loads marks opposing pairs. Events inside a block are
// resolved in scalar byte order, so output is identical to seq_reference.

#include <cstdint>
#include <optional>
#include <vector>

#include "cdc/chunk_core.hpp"
#include "cdc/seqcdc.hpp"

namespace cdc {

enum class LaneWidth : std::uint32_t { W16 = 16, W32 = 32, W64 = 64 };

inline unsigned lanes(LaneWidth w) { return static_cast<unsigned>(w); }

enum class BlockEvent { None, Boundary, Skip };

struct BlockScanResult {
  BlockEvent event = BlockEvent::None;
  // Lane of the first qualifying run start within the block. A run carried in
  // from the previous block can end the block without one.
  std::optional<unsigned> boundary_bit;
  std::uint64_t opposing_mask = 0;
  std::uint32_t opposing_total_after = 0;
  std::uint32_t consumed = 0;
  // Boundary offset for Boundary, landing offset for Skip, next block for None.
  std::size_t position = 0;
  std::uint32_t run_len_after = 1;
};

// Requires pos + w + seq_length - 1 <= data.size(); throws std::out_of_range
// otherwise. Uses the host's instructions for w when available and a portable
// lane emulation when not.
BlockScanResult scan_block(ByteSpan data, std::size_t pos, const SeqParams& params, const ScanState& state,
                           LaneWidth w);

bool host_supports(LaneWidth w);
std::optional<LaneWidth> widest_supported_width();

// The engine actually used for a request: unsupported widths fall back to the
// widest supported one and then to Scalar. Auto picks the widest.
Backend resolve_backend(Backend requested);

// Boundary-identical to seq_reference for every input and width.
std::vector<BoundaryEvent> accel_chunk(ByteSpan data, const ChunkerConfig& cfg, LaneWidth w);

// The same scan using the portable lane emulation; test-only reference for the
// block logic on hosts without the wide instructions.
std::vector<BoundaryEvent> accel_chunk_portable(ByteSpan data, const ChunkerConfig& cfg, LaneWidth w);

}  // namespace cdc
