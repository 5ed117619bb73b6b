#include <algorithm>
#include <cstdint>

#include "cdc/seqcdc.hpp"

// Deliberately slow. No run counter: every pair re-checks whether the
// seq_length bytes ending at its second byte form a qualifying run that
// starts at or after the current anchor.

namespace cdc {

namespace {

bool opposing_pair(std::uint8_t a, std::uint8_t b, SeqMode mode) {
  if (mode == SeqMode::Increasing) return a > b;
  return a < b;
}

}  // namespace

std::vector<BoundaryEvent> seq_reference(ByteSpan data, const ChunkerConfig& cfg) {
  validate(cfg);
  const SeqParams& p = cfg.seq;
  const std::int64_t n = static_cast<std::int64_t>(data.size());
  const std::int64_t len = p.seq_length;
  std::vector<BoundaryEvent> events;

  std::int64_t base = 0;
  while (base < n) {
    const std::int64_t limit = std::min<std::int64_t>(n, base + static_cast<std::int64_t>(cfg.max_size));
    std::int64_t anchor = base + static_cast<std::int64_t>(cfg.min_size) - len;
    std::int64_t opposing = 0;
    std::int64_t cut = -1;

    std::int64_t i = anchor;
    while (i + 1 < limit) {
      const std::int64_t run_start = i + 2 - len;
      if (run_start >= anchor &&
          is_strict_run(data, static_cast<std::size_t>(i + 2), static_cast<std::size_t>(len), p.mode)) {
        cut = i + 2;
        break;
      }
      if (p.skip_size > 0 && opposing_pair(data[i], data[i + 1], p.mode)) {
        opposing += 1;
        if (opposing == p.skip_trigger) {
          anchor = i + 1 + p.skip_size;
          opposing = 0;
          i = anchor;
          continue;
        }
      }
      i += 1;
    }

    if (cut >= 0) {
      events.push_back({BoundaryKind::Sequence, static_cast<std::size_t>(cut)});
      base = cut;
    } else {
      events.push_back(forced_event(static_cast<std::size_t>(limit), data.size()));
      base = limit;
    }
  }
  return events;
}

}  // namespace cdc
