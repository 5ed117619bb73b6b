#pragma once

#include <vector>

#include "cdc/chunk_core.hpp"
#include "cdc/corpus.hpp"
#include "cdc/prng.hpp"

namespace testutil {

// A valid random Seq configuration with small sizes, so boundaries, skips and
// max cuts all occur within a few KiB.
inline cdc::ChunkerConfig random_seq_config(cdc::SplitMix64& rng) {
  cdc::ChunkerConfig cfg;
  cfg.algorithm = cdc::Algorithm::Seq;
  cfg.seq.mode = rng.below(2) ? cdc::SeqMode::Increasing : cdc::SeqMode::Decreasing;
  cfg.seq.seq_length = 2 + static_cast<std::uint32_t>(rng.below(7));
  cfg.min_size = cfg.seq.seq_length + rng.below(600);
  cfg.target_avg = cfg.min_size + rng.below(600);
  cfg.max_size = cfg.target_avg + rng.below(1500);
  cfg.seq.skip_trigger = 1 + static_cast<std::uint32_t>(rng.below(rng.below(2) ? 8 : 80));
  const std::uint32_t sizes[] = {0, 1, 3, 15, 16, 17, 63, 64, 65, 200};
  cfg.seq.skip_size = sizes[rng.below(std::size(sizes))];
  return cfg;
}

// Uniform bytes, or a biased mix of ramps and plateaus that makes long
// monotone runs and equal neighbours common.
inline std::vector<std::uint8_t> random_data(cdc::SplitMix64& rng, std::size_t n) {
  std::vector<std::uint8_t> d(n);
  switch (rng.below(3)) {
    case 0: rng.fill(d); break;
    case 1:
      for (auto& b : d) b = static_cast<std::uint8_t>(rng.below(4));
      break;
    default: {
      std::uint8_t v = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto r = rng.below(10);
        if (r < 5) v = static_cast<std::uint8_t>(v + 1 + rng.below(3));
        else if (r < 7) v = static_cast<std::uint8_t>(v - 1 - rng.below(3));
        else if (r == 9) v = static_cast<std::uint8_t>(rng.next());
        d[i] = v;
      }
    }
  }
  return d;
}

}  // namespace testutil
