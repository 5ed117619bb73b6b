#pragma once
// Monte-Carlo search for SeqCDC parameters that hit a target mean chunk size
// on seeded random data.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cdc/chunk_core.hpp"

namespace cdc {

struct SimulatedSizes {
  double mean = 0.0;
  std::size_t p50 = 0;
  std::size_t chunks = 0;
};

// Chunks `data` with Seq and the given params at the default limits for
// `target_avg`. The final chunk is counted.
SimulatedSizes simulate(ByteSpan data, std::size_t target_avg, const SeqParams& params,
                        Backend backend = Backend::Auto);

struct TunerCandidate {
  SeqParams params;
  double mean = 0.0;
  std::size_t p50 = 0;
};

struct TunerResult {
  std::size_t target_avg = 0;
  std::vector<TunerCandidate> candidates;  // sorted by |mean - target|
  SeqParams chosen;
  double chosen_mean = 0.0;
};

struct TunerOptions {
  std::uint32_t min_seq_length = 3;
  std::uint32_t max_seq_length = 7;
  std::vector<std::uint32_t> skip_sizes = {0, 128, 256, 512};
  std::uint32_t max_skip_trigger = 4096;
  double tolerance = 0.25;  // nothing this close means failure
  Backend backend = Backend::Auto;
};

// For every (seq_length, skip_size) the skip trigger is bisected: the mean
// chunk size falls as the trigger rises. Throws std::runtime_error listing
// the nearest candidates if none lands within options.tolerance.
TunerResult tune(std::size_t target_avg, SeqMode mode, std::size_t sample_size, std::uint64_t seed,
                 const TunerOptions& options = {});

}  // namespace cdc
