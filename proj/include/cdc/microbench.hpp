#pragma once
// Timing of the bit helpers over randomized masks.

#include <cstdint>
#include <string>
#include <vector>

namespace cdc {

struct MicrobenchRow {
  std::string name;
  double ns_per_op = 0.0;
  std::uint64_t ops = 0;
};

struct MicrobenchResult {
  std::vector<MicrobenchRow> rows;
  // popcount(0) == 0 and select_kth agreeing with a bit walk on every 16-bit mask.
  bool correctness_ok = false;
};

MicrobenchResult microbench_bitops(std::uint64_t iterations = 1u << 22, std::uint64_t seed = 1);

}  // namespace cdc
