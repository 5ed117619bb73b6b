#include "cdc/microbench.hpp"

#include <chrono>

#include "cdc/bitops.hpp"
#include "cdc/prng.hpp"

namespace cdc {

namespace {

bool check_exhaustive16() {
  for (std::uint32_t m = 1; m < (1u << 16); ++m) {
    unsigned k = 0;
    for (unsigned b = 0; b < 16; ++b) {
      if (!(m >> b & 1)) continue;
      ++k;
      if (bits::select_kth_set_bit(m, k) != b) return false;
      if (bits::select_kth_set_bit_portable(m, k) != b) return false;
    }
  }
  return bits::popcount(0) == 0 && !bits::first_set_bit(0).has_value();
}

template <class F>
MicrobenchRow time_op(const char* name, const std::vector<std::uint64_t>& masks, std::uint64_t iterations, F op) {
  std::uint64_t sink = 0;
  const std::size_t n = masks.size();
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < iterations; ++i) sink += op(masks[i & (n - 1)]);
  const std::chrono::duration<double, std::nano> dt = std::chrono::steady_clock::now() - t0;
  asm volatile("" : : "r"(sink) : "memory");
  return {name, dt.count() / static_cast<double>(iterations), iterations};
}

}  // namespace

MicrobenchResult microbench_bitops(std::uint64_t iterations, std::uint64_t seed) {
  if (iterations == 0) iterations = 1;
  SplitMix64 rng(seed);
  std::vector<std::uint64_t> masks(4096);
  for (auto& m : masks) m = rng.next() | 1;  // at least one set bit
  // The rank comes from the mask's top bits so each op depends on one word.
  auto rank_of = [](std::uint64_t m) { return 1 + static_cast<unsigned>((m >> 58) % bits::popcount(m)); };

  MicrobenchResult r;
  r.correctness_ok = check_exhaustive16();
  r.rows.push_back(time_op("first_set_bit", masks, iterations,
                           [](std::uint64_t m) { return *bits::first_set_bit(m); }));
  r.rows.push_back(time_op("popcount", masks, iterations, [](std::uint64_t m) { return bits::popcount(m); }));
  r.rows.push_back(time_op("select_kth_portable", masks, iterations, [&](std::uint64_t m) {
    return bits::select_kth_set_bit_portable(m, rank_of(m));
  }));
  if (bits::host_has_bmi2()) {
    r.rows.push_back(time_op("select_kth_pdep", masks, iterations, [&](std::uint64_t m) {
      return bits::select_kth_set_bit_pdep(m, rank_of(m));
    }));
  }
  return r;
}

}  // namespace cdc
