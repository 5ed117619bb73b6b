#pragma once
// Bit-manipulation helpers used by the lane-parallel scanner.

#include <bit>
#include <cstdint>
#include <optional>

namespace cdc::bits {

inline std::optional<unsigned> first_set_bit(std::uint64_t mask) {
  if (mask == 0) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(mask));
}

inline unsigned popcount(std::uint64_t mask) { return static_cast<unsigned>(std::popcount(mask)); }

// Index of the k-th lowest set bit, k is 1-based. Throws std::out_of_range
// unless 1 <= k <= popcount(mask). Uses PDEP+TZCNT when the host has BMI2.
unsigned select_kth_set_bit(std::uint64_t mask, unsigned k);

// Same contract, always the portable clear-lowest-bit route.
unsigned select_kth_set_bit_portable(std::uint64_t mask, unsigned k);

// Same contract, PDEP route. Only call when host_has_bmi2().
unsigned select_kth_set_bit_pdep(std::uint64_t mask, unsigned k);

bool host_has_bmi2();

}  // namespace cdc::bits
