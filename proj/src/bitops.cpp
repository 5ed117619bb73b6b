#include "cdc/bitops.hpp"

#include <stdexcept>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace cdc::bits {

namespace {

void check_rank(std::uint64_t mask, unsigned k) {
  if (k == 0 || k > popcount(mask)) throw std::out_of_range("select_kth_set_bit: rank out of range");
}

}  // namespace

unsigned select_kth_set_bit_portable(std::uint64_t mask, unsigned k) {
  check_rank(mask, k);
  for (unsigned i = 1; i < k; ++i) mask &= mask - 1;
  return static_cast<unsigned>(std::countr_zero(mask));
}

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))

bool host_has_bmi2() {
  static const bool has = __builtin_cpu_supports("bmi2");
  return has;
}

__attribute__((target("bmi,bmi2"))) static unsigned pdep_select(std::uint64_t mask, unsigned k) {
  return static_cast<unsigned>(_tzcnt_u64(_pdep_u64(std::uint64_t{1} << (k - 1), mask)));
}

unsigned select_kth_set_bit_pdep(std::uint64_t mask, unsigned k) {
  check_rank(mask, k);
  return pdep_select(mask, k);
}

#else

bool host_has_bmi2() { return false; }

unsigned select_kth_set_bit_pdep(std::uint64_t mask, unsigned k) {
  return select_kth_set_bit_portable(mask, k);
}

#endif

unsigned select_kth_set_bit(std::uint64_t mask, unsigned k) {
  if (host_has_bmi2()) return select_kth_set_bit_pdep(mask, k);
  return select_kth_set_bit_portable(mask, k);
}

}  // namespace cdc::bits
