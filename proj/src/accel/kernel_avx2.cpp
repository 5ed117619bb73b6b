// 32-lane scanner. Compiled with -mavx2 -mbmi -mbmi2 -mpopcnt.
#include <immintrin.h>

#include "accel/kernel.hpp"

namespace cdc::accel_detail {

namespace {

struct SelectPdep {
  static unsigned kth(std::uint64_t mask, unsigned k) {
    return static_cast<unsigned>(_tzcnt_u64(_pdep_u64(std::uint64_t{1} << (k - 1), mask)));
  }
};

inline __m256i load_biased(const std::uint8_t* p) {
  return _mm256_xor_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)),
                          _mm256_set1_epi8(char(0x80)));
}

inline std::uint64_t greater(__m256i a, __m256i b) {
  return static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpgt_epi8(a, b)));
}

inline LaneMasks compute(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing) {
  __m256i prev = load_biased(p);
  __m256i cur = load_biased(p + 1);
  const std::uint64_t up = greater(cur, prev);
  const std::uint64_t down = greater(prev, cur);
  const std::uint64_t extend = decreasing ? down : up;
  std::uint64_t combined = extend;
  for (std::uint32_t i = 2; i < seq_length && combined; ++i) {
    prev = cur;
    cur = load_biased(p + i);
    combined &= decreasing ? greater(prev, cur) : greater(cur, prev);
  }
  return {combined, extend, decreasing ? up : down};
}

}  // namespace

LaneMasks masks_avx2(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing) {
  return compute(p, seq_length, decreasing);
}

ScanOutcome scan_avx2(const KernelParams& kp, std::size_t cursor, std::uint32_t run, std::uint32_t opposing) {
  const std::uint32_t len = kp.seq_length;
  const bool dec = kp.decreasing;
  return scan_blocks<32, SelectPdep>(kp, cursor, run, opposing,
                                     [len, dec](const std::uint8_t* p) { return compute(p, len, dec); });
}

}  // namespace cdc::accel_detail
