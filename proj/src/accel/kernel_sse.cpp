// 16-lane scanner. Compiled with -msse4.2 -mpopcnt.
#include <immintrin.h>

#include "accel/kernel.hpp"

namespace cdc::accel_detail {

namespace {

inline __m128i load_biased(const std::uint8_t* p) {
  // Flipping the sign bit turns the signed byte compare into an unsigned one.
  return _mm_xor_si128(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)), _mm_set1_epi8(char(0x80)));
}

inline std::uint64_t greater(__m128i a, __m128i b) {
  return static_cast<std::uint32_t>(_mm_movemask_epi8(_mm_cmpgt_epi8(a, b)));
}

inline LaneMasks compute(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing) {
  __m128i prev = load_biased(p);
  __m128i cur = load_biased(p + 1);
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

LaneMasks masks_sse(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing) {
  return compute(p, seq_length, decreasing);
}

ScanOutcome scan_sse(const KernelParams& kp, std::size_t cursor, std::uint32_t run, std::uint32_t opposing) {
  const std::uint32_t len = kp.seq_length;
  const bool dec = kp.decreasing;
  return scan_blocks<16, SelectByClearing>(kp, cursor, run, opposing,
                                           [len, dec](const std::uint8_t* p) { return compute(p, len, dec); });
}

}  // namespace cdc::accel_detail
