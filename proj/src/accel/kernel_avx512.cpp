// 64-lane scanner. Compiled with -mavx512f -mavx512bw -mbmi -mbmi2 -mpopcnt.
#include <immintrin.h>

#include "accel/kernel.hpp"

namespace cdc::accel_detail {

namespace {

struct SelectPdep {
  static unsigned kth(std::uint64_t mask, unsigned k) {
    return static_cast<unsigned>(_tzcnt_u64(_pdep_u64(std::uint64_t{1} << (k - 1), mask)));
  }
};

inline __m512i load(const std::uint8_t* p) { return _mm512_loadu_si512(p); }

inline LaneMasks compute(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing) {
  __m512i prev = load(p);
  __m512i cur = load(p + 1);
  const std::uint64_t up = _mm512_cmpgt_epu8_mask(cur, prev);
  const std::uint64_t down = _mm512_cmplt_epu8_mask(cur, prev);
  const std::uint64_t extend = decreasing ? down : up;
  std::uint64_t combined = extend;
  for (std::uint32_t i = 2; i < seq_length && combined; ++i) {
    prev = cur;
    cur = load(p + i);
    combined &= decreasing ? _mm512_cmplt_epu8_mask(cur, prev) : _mm512_cmpgt_epu8_mask(cur, prev);
  }
  return {combined, extend, decreasing ? up : down};
}

}  // namespace

LaneMasks masks_avx512(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing) {
  return compute(p, seq_length, decreasing);
}

ScanOutcome scan_avx512(const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                        std::uint32_t opposing) {
  const std::uint32_t len = kp.seq_length;
  const bool dec = kp.decreasing;
  return scan_blocks<64, SelectPdep>(kp, cursor, run, opposing,
                                     [len, dec](const std::uint8_t* p) { return compute(p, len, dec); });
}

}  // namespace cdc::accel_detail
