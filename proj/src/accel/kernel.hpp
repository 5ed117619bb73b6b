#pragma once
// Internal to the accelerated SeqCDC scanner. Included by one translation unit
// per instruction set, each compiled with its own target flags, so everything
// here has internal linkage and touches no standard-library templates. That
// keeps wide-ISA code from leaking into shared inline definitions.

#include <cstddef>
#include <cstdint>

namespace cdc::accel_detail {

struct KernelParams {
  const std::uint8_t* data;
  std::size_t limit;
  std::uint32_t seq_length;
  std::uint32_t skip_trigger;
  std::uint32_t skip_size;
  bool decreasing;
  bool skipping;
};

// Per block of w lanes, lane k describes the pair (pos + k, pos + k + 1).
struct LaneMasks {
  std::uint64_t combined;  // run of seq_length monotone bytes starts at lane k
  std::uint64_t extend;    // pair ordered with the mode
  std::uint64_t opposing;  // pair ordered against the mode
};

enum class Event : std::uint8_t { None, Boundary, Skip };

struct Decision {
  Event event;
  std::int32_t boundary_bit;     // lane of the winning in-block run start, -1 if none
  std::uint32_t consumed;        // lanes examined up to and including the event lane
  std::uint64_t counted_opposing;
  std::uint32_t opposing_after;
  std::uint32_t run_after;
  std::size_t position;          // boundary, or skip landing point
};

struct ScanOutcome {
  bool found;
  std::size_t position;  // boundary if found
  std::size_t cursor;    // otherwise where the scalar tail resumes
  std::uint32_t run_len;
  std::uint32_t opposing;
};

// Entry points, one per instruction set. pos + w + seq_length - 1 <= limit
// must hold for block calls. scan_* loop over whole blocks and stop at the
// first boundary or when the next block would cross `limit`.
LaneMasks masks_portable(const std::uint8_t* p, unsigned w, std::uint32_t seq_length, bool decreasing);
ScanOutcome scan_portable(unsigned w, const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                          std::uint32_t opposing);

#if defined(CDC_HAVE_X86_KERNELS)
LaneMasks masks_sse(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing);
LaneMasks masks_avx2(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing);
LaneMasks masks_avx512(const std::uint8_t* p, std::uint32_t seq_length, bool decreasing);
ScanOutcome scan_sse(const KernelParams& kp, std::size_t cursor, std::uint32_t run, std::uint32_t opposing);
ScanOutcome scan_avx2(const KernelParams& kp, std::size_t cursor, std::uint32_t run, std::uint32_t opposing);
ScanOutcome scan_avx512(const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                        std::uint32_t opposing);
#endif

namespace {

inline std::uint64_t low_bits(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Select is a policy with `static unsigned kth(std::uint64_t mask, unsigned k)`
// (1-based), so the PDEP route is only compiled where BMI2 is enabled.
struct SelectByClearing {
  static unsigned kth(std::uint64_t mask, unsigned k) {
    for (unsigned i = 1; i < k; ++i) mask &= mask - 1;
    return static_cast<unsigned>(__builtin_ctzll(mask));
  }
};

// Resolves one block's masks against the carried scan state in scalar byte
// order. `pos` is the block's first byte.
template <class Select>
inline Decision decide(const LaneMasks& m, unsigned w, std::size_t pos, std::uint32_t seq_length,
                       std::uint32_t run, std::uint32_t opposing, std::uint32_t skip_trigger,
                       std::uint32_t skip_size, bool skipping) {
  const std::uint64_t lanes = low_bits(w);
  const std::uint64_t extend = m.extend & lanes;
  const std::uint64_t combined = m.combined & lanes;
  const std::uint64_t opp = m.opposing & lanes;

  // A run carried in from the previous block completes after `need` more
  // extending pairs. No opposing pair can precede it inside the block.
  if (run >= 2) {
    const unsigned need = seq_length - run;
    if (need <= w && (extend & low_bits(need)) == low_bits(need)) {
      return {Event::Boundary, -1, need, 0, opposing, seq_length, pos + need + 1};
    }
  }

  const unsigned first = combined ? static_cast<unsigned>(__builtin_ctzll(combined)) : w;
  const std::uint64_t counted = opp & low_bits(first);
  const unsigned seen = static_cast<unsigned>(__builtin_popcountll(counted));

  if (skipping && opposing + seen >= skip_trigger) {
    const unsigned j = Select::kth(counted, skip_trigger - opposing);
    return {Event::Skip, combined ? static_cast<std::int32_t>(first) : -1, j + 1,
            counted & low_bits(j + 1), 0, 1, pos + j + 1 + skip_size};
  }
  if (combined) {
    return {Event::Boundary, static_cast<std::int32_t>(first), first + 1, counted,
            skipping ? opposing + seen : 0, seq_length, pos + first + seq_length};
  }

  std::uint32_t run_after;
  if (extend == lanes) {
    run_after = run + w;
  } else {
    // Extending pairs at the top of the block continue into the next one.
    const unsigned top = static_cast<unsigned>(__builtin_clzll(~(extend << (64 - w))));
    run_after = top + 1;
  }
  return {Event::None, -1, w, counted, skipping ? opposing + seen : 0, run_after, pos + w};
}

template <unsigned W, class Select, class Masks>
inline ScanOutcome scan_blocks(const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                               std::uint32_t opposing, Masks masks) {
  const std::size_t span = W + kp.seq_length - 1;
  while (cursor + span <= kp.limit) {
    const LaneMasks m = masks(kp.data + cursor);
    // Fast path: nothing in this block can end the scan.
    if (m.combined == 0 && run < 2) {
      if (!kp.skipping) {
        const std::uint64_t ext = m.extend & low_bits(W);
        run = ext == low_bits(W) ? run + W
                                 : static_cast<std::uint32_t>(__builtin_clzll(~(ext << (64 - W)))) + 1;
        cursor += W;
        continue;
      }
    }
    const Decision d = decide<Select>(m, W, cursor, kp.seq_length, run, opposing, kp.skip_trigger,
                                      kp.skip_size, kp.skipping);
    switch (d.event) {
      case Event::Boundary:
        return {true, d.position, cursor, d.run_after, d.opposing_after};
      case Event::Skip:
        cursor = d.position;
        run = 1;
        opposing = 0;
        break;
      case Event::None:
        cursor += W;
        run = d.run_after;
        opposing = d.opposing_after;
        break;
    }
  }
  return {false, 0, cursor, run, opposing};
}

}  // namespace

}  // namespace cdc::accel_detail
