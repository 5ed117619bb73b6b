#include "cdc/seqcdc_accel.hpp"

#include <algorithm>
#include <stdexcept>

#include "accel/kernel.hpp"
#include "cdc/bitops.hpp"

namespace cdc {

namespace accel_detail {

LaneMasks masks_portable(const std::uint8_t* p, unsigned w, std::uint32_t seq_length, bool decreasing) {
  LaneMasks m{0, 0, 0};
  for (unsigned k = 0; k < w; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    const bool up = p[k + 1] > p[k];
    const bool down = p[k + 1] < p[k];
    if (decreasing ? down : up) m.extend |= bit;
    if (decreasing ? up : down) m.opposing |= bit;
    bool run = true;
    for (std::uint32_t i = 0; i + 1 < seq_length && run; ++i) {
      run = decreasing ? p[k + i + 1] < p[k + i] : p[k + i + 1] > p[k + i];
    }
    if (run) m.combined |= bit;
  }
  return m;
}

namespace {

template <unsigned W>
ScanOutcome scan_portable_w(const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                            std::uint32_t opposing) {
  const std::uint32_t len = kp.seq_length;
  const bool dec = kp.decreasing;
  return scan_blocks<W, SelectByClearing>(kp, cursor, run, opposing, [len, dec](const std::uint8_t* p) {
    return masks_portable(p, W, len, dec);
  });
}

}  // namespace

ScanOutcome scan_portable(unsigned w, const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                          std::uint32_t opposing) {
  switch (w) {
    case 16: return scan_portable_w<16>(kp, cursor, run, opposing);
    case 32: return scan_portable_w<32>(kp, cursor, run, opposing);
    default: return scan_portable_w<64>(kp, cursor, run, opposing);
  }
}

}  // namespace accel_detail

namespace {

using namespace accel_detail;

using ScanFn = ScanOutcome (*)(const KernelParams&, std::size_t, std::uint32_t, std::uint32_t);
using MaskFn = LaneMasks (*)(const std::uint8_t*, std::uint32_t, bool);

struct HostCaps {
  bool w16 = false;
  bool w32 = false;
  bool w64 = false;
};

const HostCaps& host_caps() {
  static const HostCaps caps = [] {
    HostCaps c;
#if defined(CDC_HAVE_X86_KERNELS)
    __builtin_cpu_init();
    c.w16 = __builtin_cpu_supports("sse4.2") && __builtin_cpu_supports("popcnt");
    c.w32 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2") && __builtin_cpu_supports("popcnt");
    c.w64 = __builtin_cpu_supports("avx512bw") && __builtin_cpu_supports("avx512f") &&
            __builtin_cpu_supports("bmi2") && __builtin_cpu_supports("popcnt");
#endif
    return c;
  }();
  return caps;
}

ScanFn native_scan(LaneWidth w) {
#if defined(CDC_HAVE_X86_KERNELS)
  if (!host_supports(w)) return nullptr;
  switch (w) {
    case LaneWidth::W16: return &scan_sse;
    case LaneWidth::W32: return &scan_avx2;
    case LaneWidth::W64: return &scan_avx512;
  }
#else
  (void)w;
#endif
  return nullptr;
}

MaskFn native_masks(LaneWidth w) {
#if defined(CDC_HAVE_X86_KERNELS)
  if (!host_supports(w)) return nullptr;
  switch (w) {
    case LaneWidth::W16: return &masks_sse;
    case LaneWidth::W32: return &masks_avx2;
    case LaneWidth::W64: return &masks_avx512;
  }
#else
  (void)w;
#endif
  return nullptr;
}

KernelParams kernel_params(ByteSpan data, std::size_t limit, const SeqParams& p) {
  return {data.data(), limit, p.seq_length, p.skip_trigger, p.skip_size, p.mode == SeqMode::Decreasing,
          p.skipping()};
}

template <class BlockScan>
std::vector<BoundaryEvent> chunk_with(ByteSpan data, const ChunkerConfig& cfg, BlockScan&& blocks) {
  validate(cfg);
  std::vector<BoundaryEvent> events;
  if (data.empty()) return events;
  events.reserve(data.size() / cfg.target_avg + 1);
  const SeqParams& p = cfg.seq;
  const std::size_t n = data.size();

  std::size_t base = 0;
  while (base < n) {
    const std::size_t limit = std::min(n, base + cfg.max_size);
    const KernelParams kp = kernel_params(data, limit, p);
    const ScanOutcome out = blocks(kp, base + (cfg.min_size - p.seq_length), 1u, 0u);
    if (out.found) {
      events.push_back({BoundaryKind::Sequence, out.position});
      base = out.position;
      continue;
    }
    // Fewer bytes than one block remain: finish with the scalar scan,
    // continuing the carried counters.
    ScanState state{out.run_len, out.opposing, out.cursor};
    if (auto cut = detail::seq_scan(data.data(), limit, p, state)) {
      events.push_back({BoundaryKind::Sequence, *cut});
      base = *cut;
    } else {
      events.push_back(forced_event(limit, n));
      base = limit;
    }
  }
  return events;
}

}  // namespace

bool host_supports(LaneWidth w) {
  const HostCaps& c = host_caps();
  switch (w) {
    case LaneWidth::W16: return c.w16;
    case LaneWidth::W32: return c.w32;
    case LaneWidth::W64: return c.w64;
  }
  return false;
}

std::optional<LaneWidth> widest_supported_width() {
  for (LaneWidth w : {LaneWidth::W64, LaneWidth::W32, LaneWidth::W16}) {
    if (host_supports(w)) return w;
  }
  return std::nullopt;
}

Backend resolve_backend(Backend requested) {
  auto as_backend = [](LaneWidth w) {
    switch (w) {
      case LaneWidth::W16: return Backend::W16;
      case LaneWidth::W32: return Backend::W32;
      case LaneWidth::W64: return Backend::W64;
    }
    return Backend::Scalar;
  };
  std::optional<LaneWidth> want;
  switch (requested) {
    case Backend::Scalar: return Backend::Scalar;
    case Backend::Auto: break;
    case Backend::W16: want = LaneWidth::W16; break;
    case Backend::W32: want = LaneWidth::W32; break;
    case Backend::W64: want = LaneWidth::W64; break;
  }
  if (want && host_supports(*want)) return as_backend(*want);
  if (auto widest = widest_supported_width()) return as_backend(*widest);
  return Backend::Scalar;
}

BlockScanResult scan_block(ByteSpan data, std::size_t pos, const SeqParams& params, const ScanState& state,
                           LaneWidth w) {
  const unsigned width = lanes(w);
  if (pos + width + params.seq_length - 1 > data.size()) {
    throw std::out_of_range("scan_block: block extends past the data");
  }
  const bool dec = params.mode == SeqMode::Decreasing;
  const MaskFn native = native_masks(w);
  const LaneMasks m = native ? native(data.data() + pos, params.seq_length, dec)
                             : masks_portable(data.data() + pos, width, params.seq_length, dec);
  const std::uint32_t opposing = params.skipping() ? state.opposing_count : 0;
  const Decision d = decide<SelectByClearing>(m, width, pos, params.seq_length, state.run_len, opposing,
                                              params.skip_trigger, params.skip_size, params.skipping());

  BlockScanResult r;
  r.event = d.event == Event::Boundary ? BlockEvent::Boundary
            : d.event == Event::Skip   ? BlockEvent::Skip
                                       : BlockEvent::None;
  if (d.boundary_bit >= 0) r.boundary_bit = static_cast<unsigned>(d.boundary_bit);
  r.opposing_mask = m.opposing & (width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1);
  r.opposing_total_after = d.opposing_after;
  r.consumed = d.consumed;
  r.position = d.position;
  r.run_len_after = d.run_after;
  return r;
}

std::vector<BoundaryEvent> accel_chunk(ByteSpan data, const ChunkerConfig& cfg, LaneWidth w) {
  ScanFn scan = native_scan(w);
  if (!scan) {
    if (auto widest = widest_supported_width()) scan = native_scan(*widest);
  }
  if (!scan) return seq_chunk(data, cfg);
  return chunk_with(data, cfg, [scan](const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                                      std::uint32_t opp) { return scan(kp, cursor, run, opp); });
}

std::vector<BoundaryEvent> accel_chunk_portable(ByteSpan data, const ChunkerConfig& cfg, LaneWidth w) {
  const unsigned width = lanes(w);
  return chunk_with(data, cfg, [width](const KernelParams& kp, std::size_t cursor, std::uint32_t run,
                                       std::uint32_t opp) { return scan_portable(width, kp, cursor, run, opp); });
}

}  // namespace cdc
