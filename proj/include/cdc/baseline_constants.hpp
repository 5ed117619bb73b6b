#pragma once
// Baseline parameters calibrated by simulation on uniform random data with
// the default limits (min = avg/2, except 1 KiB at 4 KiB; max = 2*avg). Regenerate with
// `calibrate_baselines` and bump the version when any value changes.

#include <array>
#include <cstddef>
#include <cstdint>

namespace cdc {

inline constexpr int kBaselineConstantsVersion = 1;

inline constexpr std::uint64_t kGearTableSeed = 0x6765617243444331ull;
inline constexpr std::uint32_t kRabinWindow = 48;

struct BaselineConstants {
  std::size_t target_avg;
  std::uint32_t rabin_bits;
  std::uint32_t gear_bits;
  std::uint32_t fastcdc_strict_bits;
  std::uint32_t fastcdc_relaxed_bits;
  std::uint32_t ae_window;
  std::uint32_t ram_window;
};

inline constexpr std::array<BaselineConstants, 3> kCalibratedBaselines = {{
    {4096, 12, 12, 13, 9, 3842, 136},
    {8192, 12, 12, 14, 10, 7939, 98},
    {16384, 13, 13, 15, 11, 16137, 102},
}};

// Calibrated row for 4/8/16 KiB; other targets are scaled from the nearest row.
BaselineConstants baseline_constants(std::size_t target_avg);

}  // namespace cdc
