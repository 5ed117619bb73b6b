// Finds baseline parameters whose mean chunk size on uniform random data is
// closest to each target, using the default min/max limits. Prints rows in
// the layout of kCalibratedBaselines.
//
//   calibrate_baselines [sample_mib] [seed]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "cdc/baselines.hpp"
#include "cdc/corpus.hpp"

using namespace cdc;

namespace {

double mean_for(ByteSpan data, const ChunkerConfig& cfg) {
  return static_cast<double>(data.size()) / static_cast<double>(chunk_stream(data, cfg).size());
}

struct Best {
  std::uint32_t value = 0;
  double mean = 0.0;
};

Best best_of(std::uint32_t lo, std::uint32_t hi, double target, const std::function<double(std::uint32_t)>& f) {
  Best b;
  double err = 1e300;
  for (std::uint32_t v = lo; v <= hi; ++v) {
    const double m = f(v);
    if (std::abs(m - target) < err) {
      err = std::abs(m - target);
      b = {v, m};
    }
  }
  return b;
}

// Mean grows with the window; bisect for the crossing and keep the closer end.
Best bisect(std::uint32_t lo, std::uint32_t hi, double target, const std::function<double(std::uint32_t)>& f) {
  double flo = f(lo), fhi = f(hi);
  if (flo >= target) return {lo, flo};
  if (fhi <= target) return {hi, fhi};
  while (hi - lo > 1) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    const double fm = f(mid);
    if (fm < target) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo - target) <= std::abs(fhi - target) ? Best{lo, flo} : Best{hi, fhi};
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t mib = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 64;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 0xca1b;
  const auto data = random_bytes(seed, mib * MiB);

  for (std::size_t target : {4 * KiB, 8 * KiB, 16 * KiB}) {
    const double t = static_cast<double>(target);
    const int log2t = static_cast<int>(std::lround(std::log2(t)));
    auto cfg_for = [&](Algorithm a) { return make_config(a, target); };

    const Best rabin = best_of(log2t - 4, log2t + 2, t, [&](std::uint32_t b) {
      ChunkerConfig c = cfg_for(Algorithm::Rabin);
      c.hash.mask_bits = b;
      return mean_for(data, c);
    });
    const Best gear = best_of(log2t - 4, log2t + 2, t, [&](std::uint32_t b) {
      ChunkerConfig c = cfg_for(Algorithm::Gear);
      c.hash.mask_bits = b;
      return mean_for(data, c);
    });
    // Normalization level 2: the strict mask has four more bits than the
    // relaxed one. Only the centre moves.
    const Best fast = best_of(log2t - 4, log2t + 2, t, [&](std::uint32_t centre) {
      ChunkerConfig c = cfg_for(Algorithm::FastCDC);
      c.hash.strict_bits = centre + 2;
      c.hash.relaxed_bits = centre - 2;
      return mean_for(data, c);
    });
    const auto max_window = static_cast<std::uint32_t>(2 * target - 1);
    const Best ae = bisect(1, max_window, t, [&](std::uint32_t w) {
      ChunkerConfig c = cfg_for(Algorithm::AE);
      c.extremum.window_size = w;
      return mean_for(data, c);
    });
    const Best ram = bisect(1, max_window, t, [&](std::uint32_t w) {
      ChunkerConfig c = cfg_for(Algorithm::RAM);
      c.extremum.window_size = w;
      return mean_for(data, c);
    });

    std::printf("    {%zu, %u, %u, %u, %u, %u, %u},\n", target, rabin.value, gear.value, fast.value + 2,
                fast.value - 2, ae.value, ram.value);
    std::fprintf(stderr,
                 "  target %zu: rabin %.0f gear %.0f fastcdc %.0f ae %.0f ram %.0f\n", target, rabin.mean,
                 gear.mean, fast.mean, ae.mean, ram.mean);
  }
  return 0;
}
