#include "cdc/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdc/corpus.hpp"

namespace cdc {

SimulatedSizes simulate(ByteSpan data, std::size_t target_avg, const SeqParams& params, Backend backend) {
  ChunkerConfig cfg = make_config(Algorithm::Seq, target_avg);
  cfg.seq = params;
  const auto events = chunk_stream(data, cfg, backend);
  SimulatedSizes s;
  s.chunks = events.size();
  if (events.empty()) return s;
  std::vector<std::size_t> lengths;
  lengths.reserve(events.size());
  std::size_t prev = 0;
  for (const auto& ev : events) {
    lengths.push_back(ev.position - prev);
    prev = ev.position;
  }
  s.mean = static_cast<double>(data.size()) / static_cast<double>(events.size());
  const std::size_t mid = (lengths.size() + 1) / 2 - 1;
  std::nth_element(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(mid), lengths.end());
  s.p50 = lengths[mid];
  return s;
}

TunerResult tune(std::size_t target_avg, SeqMode mode, std::size_t sample_size, std::uint64_t seed,
                 const TunerOptions& options) {
  const SizeLimits lim = default_limits(target_avg);
  const std::vector<std::uint8_t> sample = random_bytes(seed, sample_size);
  const double target = static_cast<double>(target_avg);

  TunerResult result;
  result.target_avg = target_avg;
  auto eval = [&](const SeqParams& p) {
    const SimulatedSizes s = simulate(sample, target_avg, p, options.backend);
    return TunerCandidate{p, s.mean, s.p50};
  };

  const auto max_len = std::min<std::uint32_t>(options.max_seq_length, static_cast<std::uint32_t>(lim.min_size));
  for (std::uint32_t len = options.min_seq_length; len <= max_len; ++len) {
    for (std::uint32_t skip : options.skip_sizes) {
      if (skip == 0) {
        result.candidates.push_back(eval({mode, len, options.max_skip_trigger, 0}));
        continue;
      }
      // Bracket: mean(lo) >= target >= mean(hi), then keep the closer end.
      std::uint32_t lo = 1, hi = options.max_skip_trigger;
      TunerCandidate c_lo = eval({mode, len, lo, skip});
      TunerCandidate c_hi = eval({mode, len, hi, skip});
      if (c_lo.mean <= target) {
        result.candidates.push_back(c_lo);
        continue;
      }
      if (c_hi.mean >= target) {
        result.candidates.push_back(c_hi);
        continue;
      }
      while (hi - lo > 1) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        TunerCandidate c = eval({mode, len, mid, skip});
        if (c.mean >= target) {
          lo = mid;
          c_lo = c;
        } else {
          hi = mid;
          c_hi = c;
        }
      }
      result.candidates.push_back(std::abs(c_lo.mean - target) <= std::abs(c_hi.mean - target) ? c_lo : c_hi);
    }
  }
  if (result.candidates.empty()) throw std::runtime_error("tuner grid is empty");

  std::stable_sort(result.candidates.begin(), result.candidates.end(), [&](const auto& a, const auto& b) {
    return std::abs(a.mean - target) < std::abs(b.mean - target);
  });
  const TunerCandidate& best = result.candidates.front();
  if (std::abs(best.mean - target) > options.tolerance * target) {
    std::ostringstream msg;
    msg << "no candidate within " << options.tolerance * 100 << "% of " << target_avg << "; nearest:";
    for (std::size_t i = 0; i < std::min<std::size_t>(3, result.candidates.size()); ++i) {
      const auto& c = result.candidates[i];
      msg << " (L=" << c.params.seq_length << " T=" << c.params.skip_trigger << " S=" << c.params.skip_size
          << " mean=" << c.mean << ")";
    }
    throw std::runtime_error(msg.str());
  }
  result.chosen = best.params;
  result.chosen_mean = best.mean;
  return result;
}

}  // namespace cdc
