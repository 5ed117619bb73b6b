#pragma once
// SplitMix64: a counter-based 64-bit generator. Output i is a fixed mixing
// function of seed + (i+1)*gamma, so streams are reproducible bit-for-bit on
// every platform. Bytes are taken little-endian from each word.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace cdc {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Random access: the value next() returns on its (counter+1)-th call.
  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
    return mix(seed + (counter + 1) * kGamma);
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }
  constexpr std::uint64_t operator()() { return next(); }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

  // Uniform in [0, bound), bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  void fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    for (; i + 8 <= out.size(); i += 8) {
      std::uint64_t v = next();
      for (int b = 0; b < 8; ++b) out[i + b] = static_cast<std::uint8_t>(v >> (8 * b));
    }
    if (i < out.size()) {
      std::uint64_t v = next();
      for (; i < out.size(); ++i, v >>= 8) out[i] = static_cast<std::uint8_t>(v);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace cdc
