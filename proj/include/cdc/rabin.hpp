#pragma once
// Rabin fingerprints over GF(2)[x] modulo an irreducible polynomial.

#include <array>
#include <cstdint>
#include <vector>

namespace cdc {

// Degree-53 irreducible polynomial.
inline constexpr std::uint64_t kRabinPolynomial = 0x3DA3358B4DC173ull;

namespace gf2 {

int degree(std::uint64_t p);

// (value * x^8 + byte) mod p, bit by bit.
std::uint64_t append_byte(std::uint64_t value, std::uint8_t byte, std::uint64_t p);

}  // namespace gf2

// Sliding-window fingerprint. The digest of window bytes b_0..b_{w-1} is
//   (x^(8w) + sum b_i x^(8(w-1-i))) mod P
// i.e. the fingerprint of the window prefixed with a 0x01 byte, so runs of
// zero bytes do not collapse to a zero digest. Starts as a window of zeros.
class RabinWindow {
 public:
  explicit RabinWindow(std::uint32_t window_size, std::uint64_t polynomial = kRabinPolynomial);

  void reset();

  // Pushes `in`, drops the oldest byte, returns the new digest.
  std::uint64_t roll(std::uint8_t in) {
    const std::uint8_t out = ring_[head_];
    ring_[head_] = in;
    if (++head_ == ring_.size()) head_ = 0;
    std::uint64_t v = value_ ^ out_table_[out];
    v = (v << 8) | in;
    value_ = (v & low_mask_) ^ mod_table_[v >> degree_];
    return value_ ^ leading_term_;
  }

  std::uint64_t digest() const { return value_ ^ leading_term_; }
  std::uint32_t window_size() const { return static_cast<std::uint32_t>(ring_.size()); }

 private:
  std::vector<std::uint8_t> ring_;
  std::size_t head_ = 0;
  std::uint64_t value_ = 0;
  std::uint64_t leading_term_ = 0;
  std::uint64_t low_mask_ = 0;
  int degree_ = 0;
  std::array<std::uint64_t, 256> out_table_{};
  std::array<std::uint64_t, 256> mod_table_{};
};

}  // namespace cdc
