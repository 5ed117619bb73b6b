#include "cdc/rabin.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdc {

namespace gf2 {

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

std::uint64_t append_byte(std::uint64_t value, std::uint8_t byte, std::uint64_t p) {
  const int d = degree(p);
  unsigned __int128 v = (static_cast<unsigned __int128>(value) << 8) | byte;
  for (int bit = 71; bit >= d; --bit) {
    if ((v >> bit) & 1) v ^= static_cast<unsigned __int128>(p) << (bit - d);
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace gf2

RabinWindow::RabinWindow(std::uint32_t window_size, std::uint64_t polynomial)
    : ring_(window_size, 0), degree_(gf2::degree(polynomial)) {
  if (window_size == 0) throw std::invalid_argument("RabinWindow: empty window");
  if (degree_ < 9 || degree_ > 56) throw std::invalid_argument("RabinWindow: polynomial degree must be 9..56");
  low_mask_ = (std::uint64_t{1} << degree_) - 1;

  // x^(8(w-1)), then the contribution of each byte leaving the window.
  std::uint64_t shift = 1;
  for (std::uint32_t i = 1; i < window_size; ++i) shift = gf2::append_byte(shift, 0, polynomial);
  for (unsigned b = 0; b < 256; ++b) {
    // b * x^(8(w-1)) mod P, shift-and-add over the bits of b.
    std::uint64_t acc = 0;
    std::uint64_t term = shift;
    for (int bit = 0; bit < 8; ++bit) {
      if ((b >> bit) & 1) acc ^= term;
      term <<= 1;
      if (term >> degree_) term ^= polynomial;
    }
    out_table_[b] = acc;

    // b * x^degree mod P: folds the byte a left shift pushes past the degree.
    std::uint64_t hi = static_cast<std::uint64_t>(b) << degree_;
    for (int bit = degree_ + 7; bit >= degree_; --bit) {
      if ((hi >> bit) & 1) hi ^= polynomial << (bit - degree_);
    }
    mod_table_[b] = hi;
  }
  leading_term_ = gf2::append_byte(shift, 0, polynomial);
  reset();
}

void RabinWindow::reset() {
  std::fill(ring_.begin(), ring_.end(), 0);
  head_ = 0;
  value_ = 0;
}

}  // namespace cdc
