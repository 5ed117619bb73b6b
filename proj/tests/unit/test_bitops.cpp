#include <stdexcept>

#include "cdc/bitops.hpp"
#include "cdc/prng.hpp"
#include "doctest.h"

using namespace cdc;

namespace {

std::optional<unsigned> walk_first(std::uint64_t m) {
  for (unsigned b = 0; b < 64; ++b) {
    if (m >> b & 1) return b;
  }
  return std::nullopt;
}

unsigned walk_select(std::uint64_t m, unsigned k) {
  for (unsigned b = 0; b < 64; ++b) {
    if ((m >> b & 1) && --k == 0) return b;
  }
  return 64;
}

unsigned walk_popcount(std::uint64_t m) {
  unsigned c = 0;
  for (; m; m >>= 1) c += m & 1;
  return c;
}

}  // namespace

TEST_CASE("select_kth examples") {
  CHECK(bits::select_kth_set_bit(0b1011, 2) == 1);
  CHECK(bits::select_kth_set_bit(0b1011, 3) == 3);
  CHECK(bits::select_kth_set_bit(0b1011, 1) == 0);
  CHECK(bits::select_kth_set_bit(~std::uint64_t{0}, 64) == 63);
  CHECK(bits::select_kth_set_bit(std::uint64_t{1} << 63, 1) == 63);
}

TEST_CASE("select_kth rejects ranks out of range") {
  CHECK_THROWS_AS(bits::select_kth_set_bit(0b1011, 0), std::out_of_range);
  CHECK_THROWS_AS(bits::select_kth_set_bit(0b1011, 4), std::out_of_range);
  CHECK_THROWS_AS(bits::select_kth_set_bit(0, 1), std::out_of_range);
  CHECK_THROWS_AS(bits::select_kth_set_bit_portable(0b1, 2), std::out_of_range);
}

TEST_CASE("first_set_bit examples") {
  CHECK_FALSE(bits::first_set_bit(0).has_value());
  CHECK(bits::first_set_bit(0b100) == 2u);
  CHECK(bits::first_set_bit(std::uint64_t{1} << 63) == 63u);
}

TEST_CASE("popcount of zero") { CHECK(bits::popcount(0) == 0); }

TEST_CASE("exhaustive 16-bit masks against bit walk") {
  for (std::uint64_t m = 0; m < (1u << 16); ++m) {
    REQUIRE(bits::first_set_bit(m) == walk_first(m));
    const unsigned pc = walk_popcount(m);
    REQUIRE(bits::popcount(m) == pc);
    for (unsigned k = 1; k <= pc; ++k) {
      const unsigned want = walk_select(m, k);
      REQUIRE(bits::select_kth_set_bit(m, k) == want);
      REQUIRE(bits::select_kth_set_bit_portable(m, k) == want);
      if (bits::host_has_bmi2()) REQUIRE(bits::select_kth_set_bit_pdep(m, k) == want);
    }
  }
}

TEST_CASE("random 64-bit masks against bit walk") {
  SplitMix64 rng(42);
  for (int i = 0; i < 100000; ++i) {
    // Vary density so sparse and dense masks both show up.
    std::uint64_t m = rng.next();
    if (i % 3 == 1) m &= rng.next() & rng.next();
    if (i % 3 == 2) m |= rng.next() | rng.next();
    REQUIRE(bits::first_set_bit(m) == walk_first(m));
    const unsigned pc = walk_popcount(m);
    REQUIRE(bits::popcount(m) == pc);
    if (pc == 0) continue;
    const unsigned k = 1 + static_cast<unsigned>(rng.below(pc));
    REQUIRE(bits::select_kth_set_bit(m, k) == walk_select(m, k));
    REQUIRE(bits::select_kth_set_bit_portable(m, k) == walk_select(m, k));
  }
}
