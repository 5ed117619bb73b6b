#include <vector>

#include "cdc/baseline_constants.hpp"
#include "cdc/baselines.hpp"
#include "cdc/rabin.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdc;

namespace {

// Polynomials over GF(2) up to degree 63, for checking the modulus.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const int d = gf2::degree(p);
  std::uint64_t r = 0;
  for (int bit = 63; bit >= 0; --bit) {
    r <<= 1;
    if (r >> d & 1) r ^= p;
    if (b >> bit & 1) r ^= a;
  }
  return r;
}

std::uint64_t polygcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    while (a && gf2::degree(a) >= gf2::degree(b)) a ^= b << (gf2::degree(a) - gf2::degree(b));
    std::swap(a, b);
  }
  return a;
}

std::uint64_t full_digest(ByteSpan window, std::uint64_t p) {
  std::uint64_t v = 1;  // the leading x^(8w) term
  for (std::uint8_t b : window) v = gf2::append_byte(v, b, p);
  return v;
}

double mean_chunk(ByteSpan data, const ChunkerConfig& cfg) {
  return static_cast<double>(data.size()) / static_cast<double>(chunk_stream(data, cfg).size());
}

}  // namespace

TEST_CASE("rabin modulus is irreducible") {
  const std::uint64_t p = kRabinPolynomial;
  REQUIRE(gf2::degree(p) == 53);
  // Degree 53 is prime: irreducible iff x^(2^53) = x mod p and p has no root.
  std::uint64_t x = 2;
  for (int i = 0; i < 53; ++i) x = mulmod(x, x, p);
  CHECK(x == 2);
  CHECK(polygcd(p, 0b110) == 1);  // gcd with x^2 + x
}

TEST_CASE("rolling fingerprint matches a full recompute") {
  SplitMix64 rng(1);
  for (std::uint32_t w : {1u, 7u, 48u, 64u}) {
    std::vector<std::uint8_t> data(10000 + w);
    rng.fill(data);
    RabinWindow win(w);
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::uint64_t fp = win.roll(data[i]);
      if (i + 1 >= w) {
        REQUIRE(fp == full_digest(ByteSpan(data).subspan(i + 1 - w, w), kRabinPolynomial));
      }
    }
  }
}

TEST_CASE("rabin on zeros falls back to the max cadence") {
  const ChunkerConfig cfg = make_config(Algorithm::Rabin, 8 * KiB);
  const std::vector<std::uint8_t> data(200000, 0);
  const auto ev = chunk_stream(data, cfg);
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
    CHECK(ev[i].kind == BoundaryKind::MaxForced);
    CHECK(ev[i].position == (i + 1) * cfg.max_size);
  }
  CHECK(ev.back().kind == BoundaryKind::EndOfStream);
}

TEST_CASE("fixed examples") {
  const ChunkerConfig cfg = make_config(Algorithm::Fixed, 8 * KiB);
  std::vector<std::uint8_t> data(3 * 8192);
  auto ev = chunk_stream(data, cfg);
  REQUIRE(ev.size() == 3);
  CHECK(ev[2].position == 3 * 8192);
  data.resize(8193);
  ev = chunk_stream(data, cfg);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].position == 8192);
  CHECK(ev[1].position == 8193);
}

TEST_CASE("gear hash forgets bytes older than 64 positions") {
  SplitMix64 rng(2);
  std::vector<std::uint8_t> a(1000), b(1000);
  rng.fill(a);
  rng.fill(b);
  std::copy(a.end() - 64, a.end(), b.end() - 64);
  const auto& t = gear_table();
  std::uint64_t ha = 0, hb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ha = (ha << 1) + t[a[i]];
    hb = (hb << 1) + t[b[i]];
  }
  CHECK(ha == hb);
}

TEST_CASE("gear table is fixed by its seed") {
  SplitMix64 rng(kGearTableSeed);
  const auto& t = gear_table();
  for (std::size_t i = 0; i < t.size(); ++i) REQUIRE(t[i] == rng.next());
}

TEST_CASE("ae cuts after a maximum that holds for a full window") {
  ChunkerConfig cfg = make_config(Algorithm::AE, 8 * KiB);
  cfg.min_size = 4;
  cfg.target_avg = 8;
  cfg.max_size = 100;
  cfg.extremum.window_size = 3;
  // Maximum 9 at index 2 survives indices 3, 4, 5: cut after index 5.
  const std::vector<std::uint8_t> data = {1, 5, 9, 3, 9, 2, 7, 7, 7, 7};
  CHECK(chunk_stream(data, cfg).front() == BoundaryEvent{BoundaryKind::Sequence, 6});
}

TEST_CASE("ram cuts after the first byte above the window maximum") {
  ChunkerConfig cfg = make_config(Algorithm::RAM, 8 * KiB);
  cfg.min_size = 4;
  cfg.target_avg = 8;
  cfg.max_size = 100;
  cfg.extremum.window_size = 3;
  const std::vector<std::uint8_t> data = {4, 8, 2, 8, 1, 9, 0, 0, 0, 0};
  CHECK(chunk_stream(data, cfg).front() == BoundaryEvent{BoundaryKind::Sequence, 6});
  // A window holding 255 can never be beaten.
  const std::vector<std::uint8_t> sat = {255, 1, 2, 3, 4, 5, 6, 7};
  CHECK(chunk_stream(sat, cfg).front().kind == BoundaryKind::EndOfStream);
}

TEST_CASE("fastcdc never cuts inside the minimum") {
  const ChunkerConfig cfg = make_config(Algorithm::FastCDC, 8 * KiB);
  const auto data = random_bytes(3, 4 * MiB);
  const auto ev = chunk_stream(data, cfg);
  CHECK(audit_events(data, cfg, ev).ok());
}

TEST_CASE("random data means sit near the target") {
  const auto data = random_bytes(4, 64 * MiB);
  for (Algorithm a : {Algorithm::Rabin, Algorithm::Gear, Algorithm::FastCDC, Algorithm::AE, Algorithm::RAM}) {
    for (std::size_t avg : {4 * KiB, 8 * KiB, 16 * KiB}) {
      const double mean = mean_chunk(data, make_config(a, avg));
      INFO(to_string(a), " avg ", avg, " mean ", mean);
      CHECK(mean >= static_cast<double>(avg) / 2);
      CHECK(mean <= static_cast<double>(avg) * 2);
      // Calibration keeps every baseline well inside the loose band.
      CHECK(std::abs(mean - static_cast<double>(avg)) <= 0.15 * static_cast<double>(avg));
    }
  }
}

TEST_CASE("rabin on 64 MiB with a 13-bit mask before clamping") {
  const auto data = random_bytes(5, 64 * MiB);
  HashChunkerParams p;
  p.window_size = 48;
  p.mask_bits = 13;
  const auto c = rabin_candidates(data, p);
  const double mean = static_cast<double>(data.size()) / static_cast<double>(c.size());
  CHECK(mean >= 4096.0);
  CHECK(mean <= 16384.0);
}

TEST_CASE("constants for other sizes scale from the nearest row") {
  const BaselineConstants c = baseline_constants(32 * KiB);
  const BaselineConstants r = baseline_constants(16 * KiB);
  CHECK(c.gear_bits == r.gear_bits + 1);
  CHECK(c.fastcdc_strict_bits == r.fastcdc_strict_bits + 1);
}
