#include <bit>
#include <vector>

#include "cdc/seqcdc_accel.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdc;

namespace {

constexpr LaneWidth kWidths[] = {LaneWidth::W16, LaneWidth::W32, LaneWidth::W64};

struct Expected {
  BlockEvent event;
  std::size_t position;
  std::uint32_t run_after;
  std::uint32_t opposing_after;
};

// Steps the scalar rules pair by pair from `pos`. A block owns the pairs whose
// first byte lies inside it, including a run that starts there and finishes
// past its end.
Expected step_block(const std::vector<std::uint8_t>& d, std::size_t pos, unsigned w, const SeqParams& p,
                    std::uint32_t run, std::uint32_t opp) {
  const bool dec = p.mode == SeqMode::Decreasing;
  auto order = [&](std::size_t i) {
    const int diff = int{d[i + 1]} - int{d[i]};
    return dec ? -diff : diff;
  };
  std::size_t i = pos;
  for (; i < pos + w; ++i) {
    const int o = order(i);
    if (o > 0) {
      if (++run == p.seq_length) return {BlockEvent::Boundary, i + 2, run, opp};
      continue;
    }
    run = 1;
    if (p.skipping() && o < 0 && ++opp == p.skip_trigger) return {BlockEvent::Skip, i + 1 + p.skip_size, 1, 0};
  }
  const std::uint32_t run_at_end = run;
  for (std::size_t k = i; run >= 2 && k + 1 < d.size(); ++k) {
    if (order(k) <= 0) break;
    if (++run == p.seq_length) return {BlockEvent::Boundary, k + 2, run, opp};
  }
  return {BlockEvent::None, pos + w, run_at_end, p.skipping() ? opp : 0};
}

std::vector<std::uint8_t> straddle_fixture(std::size_t n, std::uint32_t len, unsigned w, std::size_t offset) {
  // Plateau with strictly increasing runs of `len` bytes. With min_size = len
  // each chunk is scanned from its first byte, so block edges sit at
  // base + k*w and every run starts `offset` bytes before the third edge.
  std::vector<std::uint8_t> d(n, 200);
  const std::size_t period = 3 * w + len - offset;
  for (std::size_t start = 3 * w - offset; start + len < n; start += period) {
    for (std::uint32_t k = 0; k < len; ++k) d[start + k] = static_cast<std::uint8_t>(10 + k);
  }
  return d;
}

}  // namespace

TEST_CASE("runs spanning lanes 61 to 63 report bit 61") {
  std::vector<std::uint8_t> data(128, 0x20);
  const std::size_t pos = 16;
  data[pos + 61] = 0x12;
  data[pos + 62] = 0x13;
  data[pos + 63] = 0x14;
  const SeqParams p{SeqMode::Increasing, 3, 50, 0};
  const BlockScanResult r = scan_block(data, pos, p, ScanState{1, 0, pos}, LaneWidth::W64);
  CHECK(r.event == BlockEvent::Boundary);
  REQUIRE(r.boundary_bit.has_value());
  CHECK(*r.boundary_bit == 61);
  CHECK(r.position == pos + 64);
}

TEST_CASE("all-equal block has no events") {
  const std::vector<std::uint8_t> data(200, 9);
  for (LaneWidth w : kWidths) {
    const BlockScanResult r = scan_block(data, 0, SeqParams{SeqMode::Increasing, 5, 3, 16}, ScanState{}, w);
    CHECK(r.event == BlockEvent::None);
    CHECK_FALSE(r.boundary_bit.has_value());
    CHECK(r.opposing_mask == 0);
    CHECK(r.consumed == lanes(w));
    CHECK(r.run_len_after == 1);
  }
}

TEST_CASE("scan_block needs the full window") {
  const std::vector<std::uint8_t> data(64 + 3, 1);
  const SeqParams p{SeqMode::Increasing, 5, 3, 16};
  CHECK_THROWS_AS(scan_block(data, 0, p, ScanState{}, LaneWidth::W64), std::out_of_range);
  CHECK_NOTHROW(scan_block(data, 0, SeqParams{SeqMode::Increasing, 4, 3, 16}, ScanState{}, LaneWidth::W64));
}

TEST_CASE("scan_block agrees with a scalar stepper") {
  SplitMix64 rng(31);
  for (int t = 0; t < 200000; ++t) {
    const LaneWidth w = kWidths[rng.below(3)];
    const unsigned width = lanes(w);
    SeqParams p;
    p.mode = rng.below(2) ? SeqMode::Increasing : SeqMode::Decreasing;
    p.seq_length = 2 + static_cast<std::uint32_t>(rng.below(7));
    p.skip_trigger = 1 + static_cast<std::uint32_t>(rng.below(40));
    p.skip_size = rng.below(4) == 0 ? 0 : static_cast<std::uint32_t>(rng.below(100));
    const auto d = testutil::random_data(rng, width + p.seq_length - 1 + rng.below(8));
    const std::size_t pos = rng.below(d.size() - (width + p.seq_length - 1) + 1);
    ScanState st;
    st.run_len = 1 + static_cast<std::uint32_t>(rng.below(p.seq_length - 1));
    st.opposing_count = p.skipping() ? static_cast<std::uint32_t>(rng.below(p.skip_trigger)) : 0;
    st.cursor = pos;
    // A carried run must be consistent with the bytes before the block.
    if (pos < st.run_len - 1) st.run_len = 1;
    for (std::uint32_t k = 0; k + 1 < st.run_len; ++k) {
      const std::size_t a = pos - st.run_len + 1 + k;
      const bool ok = p.mode == SeqMode::Increasing ? d[a] < d[a + 1] : d[a] > d[a + 1];
      if (!ok) {
        st.run_len = 1;
        break;
      }
    }
    const Expected want = step_block(d, pos, width, p, st.run_len, st.opposing_count);
    const BlockScanResult got = scan_block(d, pos, p, st, w);
    INFO("t=", t, " w=", width, " L=", p.seq_length, " T=", p.skip_trigger, " S=", p.skip_size);
    REQUIRE(got.event == want.event);
    REQUIRE(got.position == want.position);
    if (want.event == BlockEvent::None) {
      REQUIRE(got.run_len_after == want.run_after);
      REQUIRE(got.opposing_total_after == want.opposing_after);
      REQUIRE(got.consumed == width);
    }
    REQUIRE(got.consumed <= width);
  }
}

TEST_CASE("opposing popcounts add up to the scalar counter") {
  SplitMix64 rng(32);
  for (int t = 0; t < 2000; ++t) {
    const LaneWidth w = kWidths[rng.below(3)];
    const unsigned width = lanes(w);
    const SeqParams p{SeqMode::Increasing, 8, 100000, 1};
    std::vector<std::uint8_t> d(width * 20 + 8);
    rng.fill(d);
    // Long runs are vanishingly rare in uniform bytes at length 8; check and
    // skip the trial if one shows up.
    ScanState st{1, 0, 0};
    std::uint32_t total = 0;
    bool clean = true;
    for (std::size_t pos = 0; pos + width + 7 <= d.size(); pos += width) {
      const BlockScanResult r = scan_block(d, pos, p, st, w);
      if (r.event != BlockEvent::None) {
        clean = false;
        break;
      }
      total += static_cast<std::uint32_t>(std::popcount(r.opposing_mask));
      st = {r.run_len_after, r.opposing_total_after, pos + width};
      REQUIRE(r.opposing_total_after == total);
    }
    if (!clean) continue;
    ScanState scalar{1, 0, 0};
    detail::seq_scan(d.data(), st.cursor + 1, p, scalar);
    CHECK(scalar.opposing_count == total);
  }
}

TEST_CASE("accel matches the oracle on random cases at every width") {
  SplitMix64 rng(33);
  for (int t = 0; t < 3000; ++t) {
    const ChunkerConfig cfg = testutil::random_seq_config(rng);
    const auto data = testutil::random_data(rng, 1 + rng.below(12 * KiB));
    const auto want = seq_reference(data, cfg);
    for (LaneWidth w : kWidths) {
      INFO("t=", t, " w=", lanes(w));
      REQUIRE(accel_chunk(data, cfg, w) == want);
      REQUIRE(accel_chunk_portable(data, cfg, w) == want);
    }
  }
}

TEST_CASE("runs straddling block edges are found") {
  for (std::uint32_t len : {2u, 3u, 5u, 7u, 8u}) {
    for (LaneWidth w : kWidths) {
      const unsigned width = lanes(w);
      for (std::size_t offset = 1; offset < len; ++offset) {
        ChunkerConfig cfg;
        cfg.algorithm = Algorithm::Seq;
        cfg.seq = {SeqMode::Increasing, len, 1000, 0};
        cfg.min_size = len;
        cfg.target_avg = 512;
        cfg.max_size = 4096;
        const auto data = straddle_fixture(64 * KiB, len, width, offset);
        const auto want = seq_reference(data, cfg);
        REQUIRE(want.size() > 10);
        INFO("len=", len, " w=", width, " offset=", offset);
        REQUIRE(accel_chunk(data, cfg, w) == want);
        REQUIRE(accel_chunk_portable(data, cfg, w) == want);
      }
    }
  }
}

TEST_CASE("skips that trigger mid-block and land in later blocks") {
  SplitMix64 rng(34);
  for (std::uint32_t skip : {1u, 15u, 16u, 17u, 31u, 63u, 64u, 65u, 129u}) {
    for (std::uint32_t trigger : {1u, 2u, 7u, 33u}) {
      ChunkerConfig cfg;
      cfg.algorithm = Algorithm::Seq;
      cfg.seq = {SeqMode::Increasing, 4, trigger, skip};
      cfg.min_size = 64;
      cfg.target_avg = 256;
      cfg.max_size = 2048;
      std::vector<std::uint8_t> data(256 * KiB);
      rng.fill(data);
      const auto want = seq_reference(data, cfg);
      for (LaneWidth w : kWidths) {
        INFO("skip=", skip, " trigger=", trigger, " w=", lanes(w));
        REQUIRE(accel_chunk(data, cfg, w) == want);
      }
    }
  }
}

TEST_CASE("table params at every width on 4 MiB") {
  const auto data = random_bytes(35, 4 * MiB);
  for (std::size_t avg : {4 * KiB, 8 * KiB, 16 * KiB}) {
    const ChunkerConfig cfg = make_config(Algorithm::Seq, avg);
    const auto want = seq_chunk(data, cfg);
    for (LaneWidth w : kWidths) CHECK(accel_chunk(data, cfg, w) == want);
  }
}

TEST_CASE("backend resolution falls back to what the host has") {
  CHECK(resolve_backend(Backend::Scalar) == Backend::Scalar);
  const auto widest = widest_supported_width();
  const Backend a = resolve_backend(Backend::Auto);
  if (!widest) {
    CHECK(a == Backend::Scalar);
  } else {
    CHECK(a != Backend::Scalar);
  }
  for (Backend b : {Backend::W16, Backend::W32, Backend::W64}) {
    const Backend r = resolve_backend(b);
    if (r != b) CHECK(r == a);
  }
  MESSAGE("auto backend on this host: " << to_string(a));
}
