#include <algorithm>
#include <vector>

#include "cdc/seqcdc.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdc;

namespace {

ChunkerConfig small_config(std::uint32_t len, std::size_t min, std::size_t max, std::uint32_t trigger,
                           std::uint32_t skip, SeqMode mode = SeqMode::Increasing) {
  ChunkerConfig cfg;
  cfg.algorithm = Algorithm::Seq;
  cfg.min_size = min;
  cfg.target_avg = min;
  cfg.max_size = max;
  cfg.seq = {mode, len, trigger, skip};
  return cfg;
}

std::vector<std::uint8_t> complement(std::vector<std::uint8_t> d) {
  for (auto& b : d) b = static_cast<std::uint8_t>(255 - b);
  return d;
}

}  // namespace

TEST_CASE("table rows") {
  CHECK(table_params(4 * KiB) == SeqParams{SeqMode::Increasing, 5, 55, 256});
  CHECK(table_params(8 * KiB) == SeqParams{SeqMode::Increasing, 5, 50, 256});
  CHECK(table_params(16 * KiB) == SeqParams{SeqMode::Increasing, 5, 50, 512});
}

TEST_CASE("increasing run ends the chunk one past its last byte") {
  const std::vector<std::uint8_t> data = {9, 5, 1, 2, 3, 8, 0};
  const SeqParams p{SeqMode::Increasing, 3, 1, 0};
  const BoundaryEvent ev = seq_find_boundary(data, 0, p, 3, 100);
  CHECK(ev == BoundaryEvent{BoundaryKind::Sequence, 5});
  const auto cfg = small_config(3, 3, 100, 1, 0);
  CHECK(seq_chunk(data, cfg).front() == ev);
  CHECK(seq_reference(data, cfg).front() == ev);
}

TEST_CASE("sub-minimum region is never examined") {
  // The only run lies entirely before min_size - seq_length.
  std::vector<std::uint8_t> data(64, 0);
  data[0] = 1, data[1] = 2, data[2] = 3;
  const SeqParams p{SeqMode::Increasing, 3, 1, 0};
  CHECK(seq_find_boundary(data, 0, p, 8, 64) == BoundaryEvent{BoundaryKind::EndOfStream, 64});
  // A run ending exactly at min_size is found.
  data[5] = 1, data[6] = 2, data[7] = 3;
  CHECK(seq_find_boundary(data, 0, p, 8, 64) == BoundaryEvent{BoundaryKind::Sequence, 8});
  // One byte earlier it straddles the region edge and does not count.
  std::vector<std::uint8_t> early(64, 0);
  early[4] = 1, early[5] = 2, early[6] = 3;
  CHECK(seq_find_boundary(early, 0, p, 8, 64).kind == BoundaryKind::EndOfStream);
}

TEST_CASE("equal neighbours neither extend nor oppose") {
  const std::vector<std::uint8_t> data = {1, 2, 2, 3, 4, 4, 4, 4, 5, 6, 7};
  // A trigger of 1 would fire on any opposing pair; none exist.
  const SeqParams p{SeqMode::Increasing, 4, 1, 100};
  CHECK(seq_find_boundary(data, 0, p, 4, 100) == BoundaryEvent{BoundaryKind::Sequence, 11});
}

TEST_CASE("skip lands skip_size past the second byte of the triggering pair") {
  // Decreasing ramp: every pair opposes in Increasing mode.
  std::vector<std::uint8_t> data(64);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::uint8_t>(200 - i);
  // Pairs (0,1) and (1,2) oppose; the second fires with its second byte at 2,
  // so scanning resumes at 6. Put a run at 6..8 and a decoy at 4..6.
  std::vector<std::uint8_t> d = data;
  d[6] = 10, d[7] = 11, d[8] = 12;
  const SeqParams p{SeqMode::Increasing, 3, 2, 4};
  CHECK(seq_find_boundary(d, 0, p, 3, 64) == BoundaryEvent{BoundaryKind::Sequence, 9});
  std::vector<std::uint8_t> decoy = data;
  decoy[3] = 10, decoy[4] = 11, decoy[5] = 12;
  const auto ev = seq_find_boundary(decoy, 0, p, 3, 64);
  CHECK(ev.kind != BoundaryKind::Sequence);
  // Same with the naive oracle.
  const auto cfg = small_config(3, 3, 64, 2, 4);
  CHECK(seq_reference(d, cfg).front() == BoundaryEvent{BoundaryKind::Sequence, 9});
  CHECK(seq_reference(decoy, cfg).front().kind != BoundaryKind::Sequence);
}

TEST_CASE("strictly decreasing data is cut at max in increasing mode") {
  std::vector<std::uint8_t> data(5000);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::uint8_t>(255 - i % 256);
  // Wraparound at 256 creates an increasing pair; keep runs of 2 impossible
  // by requiring 3.
  for (const auto& p : {SeqParams{SeqMode::Increasing, 3, 1, 0}, SeqParams{SeqMode::Increasing, 5, 3, 7}}) {
    CHECK(seq_find_boundary(data, 0, p, 100, 1000) == BoundaryEvent{BoundaryKind::MaxForced, 1000});
  }
}

TEST_CASE("skipped bytes count toward max") {
  std::vector<std::uint8_t> data(400);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::uint8_t>(i % 2 ? 0 : 9);
  // Alternating: an opposing pair every 2 bytes, skip 100 each time.
  const SeqParams p{SeqMode::Increasing, 3, 1, 100};
  CHECK(seq_find_boundary(data, 0, p, 3, 250) == BoundaryEvent{BoundaryKind::MaxForced, 250});
}

TEST_CASE("optimized scan matches the naive oracle on random cases") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 3000; ++t) {
    const ChunkerConfig cfg = testutil::random_seq_config(rng);
    const auto data = testutil::random_data(rng, 1 + rng.below(16 * KiB));
    REQUIRE(seq_chunk(data, cfg) == seq_reference(data, cfg));
  }
}

TEST_CASE("every sequence boundary has a witness") {
  SplitMix64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const ChunkerConfig cfg = testutil::random_seq_config(rng);
    const auto data = testutil::random_data(rng, 1 + rng.below(32 * KiB));
    const auto ev = seq_chunk(data, cfg);
    const AuditResult a = audit_events(data, cfg, ev);
    REQUIRE(a.ok());
  }
}

TEST_CASE("mode symmetry under complement") {
  SplitMix64 rng(11);
  for (int t = 0; t < 300; ++t) {
    ChunkerConfig inc = testutil::random_seq_config(rng);
    inc.seq.mode = SeqMode::Increasing;
    ChunkerConfig dec = inc;
    dec.seq.mode = SeqMode::Decreasing;
    const auto data = testutil::random_data(rng, 1 + rng.below(16 * KiB));
    REQUIRE(seq_chunk(data, inc) == seq_chunk(complement(data), dec));
  }
}

TEST_CASE("skip disabled equals an unreachable trigger") {
  SplitMix64 rng(12);
  for (int t = 0; t < 200; ++t) {
    ChunkerConfig a = testutil::random_seq_config(rng);
    a.seq.skip_size = 0;
    ChunkerConfig b = a;
    b.seq.skip_size = 64;
    b.seq.skip_trigger = 0xffffffffu;
    const auto data = testutil::random_data(rng, 1 + rng.below(16 * KiB));
    REQUIRE(seq_chunk(data, a) == seq_chunk(data, b));
  }
}

TEST_CASE("table params on random data stay within the limits") {
  const auto data = random_bytes(77, 64 * MiB);
  const ChunkerConfig cfg = make_config(Algorithm::Seq, 8 * KiB);
  const auto ev = seq_chunk(data, cfg);
  const AuditResult a = audit_events(data, cfg, ev);
  CHECK(a.ok());
  const double mean = static_cast<double>(data.size()) / static_cast<double>(ev.size());
  CHECK(mean >= 4096.0);
  CHECK(mean <= 16384.0);
  MESSAGE("table 8 KiB params, mean chunk on random data: " << mean);
}

TEST_CASE("concatenated copies repeat the boundary pattern") {
  const ChunkerConfig cfg = make_config(Algorithm::Seq, 4 * KiB);
  auto half = random_bytes(3, 2 * MiB);
  const auto ev = seq_chunk(half, cfg);
  // Trim to the last content boundary so the copy starts on one.
  std::size_t cut = 0;
  for (const auto& e : ev) {
    if (e.kind == BoundaryKind::Sequence) cut = e.position;
  }
  REQUIRE(cut > 0);
  half.resize(cut);
  std::vector<std::uint8_t> twice = half;
  twice.insert(twice.end(), half.begin(), half.end());
  const auto one = seq_chunk(half, cfg);
  const auto two = seq_chunk(twice, cfg);
  REQUIRE(two.size() == 2 * one.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(two[i].position == one[i].position);
    CHECK(two[one.size() + i].position == one[i].position + half.size());
  }
}

TEST_CASE("a one-byte insertion leaves earlier boundaries alone") {
  const ChunkerConfig cfg = make_config(Algorithm::Seq, 8 * KiB);
  const auto base = random_bytes(8, 8 * MiB);
  const auto before = seq_chunk(base, cfg);
  SplitMix64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const std::size_t p = rng.below(base.size());
    auto edited = base;
    edited.insert(edited.begin() + static_cast<std::ptrdiff_t>(p), static_cast<std::uint8_t>(rng.next()));
    const auto after = seq_chunk(edited, cfg);
    for (std::size_t i = 0; i < before.size() && before[i].position <= p; ++i) {
      REQUIRE(after[i] == before[i]);
    }
  }
}

TEST_CASE("oracle matches on 1 MiB at 4 KiB params") {
  const auto data = random_bytes(4, 1 * MiB);
  const ChunkerConfig cfg = make_config(Algorithm::Seq, 4 * KiB);
  CHECK(seq_chunk(data, cfg) == seq_reference(data, cfg));
}

TEST_CASE("short tail after the last boundary is one end-of-stream chunk") {
  const ChunkerConfig cfg = small_config(3, 10, 50, 100, 0);
  std::vector<std::uint8_t> data(15, 0);
  data[7] = 1, data[8] = 2, data[9] = 3;  // boundary at 10
  const auto ev = seq_reference(data, cfg);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == BoundaryEvent{BoundaryKind::Sequence, 10});
  CHECK(ev[1] == BoundaryEvent{BoundaryKind::EndOfStream, 15});
  CHECK(seq_chunk(data, cfg) == ev);
}
