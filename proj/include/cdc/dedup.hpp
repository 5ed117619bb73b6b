#pragma once
// Fingerprinting, duplicate detection, space savings, chunk-size statistics
// and chunking throughput.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "cdc/chunk_core.hpp"

namespace cdc {

// SHA-256.
Digest fingerprint(ByteSpan bytes);
std::string to_hex(const Digest& d);

std::vector<ChunkRecord> to_records(ByteSpan data, std::span<const BoundaryEvent> events);

struct DigestHash {
  std::size_t operator()(const Digest& d) const noexcept {
    std::size_t h;
    static_assert(sizeof(h) <= sizeof(Digest));
    __builtin_memcpy(&h, d.data(), sizeof(h));
    return h;
  }
};

// Set of seen digests. Digests loaded from disk count as previously observed:
// inserting one again is a duplicate and never bumps the unique counters.
class FingerprintIndex {
 public:
  static constexpr std::uint8_t kFileVersion = 1;

  // Returns true when the digest was new.
  bool insert(const Digest& d, std::size_t length);
  bool contains(const Digest& d) const { return seen_.contains(d); }

  // Folds another index's observations into this one as if its inserts had
  // happened here after ours.
  void merge(const FingerprintIndex& other);

  std::size_t total_chunks() const { return total_chunks_; }
  std::size_t unique_chunks() const { return unique_chunks_; }
  std::uint64_t total_bytes() const { return total_bytes_; }
  std::uint64_t unique_bytes() const { return unique_bytes_; }
  std::size_t size() const { return seen_.size(); }

  // "SQFP", version byte, little-endian u64 count, sorted raw digests.
  void save(const std::filesystem::path& path) const;
  static FingerprintIndex load(const std::filesystem::path& path);

 private:
  struct Entry {
    Digest digest;
    std::size_t length;
  };
  std::unordered_set<Digest, DigestHash> seen_;
  std::vector<Entry> order_;  // inserts in arrival order, for merge
  std::size_t total_chunks_ = 0;
  std::size_t unique_chunks_ = 0;
  std::uint64_t total_bytes_ = 0;
  std::uint64_t unique_bytes_ = 0;
};

// (total - unique) / total. Throws std::invalid_argument for total == 0 or
// unique > total.
double space_savings(std::uint64_t total_bytes, std::uint64_t unique_bytes);

struct Quantiles {
  std::size_t p1 = 0, p25 = 0, p50 = 0, p75 = 0, p99 = 0;
};

struct HistogramBucket {
  std::size_t lo;  // inclusive
  std::size_t hi;  // exclusive
  std::uint64_t count;
};

struct SizeHistogram {
  std::vector<HistogramBucket> buckets;
  Quantiles quantiles;  // nearest-rank
  double mean = 0.0;
  std::size_t count = 0;

  // `bucket_width` > 0; buckets cover [0, max length] without gaps.
  static SizeHistogram build(std::vector<std::size_t> lengths, std::size_t bucket_width);
};

struct FileError {
  std::string path;
  std::string message;
};

struct DedupReport {
  std::size_t files = 0;
  std::uint64_t total_bytes = 0;
  std::size_t chunk_count = 0;
  std::size_t unique_chunks = 0;
  std::uint64_t unique_bytes = 0;
  double space_savings = 0.0;
  // Fingerprint bytes the unique chunks would occupy in an index.
  std::uint64_t metadata_bytes = 0;
  SizeHistogram histogram;
  AuditResult audit;  // summed over files
  std::vector<FileError> errors;
};

// Regular files under `root` (or `root` itself), sorted by path. A file named
// manifest.json is corpus metadata and is skipped.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& root);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

// Chunks, fingerprints and indexes each file in sorted order.
DedupReport dedup_run(const std::filesystem::path& corpus, const ChunkerConfig& cfg,
                      Backend backend = Backend::Auto);

// Same pipeline over in-memory buffers.
DedupReport dedup_buffers(std::span<const std::vector<std::uint8_t>> files, const ChunkerConfig& cfg,
                          Backend backend = Backend::Auto);

struct ThroughputStats {
  std::vector<double> runs;  // GB/s, 1 GB = 1e9 bytes
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation

  static ThroughputStats from_runs(std::vector<double> runs);
};

// Boundary production only, over resident buffers. One warm-up pass is
// discarded before `runs` timed passes.
ThroughputStats measure_throughput(std::span<const std::vector<std::uint8_t>> buffers, const ChunkerConfig& cfg,
                                   int runs = 5, Backend backend = Backend::Auto);
ThroughputStats measure_throughput(ByteSpan data, const ChunkerConfig& cfg, int runs = 5,
                                   Backend backend = Backend::Auto);

}  // namespace cdc
