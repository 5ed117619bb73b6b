#include "cdc/dedup.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace cdc {

namespace fs = std::filesystem;

Digest fingerprint(ByteSpan bytes) {
  Digest d{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), d.data(), &len, EVP_sha256(), nullptr) != 1 || len != d.size()) {
    throw std::runtime_error("SHA-256 failed");
  }
  return d;
}

std::string to_hex(const Digest& d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (std::uint8_t b : d) {
    s.push_back(kHex[b >> 4]);
    s.push_back(kHex[b & 15]);
  }
  return s;
}

std::vector<ChunkRecord> to_records(ByteSpan data, std::span<const BoundaryEvent> events) {
  std::vector<ChunkRecord> out;
  out.reserve(events.size());
  std::size_t prev = 0;
  for (const BoundaryEvent& ev : events) {
    const std::size_t len = ev.position - prev;
    out.push_back({prev, len, fingerprint(data.subspan(prev, len))});
    prev = ev.position;
  }
  return out;
}

bool FingerprintIndex::insert(const Digest& d, std::size_t length) {
  ++total_chunks_;
  total_bytes_ += length;
  order_.push_back({d, length});
  if (!seen_.insert(d).second) return false;
  ++unique_chunks_;
  unique_bytes_ += length;
  return true;
}

void FingerprintIndex::merge(const FingerprintIndex& other) {
  for (const Entry& e : other.order_) insert(e.digest, e.length);
  for (const Digest& d : other.seen_) seen_.insert(d);
}

void FingerprintIndex::save(const fs::path& path) const {
  std::vector<Digest> sorted(seen_.begin(), seen_.end());
  std::sort(sorted.begin(), sorted.end());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write index " + path.string());
  out.write("SQFP", 4);
  out.put(static_cast<char>(kFileVersion));
  const std::uint64_t count = sorted.size();
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>(count >> (8 * i)));
  for (const Digest& d : sorted) out.write(reinterpret_cast<const char*>(d.data()), d.size());
  if (!out) throw IoError("short write on index " + path.string());
}

FingerprintIndex FingerprintIndex::load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read index " + path.string());
  char header[13];
  if (!in.read(header, sizeof(header))) throw IoError("truncated index header in " + path.string());
  if (std::memcmp(header, "SQFP", 4) != 0) throw IoError("bad index magic in " + path.string());
  if (static_cast<std::uint8_t>(header[4]) != kFileVersion) throw IoError("unsupported index version");
  std::uint64_t count = 0;
  for (int i = 0; i < 8; ++i) count |= std::uint64_t{static_cast<std::uint8_t>(header[5 + i])} << (8 * i);

  FingerprintIndex idx;
  Digest d;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!in.read(reinterpret_cast<char*>(d.data()), d.size())) throw IoError("truncated index " + path.string());
    idx.seen_.insert(d);
  }
  return idx;
}

double space_savings(std::uint64_t total_bytes, std::uint64_t unique_bytes) {
  if (total_bytes == 0) throw std::invalid_argument("space_savings: empty input");
  if (unique_bytes > total_bytes) throw std::invalid_argument("space_savings: unique exceeds total");
  return static_cast<double>(total_bytes - unique_bytes) / static_cast<double>(total_bytes);
}

SizeHistogram SizeHistogram::build(std::vector<std::size_t> lengths, std::size_t bucket_width) {
  if (bucket_width == 0) throw std::invalid_argument("histogram bucket width must be positive");
  SizeHistogram h;
  h.count = lengths.size();
  if (lengths.empty()) return h;
  std::sort(lengths.begin(), lengths.end());
  const double sum = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  h.mean = sum / static_cast<double>(lengths.size());

  auto rank = [&](double q) {
    const auto n = lengths.size();
    auto r = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    r = std::clamp<std::size_t>(r, 1, n);
    return lengths[r - 1];
  };
  h.quantiles = {rank(0.01), rank(0.25), rank(0.50), rank(0.75), rank(0.99)};

  const std::size_t nbuckets = lengths.back() / bucket_width + 1;
  h.buckets.reserve(nbuckets);
  for (std::size_t b = 0; b < nbuckets; ++b) h.buckets.push_back({b * bucket_width, (b + 1) * bucket_width, 0});
  for (std::size_t len : lengths) ++h.buckets[len / bucket_width].count;
  return h;
}

std::vector<fs::path> list_corpus(const fs::path& root) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_regular_file(root, ec)) {
    files.push_back(root);
    return files;
  }
  if (!fs::is_directory(root, ec)) throw IoError("corpus not found: " + root.string());
  for (auto it = fs::recursive_directory_iterator(root, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_regular_file() && it->path().filename() != "manifest.json") files.push_back(it->path());
  }
  if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  std::vector<std::uint8_t> buf(size);
  in.seekg(0);
  if (size > 0 && !in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(size))) {
    throw IoError("short read on " + path.string());
  }
  return buf;
}

namespace {

struct Accumulator {
  FingerprintIndex index;
  std::vector<std::size_t> lengths;
  AuditResult audit;
  std::size_t files = 0;

  void add(ByteSpan data, const ChunkerConfig& cfg, Backend backend) {
    ++files;
    if (data.empty()) return;
    const auto events = chunk_stream(data, cfg, backend);
    const AuditResult a = audit_events(data, cfg, events);
    audit.partition_ok = audit.partition_ok && a.partition_ok;
    audit.chunks += a.chunks;
    audit.bounds_violations += a.bounds_violations;
    audit.witness_checked += a.witness_checked;
    audit.witness_violations += a.witness_violations;
    std::size_t prev = 0;
    for (const BoundaryEvent& ev : events) {
      const std::size_t len = ev.position - prev;
      index.insert(fingerprint(data.subspan(prev, len)), len);
      lengths.push_back(len);
      prev = ev.position;
    }
  }

  DedupReport finish(const ChunkerConfig& cfg) {
    DedupReport r;
    r.files = files;
    r.total_bytes = index.total_bytes();
    r.chunk_count = index.total_chunks();
    r.unique_chunks = index.unique_chunks();
    r.unique_bytes = index.unique_bytes();
    r.space_savings = r.total_bytes ? space_savings(r.total_bytes, r.unique_bytes) : 0.0;
    r.metadata_bytes = static_cast<std::uint64_t>(r.unique_chunks) * sizeof(Digest);
    r.histogram = SizeHistogram::build(std::move(lengths), std::max<std::size_t>(1, cfg.max_size / 16));
    r.audit = audit;
    return r;
  }
};

}  // namespace

DedupReport dedup_run(const fs::path& corpus, const ChunkerConfig& cfg, Backend backend) {
  validate(cfg);
  Accumulator acc;
  std::vector<FileError> errors;
  for (const fs::path& file : list_corpus(corpus)) {
    std::vector<std::uint8_t> data;
    try {
      data = read_file(file);
    } catch (const IoError& e) {
      errors.push_back({file.string(), e.what()});
      continue;
    }
    acc.add(data, cfg, backend);
  }
  DedupReport r = acc.finish(cfg);
  r.errors = std::move(errors);
  return r;
}

DedupReport dedup_buffers(std::span<const std::vector<std::uint8_t>> files, const ChunkerConfig& cfg,
                          Backend backend) {
  validate(cfg);
  Accumulator acc;
  for (const auto& f : files) acc.add(f, cfg, backend);
  return acc.finish(cfg);
}

ThroughputStats ThroughputStats::from_runs(std::vector<double> runs) {
  ThroughputStats s;
  s.runs = std::move(runs);
  if (s.runs.empty()) return s;
  const double n = static_cast<double>(s.runs.size());
  s.mean = std::accumulate(s.runs.begin(), s.runs.end(), 0.0) / n;
  if (s.runs.size() > 1) {
    double ss = 0.0;
    for (double v : s.runs) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

namespace {

ThroughputStats time_passes(std::span<const ByteSpan> buffers, const ChunkerConfig& cfg, int runs,
                            Backend backend) {
  validate(cfg);
  std::uint64_t bytes = 0;
  for (const auto& b : buffers) bytes += b.size();

  std::size_t sink = 0;
  auto pass = [&] {
    for (const auto& b : buffers) {
      if (!b.empty()) sink += chunk_stream(b, cfg, backend).size();
    }
  };
  pass();

  std::vector<double> gbps;
  for (int r = 0; r < runs; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    pass();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    gbps.push_back(dt.count() > 0 ? static_cast<double>(bytes) / 1e9 / dt.count() : 0.0);
  }
  asm volatile("" : : "r"(sink) : "memory");
  return ThroughputStats::from_runs(std::move(gbps));
}

}  // namespace

ThroughputStats measure_throughput(std::span<const std::vector<std::uint8_t>> buffers, const ChunkerConfig& cfg,
                                   int runs, Backend backend) {
  std::vector<ByteSpan> views(buffers.begin(), buffers.end());
  return time_passes(views, cfg, runs, backend);
}

ThroughputStats measure_throughput(ByteSpan data, const ChunkerConfig& cfg, int runs, Backend backend) {
  const ByteSpan one[] = {data};
  return time_passes(one, cfg, runs, backend);
}

}  // namespace cdc
