#pragma once
// Shared vocabulary for every chunker: configuration, boundary events,
// chunk records, min/max enforcement and the dispatching chunk_stream entry.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdc {

using ByteSpan = std::span<const std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr std::size_t KiB = 1024;
inline constexpr std::size_t MiB = 1024 * KiB;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { Fixed, Rabin, Gear, FastCDC, AE, RAM, Seq };

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);

enum class SeqMode { Increasing, Decreasing };

std::string_view to_string(SeqMode mode);
SeqMode parse_mode(std::string_view name);

struct SeqParams {
  SeqMode mode = SeqMode::Increasing;
  std::uint32_t seq_length = 5;
  std::uint32_t skip_trigger = 50;
  // 0 disables content-defined skipping.
  std::uint32_t skip_size = 256;

  bool skipping() const { return skip_size > 0; }
  bool operator==(const SeqParams&) const = default;
};

// Rabin / Gear / FastCDC. A cut point is where the masked hash is zero.
struct HashChunkerParams {
  std::uint32_t window_size = 48;  // Rabin only
  std::uint32_t mask_bits = 12;    // Rabin and Gear
  std::uint32_t strict_bits = 14;  // FastCDC, before the normal point
  std::uint32_t relaxed_bits = 10; // FastCDC, after the normal point

  bool operator==(const HashChunkerParams&) const = default;
};

// AE / RAM.
struct ExtremumParams {
  std::uint32_t window_size = 1;
  bool operator==(const ExtremumParams&) const = default;
};

struct ChunkerConfig {
  Algorithm algorithm = Algorithm::Seq;
  std::size_t target_avg = 8 * KiB;
  std::size_t min_size = 4 * KiB;
  std::size_t max_size = 16 * KiB;
  SeqParams seq;
  HashChunkerParams hash;
  ExtremumParams extremum;

  bool operator==(const ChunkerConfig&) const = default;
};

struct SizeLimits {
  std::size_t min_size;
  std::size_t max_size;
};

// min = avg/2 and max = 2*avg, except min = 1 KiB for a 4 KiB average.
SizeLimits default_limits(std::size_t target_avg);

// Fully populated config with the calibrated per-algorithm defaults.
ChunkerConfig make_config(Algorithm algo, std::size_t target_avg);

// Throws ConfigError describing the first violated constraint.
void validate(const ChunkerConfig& cfg);

enum class BoundaryKind { Sequence, MaxForced, EndOfStream };

std::string_view to_string(BoundaryKind kind);

// `position` is the exclusive end of the chunk the event closes.
struct BoundaryEvent {
  BoundaryKind kind;
  std::size_t position;

  bool operator==(const BoundaryEvent&) const = default;
};

struct ChunkRecord {
  std::size_t offset;
  std::size_t length;
  Digest fingerprint;
};

// Non-content boundary at `position`: EndOfStream when it is the end of the
// data, MaxForced otherwise.
inline BoundaryEvent forced_event(std::size_t position, std::size_t data_len) {
  return {position == data_len ? BoundaryKind::EndOfStream : BoundaryKind::MaxForced, position};
}

// Turns an ascending list of raw candidate cut points into a boundary list
// obeying [min_size, max_size]. Candidates closer than min_size to the previous
// boundary are dropped; gaps longer than max_size get MaxForced events.
std::vector<BoundaryEvent> enforce_limits(std::span<const std::size_t> candidates,
                                          std::size_t length, std::size_t min_size,
                                          std::size_t max_size);

// Which SeqCDC engine to use. Other algorithms ignore it.
enum class Backend { Auto, Scalar, W16, W32, W64 };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view name);

// Deterministic pure function of (data, cfg); identical for every backend.
// Empty input yields no events.
std::vector<BoundaryEvent> chunk_stream(ByteSpan data, const ChunkerConfig& cfg,
                                        Backend backend = Backend::Auto);

struct AuditResult {
  bool partition_ok = true;
  std::size_t chunks = 0;
  std::size_t bounds_violations = 0;
  std::size_t witness_checked = 0;
  std::size_t witness_violations = 0;

  bool ok() const { return partition_ok && bounds_violations == 0 && witness_violations == 0; }
};

// Checks the partition and size-bound invariants, and for Seq every Sequence
// boundary's monotone witness, directly against the raw bytes.
AuditResult audit_events(ByteSpan data, const ChunkerConfig& cfg,
                         std::span<const BoundaryEvent> events);

// True when data[end - len, end) is strictly monotone in the given mode.
bool is_strict_run(ByteSpan data, std::size_t end, std::size_t len, SeqMode mode);

}  // namespace cdc
