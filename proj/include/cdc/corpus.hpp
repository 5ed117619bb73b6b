#pragma once
// Reproducible synthetic corpora: a seeded random base file followed by
// versions that each apply a list of random edits to the previous one.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdc/prng.hpp"

namespace cdc {

enum class MutationOp { Insert, Delete, Replace };

std::string_view to_string(MutationOp op);
MutationOp parse_mutation_op(std::string_view name);

struct MutationSpec {
  MutationOp op = MutationOp::Replace;
  std::uint32_t count = 0;   // edits of this kind per version
  double mean_length = 1.0;  // geometric on {1, 2, ...}
  bool operator==(const MutationSpec&) const = default;
};

struct CorpusManifest {
  std::string name = "corpus";
  std::uint64_t seed = 0;
  std::uint32_t versions = 1;
  std::uint64_t base_size = 0;
  std::vector<MutationSpec> mutations;
  std::vector<std::string> paths;  // filled by gen_corpus, relative to the output dir
  bool operator==(const CorpusManifest&) const = default;
};

nlohmann::ordered_json to_json(const CorpusManifest& m);
CorpusManifest manifest_from_json(const nlohmann::json& j);
CorpusManifest load_manifest(const std::filesystem::path& path);

std::vector<std::uint8_t> random_bytes(std::uint64_t seed, std::size_t size);

// Geometric length with the given mean (>= 1), drawn with integer Bernoulli
// trials so the sequence is identical on every host.
std::uint64_t geometric_length(SplitMix64& rng, double mean);

void apply_mutations(std::vector<std::uint8_t>& data, std::span<const MutationSpec> specs, SplitMix64& rng);

// Version 0 is random; version i+1 is version i with the mutations applied,
// drawn from a generator keyed by (seed, i+1).
std::vector<std::vector<std::uint8_t>> build_versions(const CorpusManifest& m);

// Writes v000.bin ... and manifest.json into `out_dir`. On failure removes
// what it wrote and throws IoError.
CorpusManifest gen_corpus(const CorpusManifest& m, const std::filesystem::path& out_dir);

}  // namespace cdc
