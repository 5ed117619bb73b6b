#include "cdc/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "cdc/chunk_core.hpp"

namespace cdc {

namespace fs = std::filesystem;

std::string_view to_string(MutationOp op) {
  switch (op) {
    case MutationOp::Insert: return "insert";
    case MutationOp::Delete: return "delete";
    case MutationOp::Replace: return "replace";
  }
  return "unknown";
}

MutationOp parse_mutation_op(std::string_view name) {
  if (name == "insert") return MutationOp::Insert;
  if (name == "delete") return MutationOp::Delete;
  if (name == "replace") return MutationOp::Replace;
  throw ConfigError("unknown mutation op '" + std::string(name) + "'");
}

nlohmann::ordered_json to_json(const CorpusManifest& m) {
  nlohmann::ordered_json j;
  j["name"] = m.name;
  j["seed"] = m.seed;
  j["versions"] = m.versions;
  j["base_size"] = m.base_size;
  j["mutations"] = nlohmann::ordered_json::array();
  for (const auto& s : m.mutations) {
    j["mutations"].push_back({{"op", to_string(s.op)}, {"count", s.count}, {"mean_length", s.mean_length}});
  }
  j["paths"] = m.paths;
  return j;
}

CorpusManifest manifest_from_json(const nlohmann::json& j) {
  try {
    CorpusManifest m;
    m.name = j.value("name", std::string("corpus"));
    m.seed = j.at("seed").get<std::uint64_t>();
    m.versions = j.value("versions", 1u);
    m.base_size = j.at("base_size").get<std::uint64_t>();
    if (j.contains("mutations")) {
      for (const auto& s : j.at("mutations")) {
        MutationSpec spec;
        spec.op = parse_mutation_op(s.at("op").get<std::string>());
        spec.count = s.value("count", 0u);
        spec.mean_length = s.value("mean_length", 1.0);
        if (!(spec.mean_length >= 1.0)) throw ConfigError("mutation mean_length must be >= 1");
        m.mutations.push_back(spec);
      }
    }
    if (j.contains("paths")) m.paths = j.at("paths").get<std::vector<std::string>>();
    if (m.versions == 0) throw ConfigError("manifest needs at least one version");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad manifest: ") + e.what());
  }
}

CorpusManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return manifest_from_json(j);
}

std::vector<std::uint8_t> random_bytes(std::uint64_t seed, std::size_t size) {
  std::vector<std::uint8_t> out(size);
  SplitMix64 rng(seed);
  rng.fill(out);
  return out;
}

std::uint64_t geometric_length(SplitMix64& rng, double mean) {
  if (mean <= 1.0) return 1;
  // P(stop) = 1/mean as a 64-bit threshold. IEEE division is correctly
  // rounded, so the threshold is the same everywhere.
  const double scaled = 18446744073709551616.0 / mean;
  const auto threshold = static_cast<std::uint64_t>(scaled);
  std::uint64_t len = 1;
  while (rng.next() >= threshold && len < (std::uint64_t{1} << 24)) ++len;
  return len;
}

void apply_mutations(std::vector<std::uint8_t>& data, std::span<const MutationSpec> specs, SplitMix64& rng) {
  for (const MutationSpec& spec : specs) {
    for (std::uint32_t c = 0; c < spec.count; ++c) {
      const std::uint64_t len = geometric_length(rng, spec.mean_length);
      switch (spec.op) {
        case MutationOp::Insert: {
          const std::size_t at = rng.below(data.size() + 1);
          std::vector<std::uint8_t> fresh(len);
          rng.fill(fresh);
          data.insert(data.begin() + static_cast<std::ptrdiff_t>(at), fresh.begin(), fresh.end());
          break;
        }
        case MutationOp::Delete: {
          if (data.empty()) break;
          const std::size_t at = rng.below(data.size());
          const std::size_t n = std::min<std::size_t>(len, data.size() - at);
          data.erase(data.begin() + static_cast<std::ptrdiff_t>(at),
                     data.begin() + static_cast<std::ptrdiff_t>(at + n));
          break;
        }
        case MutationOp::Replace: {
          if (data.empty()) break;
          const std::size_t at = rng.below(data.size());
          const std::size_t n = std::min<std::size_t>(len, data.size() - at);
          rng.fill(std::span(data).subspan(at, n));
          break;
        }
      }
    }
  }
}

std::vector<std::vector<std::uint8_t>> build_versions(const CorpusManifest& m) {
  std::vector<std::vector<std::uint8_t>> versions;
  versions.reserve(m.versions);
  versions.push_back(random_bytes(m.seed, m.base_size));
  for (std::uint32_t v = 1; v < m.versions; ++v) {
    std::vector<std::uint8_t> next = versions.back();
    SplitMix64 rng(SplitMix64::at(m.seed, v));
    apply_mutations(next, m.mutations, rng);
    versions.push_back(std::move(next));
  }
  return versions;
}

CorpusManifest gen_corpus(const CorpusManifest& m, const fs::path& out_dir) {
  CorpusManifest out = m;
  out.paths.clear();
  std::vector<fs::path> written;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
  };
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::uint8_t> current = random_bytes(m.seed, m.base_size);
    for (std::uint32_t v = 0; v < m.versions; ++v) {
      if (v > 0) {
        SplitMix64 rng(SplitMix64::at(m.seed, v));
        apply_mutations(current, m.mutations, rng);
      }
      char name[32];
      std::snprintf(name, sizeof(name), "v%03u.bin", v);
      const fs::path file = out_dir / name;
      std::ofstream f(file, std::ios::binary | std::ios::trunc);
      if (!f) throw IoError("cannot write " + file.string());
      written.push_back(file);
      f.write(reinterpret_cast<const char*>(current.data()), static_cast<std::streamsize>(current.size()));
      f.close();
      if (!f) throw IoError("write failed for " + file.string());
      out.paths.emplace_back(name);
    }

    const fs::path manifest = out_dir / "manifest.json";
    std::ofstream f(manifest, std::ios::trunc);
    if (!f) throw IoError("cannot write " + manifest.string());
    written.push_back(manifest);
    f << to_json(out).dump(2) << '\n';
    f.close();
    if (!f) throw IoError("write failed for " + manifest.string());
  } catch (...) {
    cleanup();
    throw;
  }
  return out;
}

}  // namespace cdc
