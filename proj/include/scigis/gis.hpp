#ifndef SCIGIS_GIS_HPP
#define SCIGIS_GIS_HPP

#include <array>
#include <bitset>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "scigis/indices.hpp"

namespace scigis {

/// Lexical resources shared read-only by every scoring worker.
struct Resources {
  std::optional<WordNetDb> wordnet;
  std::optional<HypernymIndex> hypernyms;  // derived from wordnet
  std::optional<IcTable> ic;
  std::optional<WordVectors> vectors;
  std::optional<SidecarEmbeddings> sidecar;  // preferred over vectors for sentence embeddings
  std::optional<RatingLexicon> ratings;
  ConnectivePatterns connectives = ConnectivePatterns::defaults();

  /// Installs a database and precomputes its hypernym summaries.
  void set_wordnet(WordNetDb db);
};

using IndexSet = std::bitset<kIndexCount>;

IndexSet index_set(std::initializer_list<IndexId> ids);
inline bool has_index(const IndexSet& set, IndexId id) { return set.test(static_cast<std::size_t>(id)); }

struct IndexOptions {
  IndexSet enabled;
  PcrefMode pcref_mode = PcrefMode::Adjacent;
  ChunkingParams chunking;
  WrdhypNormMode wrdhyp_norm_mode = WrdhypNormMode::RootScale;
  std::size_t jobs = 1;
};

/// Which resource kinds a run has (or will have once loaded).
struct ResourceAvailability {
  bool wordnet = false;
  bool ic = false;
  bool vectors = false;
  bool sidecar = false;
  bool ratings = false;
  bool connectives = true;

  static ResourceAvailability of(const Resources& resources);
};

/// Throws ConfigError listing every enabled index whose resources are
/// missing, as "<index> requires ...".
void validate_resources(const IndexSet& enabled, const ResourceAvailability& available);
void validate_resources(const IndexSet& enabled, const Resources& resources);

/// Raw indices for one document; disabled indices stay unavailable.
RawIndices compute_indices(const Document& doc, const Resources& resources, const IndexOptions& options);

/// Raw indices for every document in input order. Resources are validated
/// before any document is scored; documents are spread over `options.jobs`
/// worker threads.
std::vector<RawIndices> compute_corpus_indices(std::span<const Document> corpus, const Resources& resources,
                                               const IndexOptions& options);

struct IndexZStats {
  double mean = 0;
  double stddev = 0;  // population
  std::size_t available_count = 0;
  bool degenerate = true;  // fewer than two values or zero spread: z = 0
};

struct ZStats {
  std::array<IndexZStats, kIndexCount> per_index{};

  const IndexZStats& operator[](IndexId id) const { return per_index[static_cast<std::size_t>(id)]; }
};

using ZRow = std::array<double, kIndexCount>;

ZStats compute_zstats(std::span<const RawIndices> matrix);

/// Normalizes with given statistics; unavailable values and degenerate
/// indices map to 0.
std::vector<ZRow> apply_zstats(std::span<const RawIndices> matrix, const ZStats& stats);

struct ZResult {
  ZStats stats;
  std::vector<ZRow> z;
};

ZResult zscore(std::span<const RawIndices> matrix);

nlohmann::json zstats_to_json(const ZStats& stats);
ZStats zstats_from_json(const nlohmann::json& j);

struct FormulaConfig {
  std::string name;
  std::vector<std::pair<IndexId, double>> terms;

  IndexSet indices() const;
};

bool is_preset_name(std::string_view name);

/// "original_gispy" or "scigispy"; anything else throws ConfigError.
FormulaConfig preset(std::string_view name);

/// {"name": string, "terms": {index_name: coefficient}}.
FormulaConfig formula_from_json(const nlohmann::json& j);

/// A preset name, or else a path to a JSON formula file.
FormulaConfig resolve_formula(const std::string& preset_or_path);

double apply_formula(const ZRow& z, const FormulaConfig& cfg);

struct GisScore {
  RawIndices raw;
  ZRow z{};
  double gis = 0;
};

std::vector<GisScore> score_documents(std::span<const RawIndices> raw, std::span<const ZRow> z,
                                      const FormulaConfig& cfg);

}  // namespace scigis

#endif  // SCIGIS_GIS_HPP
