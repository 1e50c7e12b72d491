#ifndef SCIGIS_INDICES_HPP
#define SCIGIS_INDICES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "scigis/corpus.hpp"
#include "scigis/information_content.hpp"
#include "scigis/support.hpp"
#include "scigis/vectors.hpp"
#include "scigis/wordnet.hpp"

namespace scigis {

enum class IndexId : std::size_t {
  Pcref,
  PcrefChunk,
  Pcdc,
  SmcausE,
  SmcausWn,
  WrdhypMean,
  WrdhypNorm,
  Wrdic,
  Msl,
  Pccnc,
  Wrdimg,
};

inline constexpr std::size_t kIndexCount = 11;

inline constexpr std::array<IndexId, kIndexCount> kAllIndices = {
    IndexId::Pcref,      IndexId::PcrefChunk, IndexId::Pcdc,  IndexId::SmcausE,
    IndexId::SmcausWn,   IndexId::WrdhypMean, IndexId::WrdhypNorm, IndexId::Wrdic,
    IndexId::Msl,        IndexId::Pccnc,      IndexId::Wrdimg,
};

/// Lowercase snake-case name, e.g. "pcref_chunk".
std::string_view index_name(IndexId id);
std::optional<IndexId> index_from_name(std::string_view name);

struct IndexValue {
  double value = 0;
  bool available = false;

  static IndexValue of(double v) { return {v, true}; }
  static IndexValue unavailable() { return {}; }
};

/// Raw (pre-normalization) index values for one document.
struct RawIndices {
  std::string doc_id;
  std::array<IndexValue, kIndexCount> values{};

  IndexValue& operator[](IndexId id) { return values[static_cast<std::size_t>(id)]; }
  const IndexValue& operator[](IndexId id) const { return values[static_cast<std::size_t>(id)]; }
};

enum class PcrefMode { Adjacent, AllPairs };

struct ChunkingParams {
  std::size_t buffer_size = 1;           // sentences of context on each side
  double breakpoint_percentile = 95.0;   // in (0, 100]
  bool normalized = false;               // report chunks / sentences instead of the count

  /// Throws ConfigError when out of range.
  void validate() const;
};

enum class RatingKind { Concreteness, Imageability };

/// RootScale divides each representative length by the longest
/// representative to the same root anywhere in the database. LiteralL1
/// divides by the sum of lengths inside the group.
enum class WrdhypNormMode { RootScale, LiteralL1 };

/// Mean cosine between sentence embeddings (consecutive pairs or all pairs).
IndexValue idx_pcref(const Document& doc, const SentenceEmbeddingSource& src, PcrefMode mode);

/// Percentile with linear interpolation between order statistics.
double percentile_linear(std::span<const double> values, double percentile);

/// Number of chunks for a sequence of (windowed) sentence embeddings:
/// breakpoints where 1 - cos(e_i, e_i+1) is strictly above the percentile.
std::size_t count_semantic_chunks(std::span<const Vector> embeddings, double percentile);

IndexValue idx_semantic_chunks(const Document& doc, const SentenceEmbeddingSource& src, const ChunkingParams& params);

/// Connective matches per sentence.
IndexValue idx_pcdc(const Document& doc, const ConnectivePatterns& patterns);

/// Mean cosine over all pairs of in-vocabulary verb vectors.
IndexValue idx_smcaus_embed(const Document& doc, const WordVectors& wv);

/// Fraction of verb pairs whose WordNet synset sets intersect.
IndexValue idx_smcaus_wn(const Document& doc, const WordNetDb& db);

IndexValue idx_wrdhyp_mean(const Document& doc, const WordNetDb& db, const HypernymIndex& paths);
IndexValue idx_wrdhyp_mean(const Document& doc, const WordNetDb& db);

IndexValue idx_wrdhyp_norm(const Document& doc, const WordNetDb& db, const HypernymIndex& paths,
                           WrdhypNormMode mode = WrdhypNormMode::RootScale);
IndexValue idx_wrdhyp_norm(const Document& doc, const WordNetDb& db);

IndexValue idx_wrdic(const Document& doc, const WordNetDb& db, const IcTable& ic);

/// Mean number of non-punctuation tokens per sentence.
IndexValue idx_msl(const Document& doc);

IndexValue idx_rating(const Document& doc, const RatingLexicon& lex, RatingKind which);

}  // namespace scigis

#endif  // SCIGIS_INDICES_HPP
