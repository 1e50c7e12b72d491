#ifndef SCIGIS_VECTORS_HPP
#define SCIGIS_VECTORS_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scigis/corpus.hpp"

namespace scigis {

using Vector = std::vector<double>;

struct Similarity {
  double value = 0;
  bool degenerate = false;  // one of the inputs had zero norm
};

/// Cosine similarity clamped to [-1, 1]; zero-norm input gives 0 with the
/// degenerate flag set. Throws DomainError on a dimension mismatch.
Similarity cosine(std::span<const double> u, std::span<const double> v);

/// Word embeddings from a text vector file ("V D" header, then one
/// "word x1 .. xD" line per word). Keys are lowercased.
class WordVectors {
 public:
  WordVectors() = default;
  explicit WordVectors(std::size_t dim) : dim_(dim) {}

  /// Inserts or replaces; returns false if the word was already present.
  bool insert(std::string_view word, std::span<const double> values);

  std::optional<Vector> find(std::string_view word) const;
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> rows_;
  std::vector<float> data_;
};

struct WordVectorLoad {
  WordVectors vectors;
  std::vector<std::string> warnings;
};

WordVectorLoad load_word_vectors(std::istream& in, const std::string& source = "<vectors>");
WordVectorLoad load_word_vectors(const std::filesystem::path& path);

struct Embedding {
  Vector values;
  bool degenerate = false;  // no input contributed (all out of vocabulary)
};

/// Mean of the vectors of in-vocabulary, non-punctuation token surfaces.
Embedding sentence_embedding_avg(const WordVectors& wv, std::span<const Token> tokens);

/// Text of sentences max(0, i-buffer) .. min(S-1, i+buffer), space-joined
/// with internal whitespace collapsed.
std::string window_text(const Document& doc, std::size_t sentence, std::size_t buffer);

/// Produces one embedding per (document, sentence, context window).
class SentenceEmbeddingSource {
 public:
  virtual ~SentenceEmbeddingSource() = default;
  virtual std::size_t dim() const = 0;
  virtual Embedding embed(const Document& doc, std::size_t sentence, std::size_t buffer) const = 0;
};

/// Averages word vectors over every token in the sentence window.
class AveragedWordVectorSource final : public SentenceEmbeddingSource {
 public:
  explicit AveragedWordVectorSource(const WordVectors& vectors) : vectors_(vectors) {}
  std::size_t dim() const override { return vectors_.dim(); }
  Embedding embed(const Document& doc, std::size_t sentence, std::size_t buffer) const override;

 private:
  const WordVectors& vectors_;
};

/// Precomputed embeddings keyed by (doc_id, sentence index). The context
/// window is fixed when the file is produced, so `buffer` is ignored.
/// Throws Error when a requested key is missing.
class SidecarEmbeddings final : public SentenceEmbeddingSource {
 public:
  static SidecarEmbeddings load(std::istream& in, const std::string& source = "<sidecar>");
  static SidecarEmbeddings load(const std::filesystem::path& path);

  std::size_t dim() const override { return dim_; }
  Embedding embed(const Document& doc, std::size_t sentence, std::size_t buffer) const override;

  const Vector* find(const std::string& doc_id, std::size_t sentence) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::size_t dim_ = 0;
  std::map<std::pair<std::string, std::size_t>, Vector> records_;
};

}  // namespace scigis

#endif  // SCIGIS_VECTORS_HPP
