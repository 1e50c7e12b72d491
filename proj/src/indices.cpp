#include "scigis/indices.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "scigis/error.hpp"

namespace scigis {

namespace {

constexpr std::array<std::string_view, kIndexCount> kNames = {
    "pcref", "pcref_chunk", "pcdc", "smcaus_e", "smcaus_wn", "wrdhyp_mean",
    "wrdhyp_norm", "wrdic", "msl", "pccnc", "wrdimg",
};

// Distances this close to zero come from rounding in the cosine of two
// identical vectors.
constexpr double kDistanceSnap = 1e-12;

std::optional<SynsetPos> wordnet_pos(Pos pos) {
  if (pos == Pos::Noun) return SynsetPos::Noun;
  if (pos == Pos::Verb) return SynsetPos::Verb;
  return std::nullopt;
}

// Calls fn(token, synsets) for every noun/verb token with at least one synset.
template <typename Fn>
void for_each_content_token(const Document& doc, const WordNetDb& db, Fn&& fn) {
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence.tokens) {
      const auto pos = wordnet_pos(token.pos);
      if (!pos) continue;
      const auto synsets = db.lookup(token.lemma, *pos);
      if (!synsets.empty()) fn(token, synsets);
    }
  }
}

class Mean {
 public:
  void add(double x) {
    sum_ += x;
    ++n_;
  }
  std::size_t count() const { return n_; }
  IndexValue result() const { return n_ == 0 ? IndexValue::unavailable() : IndexValue::of(sum_ / static_cast<double>(n_)); }

 private:
  double sum_ = 0;
  std::size_t n_ = 0;
};

std::vector<Vector> embed_all(const Document& doc, const SentenceEmbeddingSource& src, std::size_t buffer) {
  std::vector<Vector> out;
  out.reserve(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    auto e = src.embed(doc, i, buffer);
    if (e.values.size() != src.dim()) {
      throw Error(fmt::format("embedding for '{}' sentence {} has dimension {}, expected {}", doc.doc_id, i,
                              e.values.size(), src.dim()));
    }
    out.push_back(std::move(e.values));
  }
  return out;
}

}  // namespace

std::string_view index_name(IndexId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<IndexId> index_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kIndexCount; ++i) {
    if (kNames[i] == name) return static_cast<IndexId>(i);
  }
  return std::nullopt;
}

void ChunkingParams::validate() const {
  if (!(breakpoint_percentile > 0.0 && breakpoint_percentile <= 100.0)) {
    throw ConfigError(fmt::format("breakpoint percentile {} outside (0, 100]", breakpoint_percentile));
  }
}

IndexValue idx_pcref(const Document& doc, const SentenceEmbeddingSource& src, PcrefMode mode) {
  const auto n = doc.sentences.size();
  if (n < 2) return IndexValue::unavailable();
  const auto embeddings = embed_all(doc, src, 0);
  Mean mean;
  if (mode == PcrefMode::Adjacent) {
    for (std::size_t i = 0; i + 1 < n; ++i) mean.add(cosine(embeddings[i], embeddings[i + 1]).value);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) mean.add(cosine(embeddings[i], embeddings[j]).value);
    }
  }
  return mean.result();
}

double percentile_linear(std::span<const double> values, double percentile) {
  if (values.empty()) throw DomainError("percentile of an empty sequence");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = percentile / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::size_t count_semantic_chunks(std::span<const Vector> embeddings, double percentile) {
  if (embeddings.size() < 2) return embeddings.size();
  std::vector<double> distances;
  distances.reserve(embeddings.size() - 1);
  for (std::size_t i = 0; i + 1 < embeddings.size(); ++i) {
    double d = 1.0 - cosine(embeddings[i], embeddings[i + 1]).value;
    if (std::abs(d) < kDistanceSnap) d = 0.0;
    distances.push_back(d);
  }
  const double threshold = percentile_linear(distances, percentile);
  const auto breakpoints = std::count_if(distances.begin(), distances.end(), [&](double d) { return d > threshold; });
  return static_cast<std::size_t>(breakpoints) + 1;
}

IndexValue idx_semantic_chunks(const Document& doc, const SentenceEmbeddingSource& src, const ChunkingParams& params) {
  params.validate();
  if (doc.sentences.empty()) return IndexValue::unavailable();
  const auto embeddings = embed_all(doc, src, params.buffer_size);
  const auto chunks = static_cast<double>(count_semantic_chunks(embeddings, params.breakpoint_percentile));
  return IndexValue::of(params.normalized ? chunks / static_cast<double>(doc.sentences.size()) : chunks);
}

IndexValue idx_pcdc(const Document& doc, const ConnectivePatterns& patterns) {
  if (doc.sentences.empty()) return IndexValue::unavailable();
  std::size_t matches = 0;
  for (const auto& sentence : doc.sentences) matches += patterns.count_matches(sentence.tokens);
  return IndexValue::of(static_cast<double>(matches) / static_cast<double>(doc.sentences.size()));
}

IndexValue idx_smcaus_embed(const Document& doc, const WordVectors& wv) {
  std::vector<Vector> verbs;
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence.tokens) {
      if (token.pos != Pos::Verb) continue;
      auto vec = wv.find(token.lemma);
      if (!vec) vec = wv.find(token.surface);
      if (vec) verbs.push_back(std::move(*vec));
    }
  }
  if (verbs.size() < 2) return IndexValue::unavailable();
  Mean mean;
  for (std::size_t i = 0; i < verbs.size(); ++i) {
    for (std::size_t j = i + 1; j < verbs.size(); ++j) mean.add(cosine(verbs[i], verbs[j]).value);
  }
  return mean.result();
}

IndexValue idx_smcaus_wn(const Document& doc, const WordNetDb& db) {
  std::vector<std::vector<SynsetId>> verbs;
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence.tokens) {
      if (token.pos != Pos::Verb) continue;
      const auto synsets = db.lookup(token.lemma, SynsetPos::Verb);
      if (synsets.empty()) continue;
      std::vector<SynsetId> sorted(synsets.begin(), synsets.end());
      std::sort(sorted.begin(), sorted.end());
      verbs.push_back(std::move(sorted));
    }
  }
  if (verbs.size() < 2) return IndexValue::unavailable();
  std::size_t overlapping = 0, pairs = 0;
  for (std::size_t i = 0; i < verbs.size(); ++i) {
    for (std::size_t j = i + 1; j < verbs.size(); ++j, ++pairs) {
      const auto& a = verbs[i];
      const auto& b = verbs[j];
      auto ia = a.begin();
      auto ib = b.begin();
      while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else {
          ++overlapping;
          break;
        }
      }
    }
  }
  return IndexValue::of(static_cast<double>(overlapping) / static_cast<double>(pairs));
}

IndexValue idx_wrdhyp_mean(const Document& doc, const WordNetDb& db, const HypernymIndex& paths) {
  Mean tokens;
  for_each_content_token(doc, db, [&](const Token&, std::span<const SynsetId> synsets) {
    Mean senses;
    for (const auto& sid : synsets) senses.add(paths.summary(sid).mean_length);
    tokens.add(senses.result().value);
  });
  return tokens.result();
}

IndexValue idx_wrdhyp_mean(const Document& doc, const WordNetDb& db) {
  return idx_wrdhyp_mean(doc, db, HypernymIndex(db));
}

IndexValue idx_wrdhyp_norm(const Document& doc, const WordNetDb& db, const HypernymIndex& paths, WrdhypNormMode mode) {
  Mean tokens;
  for_each_content_token(doc, db, [&](const Token&, std::span<const SynsetId> synsets) {
    std::map<SynsetId, std::vector<double>> groups;
    for (const auto& sid : synsets) {
      const auto& summary = paths.summary(sid);
      groups[summary.longest_root].push_back(static_cast<double>(summary.longest));
    }
    Mean group_means;
    for (const auto& [root, lengths] : groups) {
      double scale = 0;
      if (mode == WrdhypNormMode::RootScale) {
        scale = static_cast<double>(paths.root_scale(root));
      } else {
        for (double l : lengths) scale += l;
      }
      Mean group;
      for (double l : lengths) group.add(l / scale);
      group_means.add(group.result().value);
    }
    tokens.add(group_means.result().value);
  });
  return tokens.result();
}

IndexValue idx_wrdhyp_norm(const Document& doc, const WordNetDb& db) {
  return idx_wrdhyp_norm(doc, db, HypernymIndex(db));
}

IndexValue idx_wrdic(const Document& doc, const WordNetDb& db, const IcTable& ic) {
  Mean tokens;
  for_each_content_token(doc, db, [&](const Token&, std::span<const SynsetId> synsets) {
    Mean senses;
    for (const auto& sid : synsets) {
      if (const auto value = ic.ic(sid)) senses.add(*value);
    }
    if (senses.count() > 0) tokens.add(senses.result().value);
  });
  return tokens.result();
}

IndexValue idx_msl(const Document& doc) {
  if (doc.sentences.empty()) return IndexValue::unavailable();
  return IndexValue::of(static_cast<double>(doc.word_count()) / static_cast<double>(doc.sentences.size()));
}

IndexValue idx_rating(const Document& doc, const RatingLexicon& lex, RatingKind which) {
  Mean mean;
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence.tokens) {
      if (token.pos == Pos::Punct) continue;
      const WordRatings* r = lex.find(token.surface);
      if (r == nullptr) r = lex.find(token.lemma);
      if (r == nullptr) continue;
      mean.add(which == RatingKind::Concreteness ? r->concreteness : r->imageability);
    }
  }
  return mean.result();
}

}  // namespace scigis
