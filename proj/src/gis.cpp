#include "scigis/gis.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scigis/error.hpp"

namespace scigis {

namespace {

const SentenceEmbeddingSource* sentence_source(const Resources& resources,
                                               std::optional<AveragedWordVectorSource>& averaged) {
  if (resources.sidecar) return &*resources.sidecar;
  if (resources.vectors) {
    averaged.emplace(*resources.vectors);
    return &*averaged;
  }
  return nullptr;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// thrown by any task is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void Resources::set_wordnet(WordNetDb db) {
  wordnet = std::move(db);
  hypernyms.emplace(*wordnet);
}

IndexSet index_set(std::initializer_list<IndexId> ids) {
  IndexSet set;
  for (auto id : ids) set.set(static_cast<std::size_t>(id));
  return set;
}

ResourceAvailability ResourceAvailability::of(const Resources& resources) {
  ResourceAvailability a;
  a.wordnet = resources.wordnet && resources.hypernyms;
  a.ic = resources.ic.has_value();
  a.vectors = resources.vectors.has_value();
  a.sidecar = resources.sidecar.has_value();
  a.ratings = resources.ratings.has_value();
  a.connectives = !resources.connectives.empty();
  return a;
}

void validate_resources(const IndexSet& enabled, const ResourceAvailability& available) {
  std::vector<std::string> problems;
  auto require = [&](IndexId id, bool ok, std::string_view what) {
    if (has_index(enabled, id) && !ok) problems.push_back(fmt::format("{} requires {}", index_name(id), what));
  };
  const bool sentences = available.sidecar || available.vectors;
  require(IndexId::Pcref, sentences, "word vectors or a sentence-embedding sidecar");
  require(IndexId::PcrefChunk, sentences, "word vectors or a sentence-embedding sidecar");
  require(IndexId::Pcdc, available.connectives, "a non-empty connective list");
  require(IndexId::SmcausE, available.vectors, "word vectors");
  require(IndexId::SmcausWn, available.wordnet, "a WordNet database");
  require(IndexId::WrdhypMean, available.wordnet, "a WordNet database");
  require(IndexId::WrdhypNorm, available.wordnet, "a WordNet database");
  require(IndexId::Wrdic, available.wordnet && available.ic, "a WordNet database and an IC table");
  require(IndexId::Pccnc, available.ratings, "a rating lexicon");
  require(IndexId::Wrdimg, available.ratings, "a rating lexicon");
  if (problems.empty()) return;
  std::string message = problems.front();
  for (std::size_t i = 1; i < problems.size(); ++i) message += "; " + problems[i];
  throw ConfigError(message);
}

void validate_resources(const IndexSet& enabled, const Resources& resources) {
  validate_resources(enabled, ResourceAvailability::of(resources));
}

RawIndices compute_indices(const Document& doc, const Resources& resources, const IndexOptions& options) {
  validate_resources(options.enabled, resources);
  RawIndices raw;
  raw.doc_id = doc.doc_id;
  const auto& on = options.enabled;
  std::optional<AveragedWordVectorSource> averaged;
  const SentenceEmbeddingSource* sentences = sentence_source(resources, averaged);

  if (has_index(on, IndexId::Pcref)) raw[IndexId::Pcref] = idx_pcref(doc, *sentences, options.pcref_mode);
  if (has_index(on, IndexId::PcrefChunk)) {
    raw[IndexId::PcrefChunk] = idx_semantic_chunks(doc, *sentences, options.chunking);
  }
  if (has_index(on, IndexId::Pcdc)) raw[IndexId::Pcdc] = idx_pcdc(doc, resources.connectives);
  if (has_index(on, IndexId::SmcausE)) raw[IndexId::SmcausE] = idx_smcaus_embed(doc, *resources.vectors);
  if (has_index(on, IndexId::SmcausWn)) raw[IndexId::SmcausWn] = idx_smcaus_wn(doc, *resources.wordnet);
  if (has_index(on, IndexId::WrdhypMean)) {
    raw[IndexId::WrdhypMean] = idx_wrdhyp_mean(doc, *resources.wordnet, *resources.hypernyms);
  }
  if (has_index(on, IndexId::WrdhypNorm)) {
    raw[IndexId::WrdhypNorm] =
        idx_wrdhyp_norm(doc, *resources.wordnet, *resources.hypernyms, options.wrdhyp_norm_mode);
  }
  if (has_index(on, IndexId::Wrdic)) raw[IndexId::Wrdic] = idx_wrdic(doc, *resources.wordnet, *resources.ic);
  if (has_index(on, IndexId::Msl)) raw[IndexId::Msl] = idx_msl(doc);
  if (has_index(on, IndexId::Pccnc)) {
    raw[IndexId::Pccnc] = idx_rating(doc, *resources.ratings, RatingKind::Concreteness);
  }
  if (has_index(on, IndexId::Wrdimg)) {
    raw[IndexId::Wrdimg] = idx_rating(doc, *resources.ratings, RatingKind::Imageability);
  }
  return raw;
}

std::vector<RawIndices> compute_corpus_indices(std::span<const Document> corpus, const Resources& resources,
                                               const IndexOptions& options) {
  validate_resources(options.enabled, resources);
  options.chunking.validate();
  std::vector<RawIndices> out(corpus.size());
  parallel_for(corpus.size(), options.jobs,
               [&](std::size_t i) { out[i] = compute_indices(corpus[i], resources, options); });
  return out;
}

ZStats compute_zstats(std::span<const RawIndices> matrix) {
  ZStats stats;
  for (std::size_t k = 0; k < kIndexCount; ++k) {
    std::vector<double> values;
    for (const auto& row : matrix) {
      if (row.values[k].available) values.push_back(row.values[k].value);
    }
    auto& s = stats.per_index[k];
    s.available_count = values.size();
    if (values.empty()) continue;
    double sum = 0;
    for (double x : values) sum += x;
    s.mean = sum / static_cast<double>(values.size());
    const bool constant = std::all_of(values.begin(), values.end(), [&](double x) { return x == values.front(); });
    if (values.size() < 2 || constant) {
      s.degenerate = true;
      continue;
    }
    double squares = 0;
    for (double x : values) squares += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(squares / static_cast<double>(values.size()));
    s.degenerate = !(s.stddev > 0);
  }
  return stats;
}

std::vector<ZRow> apply_zstats(std::span<const RawIndices> matrix, const ZStats& stats) {
  std::vector<ZRow> z(matrix.size());
  for (std::size_t d = 0; d < matrix.size(); ++d) {
    for (std::size_t k = 0; k < kIndexCount; ++k) {
      const auto& s = stats.per_index[k];
      const auto& v = matrix[d].values[k];
      z[d][k] = (v.available && !s.degenerate) ? (v.value - s.mean) / s.stddev : 0.0;
    }
  }
  return z;
}

ZResult zscore(std::span<const RawIndices> matrix) {
  ZResult result;
  result.stats = compute_zstats(matrix);
  result.z = apply_zstats(matrix, result.stats);
  return result;
}

nlohmann::json zstats_to_json(const ZStats& stats) {
  nlohmann::json indices = nlohmann::json::object();
  for (auto id : kAllIndices) {
    const auto& s = stats[id];
    indices[std::string(index_name(id))] = {
        {"mean", s.mean},
        {"stddev", s.stddev},
        {"available_count", s.available_count},
        {"degenerate", s.degenerate},
    };
  }
  return {{"indices", indices}};
}

ZStats zstats_from_json(const nlohmann::json& j) {
  ZStats stats;
  try {
    for (const auto& [name, entry] : j.at("indices").items()) {
      const auto id = index_from_name(name);
      if (!id) throw ConfigError(fmt::format("z-score table names unknown index '{}'", name));
      auto& s = stats.per_index[static_cast<std::size_t>(*id)];
      s.mean = entry.at("mean").get<double>();
      s.stddev = entry.at("stddev").get<double>();
      s.available_count = entry.value("available_count", std::size_t{0});
      s.degenerate = entry.value("degenerate", false) || !(s.stddev > 0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed z-score table: {}", e.what()));
  }
  return stats;
}

IndexSet FormulaConfig::indices() const {
  IndexSet set;
  for (const auto& [id, coefficient] : terms) set.set(static_cast<std::size_t>(id));
  return set;
}

bool is_preset_name(std::string_view name) { return name == "original_gispy" || name == "scigispy"; }

FormulaConfig preset(std::string_view name) {
  if (name == "original_gispy") {
    return {"original_gispy",
            {{IndexId::Pcref, +1},
             {IndexId::Pcdc, +1},
             {IndexId::SmcausE, +1},
             {IndexId::SmcausWn, -1},
             {IndexId::Pccnc, -1},
             {IndexId::Wrdimg, -1},
             {IndexId::WrdhypMean, -1}}};
  }
  if (name == "scigispy") {
    return {"scigispy",
            {{IndexId::PcrefChunk, -1},
             {IndexId::Pcdc, +1},
             {IndexId::SmcausE, +1},
             {IndexId::SmcausWn, -1},
             {IndexId::Wrdic, -1},
             {IndexId::Msl, -1}}};
  }
  throw ConfigError(fmt::format("unknown formula preset '{}'", name));
}

FormulaConfig formula_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_object()) {
    throw ConfigError("formula must be an object with a \"terms\" object");
  }
  FormulaConfig cfg;
  cfg.name = j.value("name", std::string("custom"));
  for (const auto& [name, coefficient] : j["terms"].items()) {
    const auto id = index_from_name(name);
    if (!id) throw ConfigError(fmt::format("formula term names unknown index '{}'", name));
    if (!coefficient.is_number() || !std::isfinite(coefficient.get<double>())) {
      throw ConfigError(fmt::format("coefficient for '{}' is not a finite number", name));
    }
    cfg.terms.emplace_back(*id, coefficient.get<double>());
  }
  return cfg;
}

FormulaConfig resolve_formula(const std::string& preset_or_path) {
  if (is_preset_name(preset_or_path)) return preset(preset_or_path);
  if (!std::filesystem::is_regular_file(preset_or_path)) {
    throw ConfigError(fmt::format("'{}' is neither a formula preset nor a readable file", preset_or_path));
  }
  std::ifstream in(preset_or_path);
  try {
    return formula_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("{}: invalid JSON: {}", preset_or_path, e.what()));
  }
}

double apply_formula(const ZRow& z, const FormulaConfig& cfg) {
  double gis = 0;
  for (const auto& [id, coefficient] : cfg.terms) gis += coefficient * z[static_cast<std::size_t>(id)];
  return gis;
}

std::vector<GisScore> score_documents(std::span<const RawIndices> raw, std::span<const ZRow> z,
                                      const FormulaConfig& cfg) {
  if (raw.size() != z.size()) throw Error("raw and z matrices differ in length");
  std::vector<GisScore> scores;
  scores.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) scores.push_back({raw[i], z[i], apply_formula(z[i], cfg)});
  return scores;
}

}  // namespace scigis
