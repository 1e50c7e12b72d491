#include "scigis/vectors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scigis/error.hpp"
#include "text_util.hpp"

namespace scigis {

namespace {

bool parse_double(std::string_view text, double& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

Similarity cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DomainError(fmt::format("cosine of vectors with dimensions {} and {}", u.size(), v.size()));
  }
  double dot = 0, uu = 0, vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0 || vv == 0) return {0.0, true};
  return {std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0), false};
}

bool WordVectors::insert(std::string_view word, std::span<const double> values) {
  if (values.size() != dim_) {
    throw DomainError(fmt::format("vector for '{}' has dimension {}, expected {}", word, values.size(), dim_));
  }
  const auto [it, inserted] = rows_.try_emplace(detail::to_lower_ascii(word), rows_.size());
  if (inserted) data_.resize(data_.size() + dim_);
  std::transform(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_),
                 [](double x) { return static_cast<float>(x); });
  return inserted;
}

std::optional<Vector> WordVectors::find(std::string_view word) const {
  const auto it = rows_.find(detail::to_lower_ascii(word));
  if (it == rows_.end()) return std::nullopt;
  const auto first = data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_);
  return Vector(first, first + static_cast<std::ptrdiff_t>(dim_));
}

WordVectorLoad load_word_vectors(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing 'V D' header");
  const auto header = detail::split_ws(line);
  std::size_t declared = 0, dim = 0;
  auto parse_size = [](std::string_view text, std::size_t& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
  };
  if (header.size() != 2 || !parse_size(header[0], declared) || !parse_size(header[1], dim) || dim == 0) {
    throw ParseError(source, 1, "expected header 'V D' with D > 0");
  }

  WordVectorLoad result{WordVectors(dim), {}};
  std::vector<double> values(dim);
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_ws(line);
    if (fields.size() != dim + 1) {
      throw ParseError(source, line_no, fmt::format("expected {} components, found {}", dim, fields.size() - 1));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_double(fields[i + 1], values[i])) {
        throw ParseError(source, line_no, fmt::format("bad component '{}'", fields[i + 1]));
      }
    }
    ++lines;
    if (!result.vectors.insert(fields[0], values)) {
      result.warnings.push_back(
          fmt::format("{}:{}: duplicate word '{}', last occurrence kept", source, line_no, fields[0]));
    }
  }
  if (lines != declared) {
    result.warnings.push_back(fmt::format("{}: header declares {} vectors, found {}", source, declared, lines));
  }
  return result;
}

WordVectorLoad load_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open vector file");
  return load_word_vectors(in, path.string());
}

Embedding sentence_embedding_avg(const WordVectors& wv, std::span<const Token> tokens) {
  Embedding out{Vector(wv.dim(), 0.0), true};
  std::size_t hits = 0;
  for (const auto& token : tokens) {
    if (token.pos == Pos::Punct) continue;
    const auto vec = wv.find(token.surface);
    if (!vec) continue;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += (*vec)[i];
    ++hits;
  }
  if (hits > 0) {
    for (auto& x : out.values) x /= static_cast<double>(hits);
    out.degenerate = false;
  }
  return out;
}

std::string window_text(const Document& doc, std::size_t sentence, std::size_t buffer) {
  const std::size_t first = sentence > buffer ? sentence - buffer : 0;
  const std::size_t last = std::min(doc.sentences.size() - 1, sentence + buffer);
  std::string out;
  for (std::size_t i = first; i <= last; ++i) {
    for (const auto word : detail::split_ws(doc.sentences[i].raw)) {
      if (!out.empty()) out += ' ';
      out += word;
    }
  }
  return out;
}

Embedding AveragedWordVectorSource::embed(const Document& doc, std::size_t sentence, std::size_t buffer) const {
  const std::size_t first = sentence > buffer ? sentence - buffer : 0;
  const std::size_t last = std::min(doc.sentences.size() - 1, sentence + buffer);
  std::vector<Token> tokens;
  for (std::size_t i = first; i <= last; ++i) {
    const auto& t = doc.sentences[i].tokens;
    tokens.insert(tokens.end(), t.begin(), t.end());
  }
  return sentence_embedding_avg(vectors_, tokens);
}

SidecarEmbeddings SidecarEmbeddings::load(std::istream& in, const std::string& source) {
  SidecarEmbeddings sidecar;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, line_no, fmt::format("invalid JSON: {}", e.what()));
    }
    if (!record.is_object() || !record.contains("doc_id") || !record["doc_id"].is_string() ||
        !record.contains("sent") || !record["sent"].is_number_unsigned() || !record.contains("vec") ||
        !record["vec"].is_array()) {
      throw ParseError(source, line_no, "expected {\"doc_id\": string, \"sent\": int >= 0, \"vec\": [numbers]}");
    }
    Vector vec;
    for (const auto& x : record["vec"]) {
      if (!x.is_number()) throw ParseError(source, line_no, "non-numeric vector component");
      vec.push_back(x.get<double>());
    }
    if (vec.empty()) throw ParseError(source, line_no, "empty vector");
    if (sidecar.dim_ == 0) sidecar.dim_ = vec.size();
    if (vec.size() != sidecar.dim_) {
      throw ParseError(source, line_no,
                       fmt::format("vector dimension {} differs from earlier records ({})", vec.size(), sidecar.dim_));
    }
    auto key = std::make_pair(record["doc_id"].get<std::string>(), record["sent"].get<std::size_t>());
    if (sidecar.records_.contains(key)) {
      throw ParseError(source, line_no, fmt::format("duplicate record for ({}, {})", key.first, key.second));
    }
    sidecar.records_.emplace(std::move(key), std::move(vec));
  }
  return sidecar;
}

SidecarEmbeddings SidecarEmbeddings::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open sidecar file");
  return load(in, path.string());
}

const Vector* SidecarEmbeddings::find(const std::string& doc_id, std::size_t sentence) const {
  const auto it = records_.find({doc_id, sentence});
  return it == records_.end() ? nullptr : &it->second;
}

Embedding SidecarEmbeddings::embed(const Document& doc, std::size_t sentence, std::size_t /*buffer*/) const {
  const Vector* vec = find(doc.doc_id, sentence);
  if (vec == nullptr) {
    throw Error(fmt::format("sidecar has no embedding for document '{}' sentence {}", doc.doc_id, sentence));
  }
  bool zero = std::all_of(vec->begin(), vec->end(), [](double x) { return x == 0; });
  return {*vec, zero};
}

}  // namespace scigis
