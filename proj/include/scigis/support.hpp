#ifndef SCIGIS_SUPPORT_HPP
#define SCIGIS_SUPPORT_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scigis/corpus.hpp"
#include "scigis/vectors.hpp"

namespace scigis {

struct WordRatings {
  double concreteness = 0;
  double imageability = 0;
};

/// word -> (concreteness, imageability) from a three-column TSV.
class RatingLexicon {
 public:
  static RatingLexicon parse(std::istream& in, const std::string& source = "<lexicon>");

  const WordRatings* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, WordRatings> entries_;
};

/// Case-insensitive connective phrases matched on whole tokens.
class ConnectivePatterns {
 public:
  static ConnectivePatterns parse(std::string_view text);
  /// The list shipped in data/connectives.txt.
  static const ConnectivePatterns& defaults();

  /// Non-overlapping matches scanning left to right, trying longer phrases
  /// first at each position.
  std::size_t count_matches(std::span<const Token> tokens) const;

  std::size_t size() const { return phrases_.size(); }
  bool empty() const { return phrases_.empty(); }
  const std::vector<std::vector<std::string>>& phrases() const { return phrases_; }

 private:
  std::vector<std::vector<std::string>> phrases_;  // longest first
};

struct SupportFiles {
  std::optional<RatingLexicon> ratings;
  std::optional<ConnectivePatterns> connectives;
  std::optional<SidecarEmbeddings> sidecar;
};

SupportFiles load_support_files(const std::optional<std::filesystem::path>& rating_lexicon,
                                const std::optional<std::filesystem::path>& connectives,
                                const std::optional<std::filesystem::path>& sidecar);

}  // namespace scigis

#endif  // SCIGIS_SUPPORT_HPP
