#include "scigis/support.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "scigis/default_data.hpp"
#include "scigis/error.hpp"
#include "text_util.hpp"

namespace scigis {

namespace {

bool parse_double(std::string_view text, double& out) {
  text = detail::trim(text);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

RatingLexicon RatingLexicon::parse(std::istream& in, const std::string& source) {
  RatingLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, '\t');
    WordRatings ratings;
    const bool numeric = fields.size() == 3 && parse_double(fields[1], ratings.concreteness) &&
                         parse_double(fields[2], ratings.imageability);
    if (first && fields.size() == 3 && !parse_double(fields[1], ratings.concreteness)) {
      first = false;  // header row
      continue;
    }
    first = false;
    if (!numeric) throw ParseError(source, line_no, "expected 'word<TAB>concreteness<TAB>imageability'");
    lexicon.entries_[detail::to_lower_ascii(detail::trim(fields[0]))] = ratings;
  }
  return lexicon;
}

const WordRatings* RatingLexicon::find(std::string_view word) const {
  const auto it = entries_.find(detail::to_lower_ascii(word));
  return it == entries_.end() ? nullptr : &it->second;
}

ConnectivePatterns ConnectivePatterns::parse(std::string_view text) {
  ConnectivePatterns patterns;
  for (const auto& line : detail::data_lines(text)) {
    const Document doc = segment_and_tokenize(line);
    std::vector<std::string> words;
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence.tokens) words.push_back(detail::to_lower_ascii(token.surface));
    }
    if (!words.empty() && std::find(patterns.phrases_.begin(), patterns.phrases_.end(), words) ==
                              patterns.phrases_.end()) {
      patterns.phrases_.push_back(std::move(words));
    }
  }
  std::stable_sort(patterns.phrases_.begin(), patterns.phrases_.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return patterns;
}

const ConnectivePatterns& ConnectivePatterns::defaults() {
  static const ConnectivePatterns patterns = parse(default_data::connectives());
  return patterns;
}

std::size_t ConnectivePatterns::count_matches(std::span<const Token> tokens) const {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(detail::to_lower_ascii(t.surface));

  std::size_t matches = 0;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t advance = 1;
    for (const auto& phrase : phrases_) {
      if (i + phrase.size() <= words.size() && std::equal(phrase.begin(), phrase.end(), words.begin() + static_cast<std::ptrdiff_t>(i))) {
        ++matches;
        advance = phrase.size();
        break;
      }
    }
    i += advance;
  }
  return matches;
}

SupportFiles load_support_files(const std::optional<std::filesystem::path>& rating_lexicon,
                                const std::optional<std::filesystem::path>& connectives,
                                const std::optional<std::filesystem::path>& sidecar) {
  SupportFiles files;
  if (rating_lexicon) {
    std::ifstream in(*rating_lexicon);
    if (!in) throw ParseError(rating_lexicon->string(), 0, "cannot open rating lexicon");
    files.ratings = RatingLexicon::parse(in, rating_lexicon->string());
  }
  if (connectives) {
    std::ifstream in(*connectives);
    if (!in) throw ParseError(connectives->string(), 0, "cannot open connectives file");
    std::ostringstream text;
    text << in.rdbuf();
    files.connectives = ConnectivePatterns::parse(text.str());
  }
  if (sidecar) files.sidecar = SidecarEmbeddings::load(*sidecar);
  return files;
}

}  // namespace scigis
