#include "scigis/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scigis/default_data.hpp"
#include "scigis/error.hpp"
#include "scigis/wordnet.hpp"
#include "text_util.hpp"

namespace scigis {

namespace {

using detail::decode_utf8;

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_terminator(char32_t c) { return c == '.' || c == '!' || c == '?'; }

bool is_opening(char32_t c) {
  return c == '(' || c == '[' || c == '{' || c == '"' || c == '\'' || c == 0x201C || c == 0x2018;
}

Token make_token(std::string_view surface, const LexicalLists& lists) {
  Token token;
  token.surface = std::string(surface);
  token.lemma = detail::to_lower_ascii(surface);
  token.pos = detail::has_word_char(surface) ? Pos::Other : Pos::Punct;
  token.char_count = detail::count_code_points(surface);
  token.syllable_count = count_syllables(surface, lists);
  return token;
}

// Splits a punctuation-only span into tokens, keeping runs of one repeated
// character ("...", "--") together.
void emit_punctuation(std::string_view span, std::vector<Token>& out, const LexicalLists& lists) {
  std::size_t pos = 0;
  while (pos < span.size()) {
    const auto first = decode_utf8(span, pos);
    std::size_t end = pos + first.length;
    while (end < span.size()) {
      const auto next = decode_utf8(span, end);
      if (next.value != first.value) break;
      end += next.length;
    }
    out.push_back(make_token(span.substr(pos, end - pos), lists));
    pos = end;
  }
}

struct Chunk {
  std::size_t begin = 0;  // byte range in the source text
  std::size_t end = 0;
  std::vector<Token> tokens;
  bool may_end_sentence = false;  // unguarded terminator in trailing punctuation
  bool starts_capitalized = false;
};

Chunk tokenize_chunk(std::string_view text, std::size_t begin, std::size_t end, const LexicalLists& lists) {
  Chunk chunk;
  chunk.begin = begin;
  chunk.end = end;
  const std::string_view span = text.substr(begin, end - begin);

  std::size_t core_begin = std::string_view::npos;
  std::size_t core_end = 0;
  for (std::size_t pos = 0; pos < span.size();) {
    const auto cp = decode_utf8(span, pos);
    if (detail::is_word_char(cp.value)) {
      if (core_begin == std::string_view::npos) core_begin = pos;
      core_end = pos + cp.length;
    }
    pos += cp.length;
  }

  for (std::size_t pos = 0; pos < span.size();) {
    const auto cp = decode_utf8(span, pos);
    if (!is_opening(cp.value)) {
      chunk.starts_capitalized = cp.value >= 'A' && cp.value <= 'Z';
      break;
    }
    pos += cp.length;
  }

  if (core_begin == std::string_view::npos) {
    emit_punctuation(span, chunk.tokens, lists);
    for (const char c : span) chunk.may_end_sentence |= is_terminator(static_cast<unsigned char>(c));
    return chunk;
  }

  std::string_view core = span.substr(core_begin, core_end - core_begin);
  std::string_view trailing = span.substr(core_end);
  if (!trailing.empty() && trailing.front() == '.') {
    const bool initial = core.size() == 1 && core[0] >= 'A' && core[0] <= 'Z';
    if (initial || lists.abbreviations.contains(detail::to_lower_ascii(core))) {
      core = span.substr(core_begin, core.size() + 1);
      trailing.remove_prefix(1);
    }
  }

  emit_punctuation(span.substr(0, core_begin), chunk.tokens, lists);
  chunk.tokens.push_back(make_token(core, lists));
  emit_punctuation(trailing, chunk.tokens, lists);
  for (const char c : trailing) chunk.may_end_sentence |= is_terminator(static_cast<unsigned char>(c));
  return chunk;
}

std::string lowercase_letters(std::string_view surface) {
  std::string letters;
  for (char c : surface) {
    if (c >= 'A' && c <= 'Z') letters.push_back(static_cast<char>(c - 'A' + 'a'));
    else if (c >= 'a' && c <= 'z') letters.push_back(c);
  }
  return letters;
}

std::vector<std::string> noun_candidates(const std::string& w) {
  std::vector<std::string> out{w};
  auto strip = [&](std::string_view suffix, std::string_view replacement) {
    if (w.size() > suffix.size() + 1 && w.ends_with(suffix)) {
      out.push_back(w.substr(0, w.size() - suffix.size()) + std::string(replacement));
    }
  };
  strip("ies", "y");
  strip("ses", "s");
  strip("xes", "x");
  strip("zes", "z");
  strip("ches", "ch");
  strip("shes", "sh");
  strip("men", "man");
  if (!w.ends_with("ss")) strip("s", "");
  return out;
}

std::vector<std::string> verb_candidates(const std::string& w) {
  std::vector<std::string> out{w};
  auto strip = [&](std::string_view suffix, std::string_view replacement, bool undouble) {
    if (w.size() <= suffix.size() + 1 || !w.ends_with(suffix)) return;
    const std::string stem = w.substr(0, w.size() - suffix.size());
    out.push_back(stem + std::string(replacement));
    const auto n = stem.size();
    if (undouble && n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1])) {
      out.push_back(stem.substr(0, n - 1));
    }
  };
  strip("ies", "y", false);
  strip("es", "e", false);
  strip("es", "", false);
  if (!w.ends_with("ss")) strip("s", "", false);
  strip("ed", "e", false);
  strip("ed", "", true);
  strip("ing", "e", false);
  strip("ing", "", true);
  return out;
}

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string_view pos_name(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "NOUN";
    case Pos::Verb: return "VERB";
    case Pos::Punct: return "PUNCT";
    case Pos::Other: break;
  }
  return "OTHER";
}

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::size_t Document::word_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) {
    n += static_cast<std::size_t>(std::count_if(s.tokens.begin(), s.tokens.end(),
                                                [](const Token& t) { return t.pos != Pos::Punct; }));
  }
  return n;
}

WordList WordList::parse(std::string_view text) {
  WordList list;
  for (auto& line : detail::data_lines(text)) list.words_.insert(detail::to_lower_ascii(line));
  return list;
}

bool WordList::contains(std::string_view word) const { return words_.contains(std::string(word)); }

const LexicalLists& LexicalLists::defaults() {
  static const LexicalLists lists{
      WordList::parse(default_data::abbreviations()),
      WordList::parse(default_data::closed_class_words()),
      WordList::parse(default_data::syllable_exceptions()),
  };
  return lists;
}

Document segment_and_tokenize(std::string_view text, std::string doc_id, const LexicalLists& lists) {
  std::vector<Chunk> chunks;
  for (std::size_t pos = 0; pos < text.size();) {
    auto cp = decode_utf8(text, pos);
    if (detail::is_space(cp.value)) {
      pos += cp.length;
      continue;
    }
    const std::size_t begin = pos;
    while (pos < text.size()) {
      cp = decode_utf8(text, pos);
      if (detail::is_space(cp.value)) break;
      pos += cp.length;
    }
    chunks.push_back(tokenize_chunk(text, begin, pos, lists));
  }

  Document doc;
  doc.doc_id = std::move(doc_id);
  std::size_t first = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const bool last = i + 1 == chunks.size();
    if (!last && !(chunks[i].may_end_sentence && chunks[i + 1].starts_capitalized)) continue;
    Sentence sentence;
    for (std::size_t j = first; j <= i; ++j) {
      std::move(chunks[j].tokens.begin(), chunks[j].tokens.end(), std::back_inserter(sentence.tokens));
    }
    sentence.raw = std::string(text.substr(chunks[first].begin, chunks[i].end - chunks[first].begin));
    doc.sentences.push_back(std::move(sentence));
    first = i + 1;
  }
  return doc;
}

std::size_t count_syllables(std::string_view surface, const LexicalLists& lists) {
  if (!detail::has_word_char(surface)) return 0;
  const std::string word = lowercase_letters(surface);
  if (word.empty()) return 1;  // numbers and non-Latin words

  std::size_t groups = 0;
  bool in_group = false;
  for (char c : word) {
    const bool vowel = is_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }

  const auto n = word.size();
  if (groups > 1 && word.back() == 'e' && !is_vowel(word[n - 2])) {
    const bool voiced = std::any_of(lists.syllable_exceptions.begin(), lists.syllable_exceptions.end(),
                                    [&](const std::string& suffix) { return word.ends_with(suffix); });
    if (!voiced) --groups;
  }
  return std::max<std::size_t>(groups, 1);
}

std::pair<Pos, std::string> fallback_pos_and_lemma(std::string_view surface, const WordNetDb& db,
                                                   const LexicalLists& lists) {
  std::string word = detail::to_lower_ascii(surface);
  if (!detail::has_word_char(word)) return {Pos::Punct, word};
  if (lists.closed_class.contains(word)) return {Pos::Other, word};
  for (auto& candidate : noun_candidates(word)) {
    if (!db.lookup(candidate, SynsetPos::Noun).empty()) return {Pos::Noun, std::move(candidate)};
  }
  for (auto& candidate : verb_candidates(word)) {
    if (!db.lookup(candidate, SynsetPos::Verb).empty()) return {Pos::Verb, std::move(candidate)};
  }
  return {Pos::Other, word};
}

void tag_document(Document& doc, const WordNetDb* db, const LexicalLists& lists) {
  for (auto& sentence : doc.sentences) {
    for (auto& token : sentence.tokens) {
      if (token.pos == Pos::Punct) continue;
      if (db == nullptr) {
        token.pos = Pos::Other;
        token.lemma = detail::to_lower_ascii(token.surface);
      } else {
        std::tie(token.pos, token.lemma) = fallback_pos_and_lemma(token.surface, *db, lists);
      }
    }
  }
}

Document annotate_text(std::string_view text, std::string doc_id, const WordNetDb* db,
                       const LexicalLists& lists) {
  Document doc = segment_and_tokenize(text, std::move(doc_id), lists);
  tag_document(doc, db, lists);
  return doc;
}

std::vector<Document> parse_conllu(std::istream& in, const std::string& source) {
  std::vector<Document> docs;
  Sentence current;
  bool have_text = false;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (current.tokens.empty()) return;
    if (!have_text) {
      for (const auto& t : current.tokens) {
        if (!current.raw.empty()) current.raw += ' ';
        current.raw += t.surface;
      }
    }
    if (docs.empty()) docs.push_back({"doc1", {}});
    docs.back().sentences.push_back(std::move(current));
    current = Sentence{};
    have_text = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      const auto body = detail::trim(std::string_view(line).substr(1));
      if (body.starts_with("newdoc")) {
        flush();
        std::string id;
        if (const auto eq = body.find('='); eq != std::string_view::npos) {
          id = std::string(detail::trim(body.substr(eq + 1)));
        }
        if (id.empty()) id = fmt::format("doc{}", docs.size() + 1);
        docs.push_back({std::move(id), {}});
      } else if (body.starts_with("text") && body.find('=') != std::string_view::npos) {
        current.raw = std::string(detail::trim(body.substr(body.find('=') + 1)));
        have_text = true;
      }
      continue;
    }
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 10) {
      throw ParseError(source, line_no, fmt::format("expected 10 tab-separated columns, found {}", fields.size()));
    }
    if (fields[0].find_first_of("-.") != std::string_view::npos) continue;  // ranges, empty nodes

    Token token;
    token.surface = std::string(fields[1]);
    token.lemma = detail::to_lower_ascii(fields[2] == "_" ? fields[1] : fields[2]);
    const auto upos = fields[3];
    if (upos == "NOUN" || upos == "PROPN") token.pos = Pos::Noun;
    else if (upos == "VERB") token.pos = Pos::Verb;
    else if (upos == "PUNCT") token.pos = Pos::Punct;
    else token.pos = Pos::Other;
    const bool wordlike = detail::has_word_char(token.surface);
    if (!wordlike) token.pos = Pos::Punct;
    else if (token.pos == Pos::Punct) token.pos = Pos::Other;
    token.char_count = detail::count_code_points(token.surface);
    token.syllable_count = count_syllables(token.surface);
    current.tokens.push_back(std::move(token));
  }
  flush();

  std::map<std::string, int> seen;
  for (const auto& doc : docs) {
    if (seen[doc.doc_id]++ > 0) throw ParseError(source, 0, fmt::format("duplicate document id '{}'", doc.doc_id));
  }
  return docs;
}

void write_conllu(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    out << "# newdoc id = " << doc.doc_id << '\n';
    for (const auto& sentence : doc.sentences) {
      std::string raw = sentence.raw;
      std::replace_if(raw.begin(), raw.end(), [](char c) { return c == '\n' || c == '\r' || c == '\t'; }, ' ');
      out << "# text = " << raw << '\n';
      std::size_t id = 1;
      for (const auto& token : sentence.tokens) {
        const std::string_view upos = token.pos == Pos::Other ? std::string_view("X") : pos_name(token.pos);
        out << id++ << '\t' << token.surface << '\t' << token.lemma << '\t' << upos
            << "\t_\t_\t_\t_\t_\t_\n";
      }
      out << '\n';
    }
  }
}

std::vector<PairRecord> load_pairs(std::istream& in, const WordNetDb* db, const std::string& source) {
  std::vector<PairRecord> pairs;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, line_no, fmt::format("invalid JSON: {}", e.what()));
    }
    if (!record.is_object()) throw ParseError(source, line_no, "record is not a JSON object");
    auto field = [&](const char* name) -> std::string {
      const auto it = record.find(name);
      if (it == record.end() || !it->is_string()) {
        throw ParseError(source, line_no, fmt::format("missing string field '{}'", name));
      }
      return it->get<std::string>();
    };
    PairRecord pair;
    pair.pair_id = field("pair_id");
    const std::string abs_text = field("abs_text");
    const std::string pls_text = field("pls_text");
    if (const auto [it, inserted] = seen.emplace(pair.pair_id, line_no); !inserted) {
      throw ParseError(source, line_no,
                       fmt::format("duplicate pair_id '{}' (first seen on line {})", pair.pair_id, it->second));
    }
    pair.abs_doc = annotate_text(abs_text, pair.pair_id + ":abs", db);
    pair.pls_doc = annotate_text(pls_text, pair.pair_id + ":pls", db);
    if (pair.abs_doc.sentences.empty()) throw ParseError(source, line_no, "field 'abs_text' is empty");
    if (pair.pls_doc.sentences.empty()) throw ParseError(source, line_no, "field 'pls_text' is empty");
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<PairRecord> load_pairs(const std::filesystem::path& path, const WordNetDb* db) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open pairs file");
  return load_pairs(in, db, path.string());
}

std::vector<Document> load_corpus(const std::filesystem::path& path, const WordNetDb* db) {
  namespace fs = std::filesystem;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Document> docs;
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw ParseError(file.string(), 0, "cannot open file");
      docs.push_back(annotate_text(read_stream(in), file.stem().string(), db));
    }
    return docs;
  }
  if (path.extension() == ".conllu") {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return parse_conllu(in, path.string());
  }
  throw ParseError(path.string(), 0, "corpus must be a directory of .txt files or a .conllu file");
}

}  // namespace scigis
