#ifndef SCIGIS_CORPUS_HPP
#define SCIGIS_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace scigis {

class WordNetDb;

/// Coarse part of speech. Only nouns and verbs feed the WordNet indices.
enum class Pos { Noun, Verb, Other, Punct };

std::string_view pos_name(Pos pos);

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::Other;
  std::size_t char_count = 0;  // code points in surface
  std::size_t syllable_count = 0;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string raw;
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;

  std::size_t token_count() const;
  /// Tokens that are not punctuation.
  std::size_t word_count() const;
};

struct PairRecord {
  std::string pair_id;
  Document abs_doc;
  Document pls_doc;
};

/// A case-folded word list read from a data file.
class WordList {
 public:
  WordList() = default;
  static WordList parse(std::string_view text);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Word lists that drive segmentation, tagging and syllable counting. The
/// defaults are the files shipped under data/.
struct LexicalLists {
  WordList abbreviations;
  WordList closed_class;
  WordList syllable_exceptions;

  static const LexicalLists& defaults();
};

/// Rule-based sentence segmentation and tokenization. Tokens come back
/// tagged OTHER or PUNCT with a lowercased lemma; see tag_document().
Document segment_and_tokenize(std::string_view text, std::string doc_id = {},
                              const LexicalLists& lists = LexicalLists::defaults());

std::size_t count_syllables(std::string_view surface,
                            const LexicalLists& lists = LexicalLists::defaults());

/// Suffix-detachment lemmatizer backed by WordNet membership.
std::pair<Pos, std::string> fallback_pos_and_lemma(std::string_view surface, const WordNetDb& db,
                                                   const LexicalLists& lists = LexicalLists::defaults());

/// Assigns pos and lemma to every word token. With no database every word
/// is OTHER.
void tag_document(Document& doc, const WordNetDb* db,
                  const LexicalLists& lists = LexicalLists::defaults());

/// Tokenizes and tags in one step.
Document annotate_text(std::string_view text, std::string doc_id, const WordNetDb* db,
                       const LexicalLists& lists = LexicalLists::defaults());

/// Reads CoNLL-U. `# newdoc id = X` starts a new document; sentences before
/// any such comment go to a document named "doc1", "doc2", ... by position.
std::vector<Document> parse_conllu(std::istream& in, const std::string& source = "<conllu>");

/// Writes the mapped columns (FORM, LEMMA, UPOS) back out as CoNLL-U.
void write_conllu(std::ostream& out, std::span<const Document> docs);

/// JSON-lines file of {pair_id, abs_text, pls_text} records.
std::vector<PairRecord> load_pairs(std::istream& in, const WordNetDb* db,
                                   const std::string& source = "<pairs>");
std::vector<PairRecord> load_pairs(const std::filesystem::path& path, const WordNetDb* db);

/// Loads a corpus from a directory of .txt files (stem = doc_id, sorted by
/// name) or from a single .conllu file.
std::vector<Document> load_corpus(const std::filesystem::path& path, const WordNetDb* db);

}  // namespace scigis

#endif  // SCIGIS_CORPUS_HPP
