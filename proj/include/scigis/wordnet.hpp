#ifndef SCIGIS_WORDNET_HPP
#define SCIGIS_WORDNET_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scigis {

enum class SynsetPos : char { Noun = 'n', Verb = 'v' };

struct SynsetId {
  std::uint32_t offset = 0;
  SynsetPos pos = SynsetPos::Noun;

  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;

  /// WordNet-IC style key, e.g. "00001740n".
  std::string str() const;
};

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;  // lowercase, underscores for spaces
  std::vector<SynsetId> hypernyms;  // "@" and "@i" pointers, file order
};

/// Noun and verb portions of a WordNet database: synsets with their
/// hypernym edges plus the lemma index. Immutable once built.
class WordNetDb {
 public:
  class Builder {
   public:
    Builder& add_synset(Synset synset);
    Builder& add_index_entry(std::string lemma, SynsetPos pos, std::vector<SynsetId> synsets);

    /// Validates references and acyclicity. Throws ParseError naming the
    /// offending synset.
    WordNetDb build(const std::string& source = "wordnet") &&;

   private:
    std::map<SynsetId, Synset> synsets_;
    std::unordered_map<std::string, std::vector<SynsetId>> index_[2];
  };

  const Synset* find(SynsetId id) const;
  const Synset& at(SynsetId id) const;

  /// Synsets listed for (lemma, pos), in index-file order. Empty if absent.
  std::span<const SynsetId> lookup(std::string_view lemma, SynsetPos pos) const;

  const std::map<SynsetId, Synset>& synsets() const { return synsets_; }
  std::size_t size() const { return synsets_.size(); }

 private:
  std::map<SynsetId, Synset> synsets_;
  std::unordered_map<std::string, std::vector<SynsetId>> index_[2];
};

/// Loads index.noun, index.verb, data.noun and data.verb from `directory`.
WordNetDb parse_wordnet_db(const std::filesystem::path& directory);

using HypernymPath = std::vector<SynsetId>;

/// Every path from `id` up to a root (a synset without hypernyms). Paths
/// start at `id`; their length counts nodes. Sorted by root offset, then
/// lexicographically.
std::vector<HypernymPath> hypernym_paths(const WordNetDb& db, SynsetId id);

/// One "child parent" line per hypernym edge in synset order.
std::string hypernym_edge_list(const WordNetDb& db);

/// Per-synset hypernym path summaries, computed once over the whole
/// database by dynamic programming over the hypernym DAG.
class HypernymIndex {
 public:
  struct PathSummary {
    double path_count = 0;    // number of root-reaching paths
    double mean_length = 0;   // mean node count over those paths
    std::size_t longest = 0;  // longest path length
    SynsetId longest_root;    // root of the longest path (ties: larger id)
  };

  explicit HypernymIndex(const WordNetDb& db);

  const PathSummary& summary(SynsetId id) const;

  /// Largest representative (longest-path) length among all synsets whose
  /// representative ends at `root`. 0 if no synset is represented by it.
  std::size_t root_scale(SynsetId root) const;

 private:
  std::map<SynsetId, PathSummary> summaries_;
  std::map<SynsetId, std::size_t> root_scale_;
};

}  // namespace scigis

#endif  // SCIGIS_WORDNET_HPP
