#ifndef SCIGIS_INFORMATION_CONTENT_HPP
#define SCIGIS_INFORMATION_CONTENT_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scigis/wordnet.hpp"

namespace scigis {

/// Corpus frequency of (lemma, pos).
using LemmaCounts = std::map<std::pair<std::string, SynsetPos>, double>;

/// P(c) per synset; IC(c) = -ln P(c). Synsets without probability mass
/// (zero count and no smoothing) are absent.
class IcTable {
 public:
  IcTable() = default;
  IcTable(std::map<SynsetId, double> prob, double smoothing);

  std::optional<double> probability(SynsetId id) const;
  std::optional<double> ic(SynsetId id) const;

  const std::map<SynsetId, double>& probabilities() const { return prob_; }
  double smoothing() const { return smoothing_; }
  std::size_t size() const { return prob_.size(); }

  /// Total count of lemmas that had no synset in the database.
  double uncovered_count = 0;
  std::size_t uncovered_lemmas = 0;

 private:
  std::map<SynsetId, double> prob_;
  double smoothing_ = 0;
};

/// Resnik-style propagation: a (lemma, pos) count is split equally among
/// the lemma's synsets and credited to each synset and every distinct
/// ancestor. prob(c) = (credit(c) + s) / (total(pos) + s), where total(pos)
/// is the covered count mass of that part of speech.
IcTable build_ic(const WordNetDb& db, const LemmaCounts& counts, double smoothing = 0.0);

/// Reads "lemma<TAB>pos<TAB>count" lines (pos is n or v).
LemmaCounts load_lemma_counts(std::istream& in, const std::string& source = "<counts>");
LemmaCounts load_lemma_counts(const std::filesystem::path& path);

struct IcFileLoad {
  IcTable table;
  std::vector<std::string> warnings;
};

/// Reads a WordNet-IC style file: "<offset><pos> <count> [ROOT]" lines with
/// already-propagated counts. Probabilities are count / sum of ROOT counts
/// of the same pos.
IcFileLoad load_ic_file(std::istream& in, const WordNetDb& db, const std::string& source = "<ic>");
IcFileLoad load_ic_file(const std::filesystem::path& path, const WordNetDb& db);

}  // namespace scigis

#endif  // SCIGIS_INFORMATION_CONTENT_HPP
