#ifndef SCIGIS_EVALUATION_HPP
#define SCIGIS_EVALUATION_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "scigis/corpus.hpp"
#include "scigis/stats.hpp"

namespace scigis {

struct PairOutcome {
  std::string pair_id;
  double gis_abs = 0;
  double gis_pls = 0;
  double diff = 0;  // gis_pls - gis_abs
};

/// GIS(PLS) - GIS(ABS): positive when the simplified side scores higher.
inline double gis_difference(double abs_score, double pls_score) { return pls_score - abs_score; }

PairOutcome make_outcome(std::string pair_id, double gis_abs, double gis_pls);

struct CompareReport {
  std::size_t n = 0;
  double mean_gis_abs = 0;
  double mean_gis_pls = 0;
  double mean_diff = 0;
  double pct_positive = 0;  // strict diff > 0
  std::optional<double> pct_increased;    // diff > baseline diff
  std::optional<double> pct_neg_to_pos;   // baseline diff < 0 and diff > 0
};

/// Aggregate statistics over pair outcomes. With a baseline the two lists
/// are matched by pair_id; both must hold the same ids.
CompareReport pair_stats(std::span<const PairOutcome> outcomes,
                         std::optional<std::span<const PairOutcome>> baseline = std::nullopt);

/// Flesch-Kincaid grade level over non-punctuation tokens.
double fkgl(const Document& doc);

/// Automated Readability Index; characters are letters and digits.
double ari(const Document& doc);

struct CorrelationReport {
  double r_gis_fkgl = 0;
  double r_gis_ari = 0;
  std::size_t n = 0;
};

struct ReadabilityRow {
  double gis = 0;
  double fkgl = 0;
  double ari = 0;
};

CorrelationReport correlate_readability(std::span<const ReadabilityRow> rows);

/// Formats a double the same way in every report.
std::string format_number(double x);

/// Pair rows as TSV (pair_id, gis_abs, gis_pls, diff) followed by a
/// "# summary" block of key<TAB>value lines.
void write_pairs_tsv(std::ostream& out, std::span<const PairOutcome> outcomes, const CompareReport& report);
nlohmann::json pairs_json(std::span<const PairOutcome> outcomes, const CompareReport& report);

}  // namespace scigis

#endif  // SCIGIS_EVALUATION_HPP
