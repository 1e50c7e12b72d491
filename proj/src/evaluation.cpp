#include "scigis/evaluation.hpp"

#include <map>
#include <ostream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scigis/error.hpp"

namespace scigis {

namespace {

struct SurfaceCounts {
  double sentences = 0;
  double words = 0;
  double syllables = 0;
  double characters = 0;
};

SurfaceCounts surface_counts(const Document& doc) {
  SurfaceCounts c;
  c.sentences = static_cast<double>(doc.sentences.size());
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence.tokens) {
      if (token.pos == Pos::Punct) continue;
      c.words += 1;
      c.syllables += static_cast<double>(token.syllable_count);
      for (const char ch : token.surface) {
        if ((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9')) c.characters += 1;
      }
    }
  }
  if (c.sentences == 0 || c.words == 0) {
    throw DomainError(fmt::format("document '{}' has no word tokens", doc.doc_id));
  }
  return c;
}

double percent(std::size_t count, std::size_t total) {
  return 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

PairOutcome make_outcome(std::string pair_id, double gis_abs, double gis_pls) {
  return {std::move(pair_id), gis_abs, gis_pls, gis_difference(gis_abs, gis_pls)};
}

CompareReport pair_stats(std::span<const PairOutcome> outcomes, std::optional<std::span<const PairOutcome>> baseline) {
  if (outcomes.empty()) throw DomainError("pair statistics need at least one pair");
  CompareReport report;
  report.n = outcomes.size();
  std::size_t positive = 0;
  double sum_abs = 0, sum_pls = 0, sum_diff = 0;
  for (const auto& o : outcomes) {
    sum_abs += o.gis_abs;
    sum_pls += o.gis_pls;
    sum_diff += o.diff;
    if (o.diff > 0) ++positive;
  }
  const auto n = static_cast<double>(outcomes.size());
  report.mean_gis_abs = sum_abs / n;
  report.mean_gis_pls = sum_pls / n;
  report.mean_diff = sum_diff / n;
  report.pct_positive = percent(positive, outcomes.size());

  if (baseline) {
    std::map<std::string, double> base;
    for (const auto& b : *baseline) base.emplace(b.pair_id, b.diff);
    if (base.size() != baseline->size() || base.size() != outcomes.size()) {
      throw DomainError("baseline pairs do not match the evaluated pairs");
    }
    std::size_t increased = 0, flipped = 0;
    for (const auto& o : outcomes) {
      const auto it = base.find(o.pair_id);
      if (it == base.end()) throw DomainError(fmt::format("pair '{}' missing from baseline", o.pair_id));
      if (o.diff > it->second) ++increased;
      if (it->second < 0 && o.diff > 0) ++flipped;
    }
    report.pct_increased = percent(increased, outcomes.size());
    report.pct_neg_to_pos = percent(flipped, outcomes.size());
  }
  return report;
}

double fkgl(const Document& doc) {
  const auto c = surface_counts(doc);
  return 0.39 * (c.words / c.sentences) + 11.8 * (c.syllables / c.words) - 15.59;
}

double ari(const Document& doc) {
  const auto c = surface_counts(doc);
  return 4.71 * (c.characters / c.words) + 0.5 * (c.words / c.sentences) - 21.43;
}

CorrelationReport correlate_readability(std::span<const ReadabilityRow> rows) {
  std::vector<double> gis, grade, ari_values;
  for (const auto& row : rows) {
    gis.push_back(row.gis);
    grade.push_back(row.fkgl);
    ari_values.push_back(row.ari);
  }
  return {pearson(gis, grade), pearson(gis, ari_values), rows.size()};
}

std::string format_number(double x) {
  if (x == 0) return "0";  // folds -0
  return fmt::format("{}", x);  // shortest round-trip form
}

void write_pairs_tsv(std::ostream& out, std::span<const PairOutcome> outcomes, const CompareReport& report) {
  out << "pair_id\tgis_abs\tgis_pls\tdiff\n";
  for (const auto& o : outcomes) {
    out << o.pair_id << '\t' << format_number(o.gis_abs) << '\t' << format_number(o.gis_pls) << '\t'
        << format_number(o.diff) << '\n';
  }
  out << "# summary\n";
  out << "n\t" << report.n << '\n';
  out << "mean_gis_abs\t" << format_number(report.mean_gis_abs) << '\n';
  out << "mean_gis_pls\t" << format_number(report.mean_gis_pls) << '\n';
  out << "mean_diff\t" << format_number(report.mean_diff) << '\n';
  out << "pct_positive\t" << format_number(report.pct_positive) << '\n';
  out << "pct_increased\t" << (report.pct_increased ? format_number(*report.pct_increased) : "NA") << '\n';
  out << "pct_neg_to_pos\t" << (report.pct_neg_to_pos ? format_number(*report.pct_neg_to_pos) : "NA") << '\n';
}

nlohmann::json pairs_json(std::span<const PairOutcome> outcomes, const CompareReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& o : outcomes) {
    rows.push_back({{"pair_id", o.pair_id}, {"gis_abs", o.gis_abs}, {"gis_pls", o.gis_pls}, {"diff", o.diff}});
  }
  nlohmann::json summary = {
      {"n", report.n},
      {"mean_gis_abs", report.mean_gis_abs},
      {"mean_gis_pls", report.mean_gis_pls},
      {"mean_diff", report.mean_diff},
      {"pct_positive", report.pct_positive},
      {"pct_increased", report.pct_increased ? nlohmann::json(*report.pct_increased) : nlohmann::json(nullptr)},
      {"pct_neg_to_pos", report.pct_neg_to_pos ? nlohmann::json(*report.pct_neg_to_pos) : nlohmann::json(nullptr)},
  };
  return {{"pairs", rows}, {"summary", summary}};
}

}  // namespace scigis
