#include "scigis/information_content.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

#include <fmt/format.h>

#include "scigis/error.hpp"
#include "text_util.hpp"

namespace scigis {

namespace {

std::size_t slot(SynsetPos pos) { return pos == SynsetPos::Noun ? 0 : 1; }

std::optional<SynsetPos> parse_pos(std::string_view text) {
  if (text == "n") return SynsetPos::Noun;
  if (text == "v") return SynsetPos::Verb;
  return std::nullopt;
}

bool parse_double(std::string_view text, double& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

void collect_ancestors(const WordNetDb& db, SynsetId id, std::set<SynsetId>& out) {
  if (!out.insert(id).second) return;
  for (const auto& h : db.at(id).hypernyms) collect_ancestors(db, h, out);
}

}  // namespace

IcTable::IcTable(std::map<SynsetId, double> prob, double smoothing)
    : prob_(std::move(prob)), smoothing_(smoothing) {}

std::optional<double> IcTable::probability(SynsetId id) const {
  const auto it = prob_.find(id);
  if (it == prob_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> IcTable::ic(SynsetId id) const {
  const auto p = probability(id);
  if (!p) return std::nullopt;
  return -std::log(*p);
}

IcTable build_ic(const WordNetDb& db, const LemmaCounts& counts, double smoothing) {
  if (!(smoothing >= 0) || !std::isfinite(smoothing)) throw ConfigError("IC smoothing must be >= 0");

  std::map<SynsetId, double> credit;
  double total[2] = {0, 0};
  double uncovered = 0;
  std::size_t uncovered_lemmas = 0;
  for (const auto& [key, count] : counts) {
    if (!(count >= 0) || !std::isfinite(count)) {
      throw ConfigError(fmt::format("negative count for lemma '{}'", key.first));
    }
    const auto synsets = db.lookup(key.first, key.second);
    if (synsets.empty()) {
      uncovered += count;
      ++uncovered_lemmas;
      continue;
    }
    total[slot(key.second)] += count;
    const double share = count / static_cast<double>(synsets.size());
    for (const auto& sid : synsets) {
      std::set<SynsetId> ancestors;
      collect_ancestors(db, sid, ancestors);
      for (const auto& a : ancestors) credit[a] += share;
    }
  }
  if (smoothing == 0 && total[0] == 0 && total[1] == 0) {
    throw DomainError("no probability mass: every lemma count is zero or uncovered");
  }

  std::map<SynsetId, double> prob;
  for (const auto& [id, synset] : db.synsets()) {
    const auto it = credit.find(id);
    const double c = it == credit.end() ? 0.0 : it->second;
    const double denom = total[slot(id.pos)] + smoothing;
    if (c + smoothing <= 0 || denom <= 0) continue;
    prob.emplace(id, (c + smoothing) / denom);
  }
  IcTable table(std::move(prob), smoothing);
  table.uncovered_count = uncovered;
  table.uncovered_lemmas = uncovered_lemmas;
  return table;
}

LemmaCounts load_lemma_counts(std::istream& in, const std::string& source) {
  LemmaCounts counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split_ws(body);
    double count = 0;
    const auto pos = fields.size() == 3 ? parse_pos(fields[1]) : std::nullopt;
    if (!pos || !parse_double(fields[2], count) || count < 0) {
      throw ParseError(source, line_no, "expected 'lemma<TAB>n|v<TAB>count'");
    }
    counts[{detail::to_lower_ascii(fields[0]), *pos}] += count;
  }
  return counts;
}

LemmaCounts load_lemma_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open lemma counts file");
  return load_lemma_counts(in, path.string());
}

IcFileLoad load_ic_file(std::istream& in, const WordNetDb& db, const std::string& source) {
  IcFileLoad result;
  std::map<SynsetId, double> counts;
  double root_total[2] = {0, 0};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto fields = detail::split_ws(body);
    auto warn = [&](const std::string& what) {
      result.warnings.push_back(fmt::format("{}:{}: {}", source, line_no, what));
    };

    bool ok = (fields.size() == 2 || (fields.size() == 3 && fields[2] == "ROOT")) && fields[0].size() >= 2;
    std::uint32_t offset = 0;
    double count = 0;
    std::optional<SynsetPos> pos;
    if (ok) {
      const auto key = fields[0];
      pos = parse_pos(key.substr(key.size() - 1));
      const auto digits = key.substr(0, key.size() - 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), offset);
      ok = pos && ec == std::errc() && ptr == digits.data() + digits.size() && parse_double(fields[1], count) &&
           count >= 0;
    }
    if (!ok) {
      warn("unparsable line skipped");
      continue;
    }
    const SynsetId id{offset, *pos};
    if (db.find(id) == nullptr) {
      warn(fmt::format("synset {} not in database, skipped", id.str()));
      continue;
    }
    counts[id] = count;
    if (fields.size() == 3) root_total[slot(*pos)] += count;
  }
  if (root_total[0] == 0 && root_total[1] == 0) {
    throw ParseError(source, 0, "zero total count over ROOT synsets");
  }

  std::map<SynsetId, double> prob;
  for (const auto& [id, count] : counts) {
    const double total = root_total[slot(id.pos)];
    if (count <= 0 || total <= 0) continue;
    double p = count / total;
    if (p > 1.0) {
      result.warnings.push_back(fmt::format("{}: count of {} exceeds its root total, capped", source, id.str()));
      p = 1.0;
    }
    prob.emplace(id, p);
  }
  result.table = IcTable(std::move(prob), 0.0);
  return result;
}

IcFileLoad load_ic_file(const std::filesystem::path& path, const WordNetDb& db) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open IC file");
  return load_ic_file(in, db, path.string());
}

}  // namespace scigis
