#include "scigis/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scigis/corpus.hpp"
#include "scigis/error.hpp"
#include "scigis/evaluation.hpp"
#include "scigis/gis.hpp"
#include "scigis/information_content.hpp"
#include "scigis/stats.hpp"
#include "scigis/support.hpp"
#include "scigis/vectors.hpp"
#include "scigis/wordnet.hpp"

namespace scigis::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename T>
T config_value(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("config key '{}' has the wrong type", key));
  }
}

void require_one_of(const std::string& key, const std::string& value, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (value == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError(fmt::format("{} must be one of {{{}}}, got '{}'", key, list, value));
}

void validate_config(const RunConfig& cfg) {
  require_one_of("pcref_mode", cfg.pcref_mode, {"adjacent", "all"});
  require_one_of("wrdhyp_norm_mode", cfg.wrdhyp_norm_mode, {"root_scale", "literal_l1"});
  require_one_of("z_population", cfg.z_population, {"combined", "per-side"});
  require_one_of("ttest", cfg.ttest, {"student", "welch"});
  require_one_of("format", cfg.format, {"tsv", "json"});
  if (!(cfg.ic_smoothing >= 0)) throw ConfigError("ic_smoothing must be >= 0");
  if (cfg.ic_file && cfg.ic_counts) throw ConfigError("ic_file and ic_counts are mutually exclusive");
  ChunkingParams chunking{cfg.buffer_size, cfg.percentile, cfg.normalized_chunks};
  chunking.validate();
  for (const auto* names : {&cfg.enable, &cfg.disable}) {
    for (const auto& name : *names) {
      if (!index_from_name(name)) throw ConfigError(fmt::format("unknown index '{}'", name));
    }
  }
  const std::pair<const char*, const std::optional<std::string>*> paths[] = {
      {"wordnet_dir", &cfg.wordnet_dir},   {"ic_file", &cfg.ic_file},
      {"ic_counts", &cfg.ic_counts},       {"vectors_file", &cfg.vectors_file},
      {"lexicon_file", &cfg.lexicon_file}, {"connectives_file", &cfg.connectives_file},
      {"sidecar_file", &cfg.sidecar_file}, {"zstats_file", &cfg.zstats_file},
  };
  for (const auto& [key, path] : paths) {
    if (*path && !fs::exists(**path)) throw ConfigError(fmt::format("{}: no such file or directory '{}'", key, **path));
  }
}

// Fully resolved run: formulas, option structs and the enabled index set.
struct Plan {
  FormulaConfig formula;
  std::optional<FormulaConfig> baseline;
  IndexOptions options;
};

Plan make_plan(const RunConfig& cfg) {
  validate_config(cfg);
  Plan plan;
  plan.formula = resolve_formula(cfg.formula);
  if (cfg.baseline) plan.baseline = resolve_formula(*cfg.baseline);

  IndexSet enabled = plan.formula.indices();
  if (plan.baseline) enabled |= plan.baseline->indices();
  for (const auto& name : cfg.enable) enabled.set(static_cast<std::size_t>(*index_from_name(name)));
  for (const auto& name : cfg.disable) enabled.reset(static_cast<std::size_t>(*index_from_name(name)));

  plan.options.enabled = enabled;
  plan.options.pcref_mode = cfg.pcref_mode == "all" ? PcrefMode::AllPairs : PcrefMode::Adjacent;
  plan.options.chunking = {cfg.buffer_size, cfg.percentile, cfg.normalized_chunks};
  plan.options.wrdhyp_norm_mode =
      cfg.wrdhyp_norm_mode == "literal_l1" ? WrdhypNormMode::LiteralL1 : WrdhypNormMode::RootScale;
  plan.options.jobs = cfg.jobs;

  ResourceAvailability available;
  available.wordnet = cfg.wordnet_dir.has_value();
  available.ic = cfg.ic_file || cfg.ic_counts;
  available.vectors = cfg.vectors_file.has_value();
  available.sidecar = cfg.sidecar_file.has_value();
  available.ratings = cfg.lexicon_file.has_value();
  validate_resources(enabled, available);
  if (available.ic && !available.wordnet) throw ConfigError("an IC table requires wordnet_dir");
  return plan;
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "scigis: warning: " << w << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("{}: cannot open", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Resources load_resources(const RunConfig& cfg, std::ostream& err) {
  Resources r;
  if (cfg.wordnet_dir) r.set_wordnet(parse_wordnet_db(*cfg.wordnet_dir));
  if (cfg.ic_file) {
    auto loaded = load_ic_file(fs::path(*cfg.ic_file), *r.wordnet);
    print_warnings(err, loaded.warnings);
    r.ic = std::move(loaded.table);
  } else if (cfg.ic_counts) {
    r.ic = build_ic(*r.wordnet, load_lemma_counts(fs::path(*cfg.ic_counts)), cfg.ic_smoothing);
  }
  if (cfg.vectors_file) {
    auto loaded = load_word_vectors(fs::path(*cfg.vectors_file));
    print_warnings(err, loaded.warnings);
    r.vectors = std::move(loaded.vectors);
  }
  if (cfg.sidecar_file) r.sidecar = SidecarEmbeddings::load(fs::path(*cfg.sidecar_file));
  if (cfg.lexicon_file) {
    std::ifstream in(*cfg.lexicon_file);
    if (!in) throw Error(fmt::format("{}: cannot open", *cfg.lexicon_file));
    r.ratings = RatingLexicon::parse(in, *cfg.lexicon_file);
  }
  if (cfg.connectives_file) r.connectives = ConnectivePatterns::parse(read_file(*cfg.connectives_file));
  return r;
}

ZStats normalization(const RunConfig& cfg, std::span<const RawIndices> raw) {
  if (!cfg.zstats_file) return compute_zstats(raw);
  try {
    return zstats_from_json(json::parse(read_file(*cfg.zstats_file)));
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: invalid z statistics: {}", *cfg.zstats_file, e.what()));
  }
}

std::vector<ZRow> normalize(const RunConfig& cfg, std::span<const RawIndices> raw) {
  return apply_zstats(raw, normalization(cfg, raw));
}

json number_or_null(const IndexValue& v) { return v.available ? json(v.value) : json(nullptr); }

struct Scored {
  std::vector<Document> docs;
  std::vector<RawIndices> raw;
  ZStats stats;
  std::vector<GisScore> scores;
};

Scored score_corpus(const RunConfig& cfg, const Plan& plan, const Resources& resources, std::vector<Document> docs) {
  Scored s;
  s.docs = std::move(docs);
  s.raw = compute_corpus_indices(s.docs, resources, plan.options);
  s.stats = normalization(cfg, s.raw);
  const auto z = apply_zstats(s.raw, s.stats);
  s.scores = score_documents(s.raw, z, plan.formula);
  return s;
}

void dump_sentences(std::ostream& out, std::span<const Document> docs, std::size_t buffer) {
  out << "doc_id\tsent\twindowed_text\n";
  for (const auto& doc : docs) {
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      out << doc.doc_id << '\t' << i << '\t' << window_text(doc, i, buffer) << '\n';
    }
  }
}

void cmd_score(const RunConfig& cfg, const std::string& corpus_path, bool dump, std::ostream& out,
               std::ostream& err) {
  if (dump) {
    // Segmentation does not depend on any index resource.
    validate_config(cfg);
    std::optional<WordNetDb> db;
    if (cfg.wordnet_dir) db = parse_wordnet_db(*cfg.wordnet_dir);
    dump_sentences(out, load_corpus(corpus_path, db ? &*db : nullptr), cfg.buffer_size);
    return;
  }
  const Plan plan = make_plan(cfg);
  const Resources resources = load_resources(cfg, err);
  auto docs = load_corpus(corpus_path, resources.wordnet ? &*resources.wordnet : nullptr);
  const Scored s = score_corpus(cfg, plan, resources, std::move(docs));

  std::vector<IndexId> columns;
  for (IndexId id : kAllIndices) {
    if (has_index(plan.options.enabled, id)) columns.push_back(id);
  }

  if (cfg.format == "json") {
    json rows = json::array();
    for (std::size_t d = 0; d < s.scores.size(); ++d) {
      json indices = json::object();
      json zs = json::object();
      for (IndexId id : columns) {
        const std::string name(index_name(id));
        indices[name] = number_or_null(s.scores[d].raw[id]);
        zs[name] = s.scores[d].z[static_cast<std::size_t>(id)];
      }
      rows.push_back({{"doc_id", s.docs[d].doc_id}, {"indices", indices}, {"z", zs}, {"gis", s.scores[d].gis}});
    }
    out << json{{"formula", plan.formula.name}, {"documents", rows}, {"zstats", zstats_to_json(s.stats)}}.dump(2)
        << '\n';
    return;
  }

  out << "doc_id";
  for (IndexId id : columns) out << '\t' << index_name(id);
  for (IndexId id : columns) out << "\tz_" << index_name(id);
  out << "\tgis\n";
  for (std::size_t d = 0; d < s.scores.size(); ++d) {
    const auto& score = s.scores[d];
    out << s.docs[d].doc_id;
    for (IndexId id : columns) {
      const auto& v = score.raw[id];
      out << '\t' << (v.available ? format_number(v.value) : "NA");
    }
    for (IndexId id : columns) out << '\t' << format_number(score.z[static_cast<std::size_t>(id)]);
    out << '\t' << format_number(score.gis) << '\n';
  }
}

std::vector<PairOutcome> outcomes_for(const FormulaConfig& formula, std::span<const RawIndices> raw,
                                      std::span<const ZRow> z, const std::vector<PairRecord>& pairs) {
  const auto scores = score_documents(raw, z, formula);
  const std::size_t n = pairs.size();
  std::vector<PairOutcome> outcomes;
  outcomes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) outcomes.push_back(make_outcome(pairs[i].pair_id, scores[i].gis, scores[n + i].gis));
  return outcomes;
}

void cmd_pairs(const RunConfig& cfg, const std::string& pairs_path, std::ostream& out, std::ostream& err) {
  const Plan plan = make_plan(cfg);
  const Resources resources = load_resources(cfg, err);
  const auto pairs = load_pairs(fs::path(pairs_path), resources.wordnet ? &*resources.wordnet : nullptr);
  if (pairs.empty()) throw DomainError(fmt::format("{}: no pairs", pairs_path));

  // ABS documents first, then PLS in the same order.
  std::vector<Document> docs;
  docs.reserve(2 * pairs.size());
  for (const auto& p : pairs) docs.push_back(p.abs_doc);
  for (const auto& p : pairs) docs.push_back(p.pls_doc);
  const auto raw = compute_corpus_indices(docs, resources, plan.options);

  std::vector<ZRow> z;
  if (cfg.z_population == "per-side" && !cfg.zstats_file) {
    const std::span<const RawIndices> all(raw);
    const auto abs_z = normalize(cfg, all.first(pairs.size()));
    const auto pls_z = normalize(cfg, all.last(pairs.size()));
    z = abs_z;
    z.insert(z.end(), pls_z.begin(), pls_z.end());
  } else {
    z = normalize(cfg, raw);
  }

  const auto outcomes = outcomes_for(plan.formula, raw, z, pairs);
  std::optional<std::vector<PairOutcome>> baseline;
  if (plan.baseline) baseline = outcomes_for(*plan.baseline, raw, z, pairs);
  const auto report = baseline ? pair_stats(outcomes, std::span<const PairOutcome>(*baseline)) : pair_stats(outcomes);

  if (cfg.format == "json") {
    json doc = pairs_json(outcomes, report);
    doc["formula"] = plan.formula.name;
    if (plan.baseline) doc["baseline"] = plan.baseline->name;
    out << doc.dump(2) << '\n';
  } else {
    write_pairs_tsv(out, outcomes, report);
  }
}

void cmd_bench(const RunConfig& cfg, const std::string& group1_path, const std::string& group2_path,
               std::ostream& out, std::ostream& err) {
  const Plan plan = make_plan(cfg);
  const Resources resources = load_resources(cfg, err);
  const WordNetDb* db = resources.wordnet ? &*resources.wordnet : nullptr;
  auto group1 = load_corpus(group1_path, db);
  auto group2 = load_corpus(group2_path, db);
  for (const auto& [path, group] : {std::pair{&group1_path, &group1}, std::pair{&group2_path, &group2}}) {
    if (group->size() < 2) {
      throw ConfigError(fmt::format("{}: a benchmark group needs at least 2 documents, got {}", *path, group->size()));
    }
  }
  const std::size_t n1 = group1.size();
  const std::size_t n2 = group2.size();
  std::vector<Document> docs = std::move(group1);
  docs.insert(docs.end(), std::make_move_iterator(group2.begin()), std::make_move_iterator(group2.end()));
  const Scored s = score_corpus(cfg, plan, resources, std::move(docs));

  std::vector<double> gis1, gis2;
  for (std::size_t i = 0; i < n1 + n2; ++i) (i < n1 ? gis1 : gis2).push_back(s.scores[i].gis);
  const auto report = ttest_ind(gis1, gis2, cfg.ttest == "welch" ? TTestKind::Welch : TTestKind::Student);

  if (cfg.format == "json") {
    out << json{{"formula", plan.formula.name},
                {"ttest", cfg.ttest},
                {"n1", n1},
                {"n2", n2},
                {"distance", report.distance},
                {"t", report.t},
                {"df", report.df},
                {"p", report.p}}
               .dump(2)
        << '\n';
    return;
  }
  out << "n1\tn2\tdistance\tt\tdf\tp\n";
  out << n1 << '\t' << n2 << '\t' << format_number(report.distance) << '\t' << format_number(report.t) << '\t'
      << format_number(report.df) << '\t' << format_number(report.p) << '\n';
}

void cmd_correlate(const RunConfig& cfg, const std::string& corpus_path, std::ostream& out, std::ostream& err) {
  const Plan plan = make_plan(cfg);
  const Resources resources = load_resources(cfg, err);
  auto docs = load_corpus(corpus_path, resources.wordnet ? &*resources.wordnet : nullptr);
  const Scored s = score_corpus(cfg, plan, resources, std::move(docs));

  std::vector<ReadabilityRow> rows;
  for (std::size_t i = 0; i < s.docs.size(); ++i) rows.push_back({s.scores[i].gis, fkgl(s.docs[i]), ari(s.docs[i])});
  const auto report = correlate_readability(rows);

  if (cfg.format == "json") {
    out << json{{"formula", plan.formula.name},
                {"n", report.n},
                {"r_gis_fkgl", report.r_gis_fkgl},
                {"r_gis_ari", report.r_gis_ari}}
               .dump(2)
        << '\n';
    return;
  }
  out << "n\tr_gis_fkgl\tr_gis_ari\n";
  out << report.n << '\t' << format_number(report.r_gis_fkgl) << '\t' << format_number(report.r_gis_ari) << '\n';
}

RunConfig load_config_file(const std::string& path) {
  if (!fs::is_regular_file(path)) throw ConfigError(fmt::format("config file '{}' not found", path));
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
  RunConfig cfg;
  apply_config_json(cfg, j);

  // Relative paths in a config file are relative to the file itself.
  const fs::path base = fs::path(path).parent_path();
  auto rebase = [&](std::optional<std::string>& p) {
    if (p && fs::path(*p).is_relative()) p = (base / *p).string();
  };
  for (auto* p : {&cfg.wordnet_dir, &cfg.ic_file, &cfg.ic_counts, &cfg.vectors_file, &cfg.lexicon_file,
                  &cfg.connectives_file, &cfg.sidecar_file, &cfg.zstats_file}) {
    rebase(*p);
  }
  if (!is_preset_name(cfg.formula) && fs::path(cfg.formula).is_relative()) cfg.formula = (base / cfg.formula).string();
  if (cfg.baseline && !is_preset_name(*cfg.baseline)) rebase(cfg.baseline);
  return cfg;
}

}  // namespace

void apply_config_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto opt_path = [&](std::optional<std::string>& field) {
      field = value.is_null() ? std::nullopt : std::optional(config_value<std::string>(value, key));
    };
    if (key == "wordnet_dir") opt_path(cfg.wordnet_dir);
    else if (key == "ic_file") opt_path(cfg.ic_file);
    else if (key == "ic_counts") opt_path(cfg.ic_counts);
    else if (key == "ic_smoothing") cfg.ic_smoothing = config_value<double>(value, key);
    else if (key == "vectors_file") opt_path(cfg.vectors_file);
    else if (key == "lexicon_file") opt_path(cfg.lexicon_file);
    else if (key == "connectives_file") opt_path(cfg.connectives_file);
    else if (key == "sidecar_file") opt_path(cfg.sidecar_file);
    else if (key == "zstats_file") opt_path(cfg.zstats_file);
    else if (key == "formula") cfg.formula = config_value<std::string>(value, key);
    else if (key == "baseline") opt_path(cfg.baseline);
    else if (key == "buffer_size") cfg.buffer_size = config_value<std::size_t>(value, key);
    else if (key == "percentile") cfg.percentile = config_value<double>(value, key);
    else if (key == "normalized_chunks") cfg.normalized_chunks = config_value<bool>(value, key);
    else if (key == "enable") cfg.enable = config_value<std::vector<std::string>>(value, key);
    else if (key == "disable") cfg.disable = config_value<std::vector<std::string>>(value, key);
    else if (key == "pcref_mode") cfg.pcref_mode = config_value<std::string>(value, key);
    else if (key == "wrdhyp_norm_mode") cfg.wrdhyp_norm_mode = config_value<std::string>(value, key);
    else if (key == "z_population") cfg.z_population = config_value<std::string>(value, key);
    else if (key == "ttest") cfg.ttest = config_value<std::string>(value, key);
    else if (key == "format") cfg.format = config_value<std::string>(value, key);
    else if (key == "jobs") cfg.jobs = config_value<std::size_t>(value, key);
    else throw ConfigError(fmt::format("unknown config key '{}'", key));
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Referenceless gist inference scoring for text simplification", "scigis"};
  app.require_subcommand(1);
  app.fallthrough();

  // Flags given on the command line override the config file.
  std::vector<std::function<void(RunConfig&)>> overrides;
  auto string_option = [&](const std::string& flags, std::function<void(RunConfig&, const std::string&)> set,
                           const std::string& help) {
    return app.add_option_function<std::string>(
        flags, [&overrides, set](const std::string& v) { overrides.push_back([=](RunConfig& c) { set(c, v); }); },
        help);
  };
  auto path_option = [&](const std::string& flags, std::optional<std::string> RunConfig::*field,
                         const std::string& help) {
    return string_option(flags, [field](RunConfig& c, const std::string& v) { c.*field = v; }, help);
  };

  std::string config_path;
  std::string output_path;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("-o,--output", output_path, "Write the report to a file instead of stdout");
  path_option("--wordnet", &RunConfig::wordnet_dir, "WordNet database directory");
  path_option("--ic-file", &RunConfig::ic_file, "WordNet-IC counts file");
  path_option("--ic-counts", &RunConfig::ic_counts, "Lemma frequency file to propagate into an IC table");
  path_option("--vectors", &RunConfig::vectors_file, "Word vector file");
  path_option("--lexicon", &RunConfig::lexicon_file, "Concreteness/imageability ratings (TSV)");
  path_option("--connectives", &RunConfig::connectives_file, "Connective phrase list");
  path_option("--sidecar", &RunConfig::sidecar_file, "Sentence embedding sidecar (JSONL)");
  path_option("--zstats", &RunConfig::zstats_file, "Fixed z-score statistics (JSON)");
  path_option("--baseline", &RunConfig::baseline, "Baseline formula: preset name or JSON file");
  string_option("--formula", [](RunConfig& c, const std::string& v) { c.formula = v; },
                "Formula: original_gispy, scigispy or a JSON file");
  string_option("--format", [](RunConfig& c, const std::string& v) { c.format = v; }, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  string_option("--pcref-mode", [](RunConfig& c, const std::string& v) { c.pcref_mode = v; },
                "Sentence pairs for pcref")
      ->check(CLI::IsMember({"adjacent", "all"}));
  string_option("--z-population", [](RunConfig& c, const std::string& v) { c.z_population = v; },
                "Z-score population for pairs")
      ->check(CLI::IsMember({"combined", "per-side"}));
  string_option("--wrdhyp-norm-mode", [](RunConfig& c, const std::string& v) { c.wrdhyp_norm_mode = v; },
                "Group normalization for wrdhyp_norm")
      ->check(CLI::IsMember({"root_scale", "literal_l1"}));
  app.add_option_function<std::size_t>(
      "--jobs", [&](std::size_t v) { overrides.push_back([=](RunConfig& c) { c.jobs = v; }); },
      "Worker threads (0: one per core)");
  app.add_option_function<std::size_t>(
      "--buffer-size", [&](std::size_t v) { overrides.push_back([=](RunConfig& c) { c.buffer_size = v; }); },
      "Sentences of context on each side for chunking");
  app.add_option_function<double>(
      "--percentile", [&](double v) { overrides.push_back([=](RunConfig& c) { c.percentile = v; }); },
      "Breakpoint percentile for chunking");
  app.add_option_function<double>(
      "--ic-smoothing", [&](double v) { overrides.push_back([=](RunConfig& c) { c.ic_smoothing = v; }); },
      "Additive smoothing for --ic-counts");
  app.add_option_function<std::vector<std::string>>(
      "--enable",
      [&](const std::vector<std::string>& v) {
        overrides.push_back([=](RunConfig& c) { c.enable.insert(c.enable.end(), v.begin(), v.end()); });
      },
      "Compute extra indices");
  app.add_option_function<std::vector<std::string>>(
      "--disable",
      [&](const std::vector<std::string>& v) {
        overrides.push_back([=](RunConfig& c) { c.disable.insert(c.disable.end(), v.begin(), v.end()); });
      },
      "Skip indices");
  app.add_flag_callback(
      "--welch", [&] { overrides.push_back([](RunConfig& c) { c.ttest = "welch"; }); }, "Welch t-test for bench");
  app.add_flag_callback(
      "--normalized-chunks", [&] { overrides.push_back([](RunConfig& c) { c.normalized_chunks = true; }); },
      "Divide the chunk count by the sentence count");

  std::string corpus_path, pairs_path, group1_path, group2_path;
  bool dump = false;
  auto* score = app.add_subcommand("score", "Score every document of a corpus");
  score->add_option("corpus", corpus_path, "Directory of .txt files or a .conllu file")->required();
  score->add_flag("--dump-sentences", dump, "Print doc_id, sentence index and windowed text, then exit");
  auto* pairs = app.add_subcommand("pairs", "Compare ABS/PLS pairs");
  pairs->add_option("pairs", pairs_path, "JSONL pair file")->required();
  auto* bench = app.add_subcommand("bench", "t-test between two corpora");
  bench->add_option("group1", group1_path, "First corpus")->required();
  bench->add_option("group2", group2_path, "Second corpus")->required();
  auto* correlate = app.add_subcommand("correlate", "Correlate GIS with FKGL and ARI");
  correlate->add_option("corpus", corpus_path, "Corpus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "scigis: error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
    for (const auto& apply : overrides) apply(cfg);

    std::ostringstream report;
    if (*score) cmd_score(cfg, corpus_path, dump, report, err);
    else if (*pairs) cmd_pairs(cfg, pairs_path, report, err);
    else if (*bench) cmd_bench(cfg, group1_path, group2_path, report, err);
    else cmd_correlate(cfg, corpus_path, report, err);

    if (output_path.empty()) {
      out << report.str();
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!(file << report.str())) throw Error(fmt::format("{}: cannot write", output_path));
    }
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "scigis: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "scigis: error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace scigis::cli
