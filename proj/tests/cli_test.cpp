#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "scigis/cli.hpp"
#include "test_support.hpp"

namespace scigis {
namespace {

using testing::fixture;
using testing::TempDir;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "scigis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> rows(const std::string& tsv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(tsv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    out.push_back(fields);
  }
  return out;
}

std::vector<std::string> full_resources() {
  return {"--wordnet",  fixture("toy_wordnet").string(),   "--ic-counts", fixture("ic_counts.txt").string(),
          "--vectors",  fixture("vectors.txt").string(),   "--lexicon",   fixture("ratings.tsv").string()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    msl_down_ = dir_.write("msl_down.json", R"({"name": "msl_down", "terms": {"msl": -1}})").string();
    msl_up_ = dir_.write("msl_up.json", R"({"name": "msl_up", "terms": {"msl": 1}})").string();
  }

  TempDir dir_;
  std::string msl_down_;
  std::string msl_up_;
};

TEST_F(CliTest, ScoreMslOnly) {
  dir_.write("corpus/a.txt", "Two words. Three more words.");
  dir_.write("corpus/b.txt", "One two three four.");
  const auto r = run_cli({"score", (dir_.path() / "corpus").string(), "--formula", msl_down_});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"doc_id", "msl", "z_msl", "gis"}));
  EXPECT_EQ(t[1], (std::vector<std::string>{"a", "2.5", "-1", "1"}));
  EXPECT_EQ(t[2], (std::vector<std::string>{"b", "4", "1", "-1"}));
}

TEST_F(CliTest, JsonMatchesTsv) {
  dir_.write("corpus/a.txt", "Two words. Three more words. Heart drug because.");
  dir_.write("corpus/b.txt", "One two three four. So it goes.");
  dir_.write("corpus/c.txt", "A sentence that runs on for quite a while without stopping.");
  const auto corpus = (dir_.path() / "corpus").string();
  auto args = full_resources();
  args.insert(args.begin(), {"score", corpus});
  const auto tsv = run_cli(args);
  ASSERT_EQ(tsv.code, 0) << tsv.err;
  args.insert(args.end(), {"--format", "json"});
  const auto js = run_cli(args);
  ASSERT_EQ(js.code, 0) << js.err;
  const auto j = nlohmann::json::parse(js.out);
  EXPECT_EQ(j["formula"], "scigispy");
  const auto t = rows(tsv.out);
  ASSERT_EQ(t.size(), j["documents"].size() + 1);
  const auto& header = t[0];
  for (std::size_t d = 0; d < j["documents"].size(); ++d) {
    const auto& doc = j["documents"][d];
    EXPECT_EQ(t[d + 1][0], doc["doc_id"].get<std::string>());
    for (std::size_t c = 1; c < header.size(); ++c) {
      const auto& name = header[c];
      const nlohmann::json* value = nullptr;
      if (name == "gis") {
        value = &doc["gis"];
      } else if (name.rfind("z_", 0) == 0) {
        value = &doc["z"][name.substr(2)];
      } else {
        value = &doc["indices"][name];
      }
      if (value->is_null()) {
        EXPECT_EQ(t[d + 1][c], "NA");
      } else {
        EXPECT_EQ(std::stod(t[d + 1][c]), value->get<double>()) << name;
      }
    }
  }
}

TEST_F(CliTest, MissingWordNetForWrdicIsConfigError) {
  dir_.write("corpus/a.txt", "Text.");
  const auto r = run_cli({"score", (dir_.path() / "corpus").string(), "--formula", "scigispy", "--vectors",
                          fixture("vectors.txt").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("wrdic"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, ConfigErrors) {
  dir_.write("corpus/a.txt", "Text.");
  const auto corpus = (dir_.path() / "corpus").string();
  EXPECT_EQ(run_cli({"score", corpus, "--formula", "nonsense"}).code, 2);
  EXPECT_EQ(run_cli({"score", corpus, "--formula", msl_up_, "--percentile", "0"}).code, 2);
  EXPECT_EQ(run_cli({"score", corpus, "--formula", msl_up_, "--wordnet", "/no/such/dir"}).code, 2);
  EXPECT_EQ(run_cli({"score", corpus, "--formula", msl_up_, "--enable", "nope"}).code, 2);
  EXPECT_EQ(run_cli({"score", corpus, "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, DataErrorsExitOne) {
  const auto missing = run_cli({"score", (dir_.path() / "nothing").string(), "--formula", msl_up_});
  EXPECT_EQ(missing.code, 1);
  const auto empty = dir_.write("empty.jsonl", "");
  EXPECT_EQ(run_cli({"pairs", empty.string(), "--formula", msl_up_}).code, 1);
  const auto bad = dir_.write("bad.jsonl", "{\"pair_id\": \"x\", \"abs_text\": \"A.\"}\n");
  const auto r = run_cli({"pairs", bad.string(), "--formula", msl_up_});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.jsonl:1"), std::string::npos) << r.err;
}

TEST_F(CliTest, PairsWithBaselineReportsAllSummaries) {
  auto args = full_resources();
  args.insert(args.begin(), {"pairs", fixture("pairs.jsonl").string(), "--baseline", "original_gispy"});
  const auto r = run_cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  for (const std::string key : {"mean_diff", "pct_positive", "pct_increased", "pct_neg_to_pos"}) {
    const auto pos = r.out.find("\n" + key + "\t");
    ASSERT_NE(pos, std::string::npos) << key;
    EXPECT_NE(r.out.substr(pos + key.size() + 2, 2), "NA") << key;
  }
  args.insert(args.end(), {"--format", "json"});
  const auto j = nlohmann::json::parse(run_cli(args).out);
  EXPECT_EQ(j["formula"], "scigispy");
  EXPECT_EQ(j["baseline"], "original_gispy");
  EXPECT_EQ(j["pairs"].size(), 10u);
  EXPECT_TRUE(j["summary"]["pct_neg_to_pos"].is_number());
}

TEST_F(CliTest, PairsByteIdenticalAcrossJobs) {
  auto args = full_resources();
  args.insert(args.begin(), {"pairs", fixture("pairs.jsonl").string(), "--baseline", "original_gispy"});
  auto serial = args;
  serial.insert(serial.end(), {"--jobs", "1"});
  auto parallel = args;
  parallel.insert(parallel.end(), {"--jobs", "8"});
  const auto a = run_cli(serial);
  const auto b = run_cli(parallel);
  const auto c = run_cli(serial);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST_F(CliTest, PairsPerSideNormalization) {
  const auto pairs = dir_.write("p.jsonl",
                                "{\"pair_id\": \"1\", \"abs_text\": \"One two three four five six.\", "
                                "\"pls_text\": \"One two.\"}\n"
                                "{\"pair_id\": \"2\", \"abs_text\": \"One two three four.\", "
                                "\"pls_text\": \"One two three four.\"}\n");
  const auto combined = rows(run_cli({"pairs", pairs.string(), "--formula", msl_down_}).out);
  // msl: abs {6, 4}, pls {2, 4}; combined mean 4, sd sqrt(2).
  EXPECT_NEAR(std::stod(combined[1][3]), 2.0 * std::sqrt(2.0), 1e-12);
  const auto side = rows(run_cli({"pairs", pairs.string(), "--formula", msl_down_, "--z-population", "per-side"}).out);
  // Each side is standardized on its own: abs z {1, -1}, pls z {-1, 1}.
  EXPECT_EQ(side[1][1], "-1");
  EXPECT_EQ(side[1][2], "1");
  EXPECT_EQ(side[1][3], "2");
}

TEST_F(CliTest, BenchIdenticalAndKnownMeans) {
  dir_.write("g1/a.txt", "One two.");
  dir_.write("g1/b.txt", "One two three four.");
  dir_.write("g2/a.txt", "One two three four five six.");
  dir_.write("g2/b.txt", "One two three four five six seven eight.");
  const auto g1 = (dir_.path() / "g1").string();
  const auto g2 = (dir_.path() / "g2").string();
  const auto same = rows(run_cli({"bench", g1, g1, "--formula", msl_up_}).out);
  ASSERT_EQ(same.size(), 2u);
  EXPECT_EQ(same[0], (std::vector<std::string>{"n1", "n2", "distance", "t", "df", "p"}));
  EXPECT_EQ(same[1][2], "0");
  EXPECT_EQ(same[1][3], "0");
  EXPECT_EQ(same[1][5], "1");

  // msl {2, 4} vs {6, 8}; union mean 5 and population sd sqrt(5).
  const auto r = run_cli({"bench", g1, g2, "--formula", msl_up_, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["distance"].get<double>(), -4.0 / std::sqrt(5.0), 1e-12);
  EXPECT_EQ(j["df"].get<double>(), 2.0);
  EXPECT_LT(j["t"].get<double>(), 0.0);
}

TEST_F(CliTest, BenchSingletonGroupIsConfigError) {
  dir_.write("g1/a.txt", "One two.");
  dir_.write("g2/a.txt", "One two three.");
  dir_.write("g2/b.txt", "One.");
  const auto r = run_cli(
      {"bench", (dir_.path() / "g1").string(), (dir_.path() / "g2").string(), "--formula", msl_up_});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, Correlate) {
  dir_.write("c/a.txt", "Cat sat.");
  dir_.write("c/b.txt", "Cat sat red mat.");
  dir_.write("c/c.txt", "Cat sat the red mat now big. Dog ran.");
  const auto corpus = (dir_.path() / "c").string();
  // Monosyllabic three-letter words: FKGL and ARI are affine in sentence length.
  const auto r = run_cli({"correlate", corpus, "--formula", msl_up_, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 3);
  EXPECT_NEAR(j["r_gis_fkgl"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["r_gis_ari"].get<double>(), 1.0, 1e-12);

  dir_.write("two/a.txt", "Cat sat.");
  dir_.write("two/b.txt", "Cat sat on the mat.");
  const auto two = rows(run_cli({"correlate", (dir_.path() / "two").string(), "--formula", msl_up_}).out);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[1][0], "2");

  dir_.write("same/a.txt", "Cat sat on mat.");
  dir_.write("same/b.txt", "Cat sat on mat.");
  const auto flat = run_cli({"correlate", (dir_.path() / "same").string(), "--formula", msl_up_});
  EXPECT_EQ(flat.code, 1);
  EXPECT_NE(flat.err.find("undefined correlation"), std::string::npos) << flat.err;
}

TEST_F(CliTest, DumpSentences) {
  dir_.write("d/doc1.txt", "First one.  Second\tone. Third one.");
  const auto r = run_cli({"score", (dir_.path() / "d").string(), "--dump-sentences", "--buffer-size", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "doc_id\tsent\twindowed_text\n"
            "doc1\t0\tFirst one. Second one.\n"
            "doc1\t1\tFirst one. Second one. Third one.\n"
            "doc1\t2\tSecond one. Third one.\n");
  const auto zero = rows(run_cli({"score", (dir_.path() / "d").string(), "--dump-sentences", "--buffer-size", "0"}).out);
  ASSERT_EQ(zero.size(), 4u);
  EXPECT_EQ(zero[2][2], "Second one.");
}

TEST_F(CliTest, SidecarFromSentenceDump) {
  dir_.write("d/doc1.txt", "Heart attack. Heart failure. Money matters.");
  const auto corpus = (dir_.path() / "d").string();
  const auto dump = rows(run_cli({"score", corpus, "--dump-sentences", "--buffer-size", "0"}).out);
  ASSERT_EQ(dump.size(), 4u);
  std::string sidecar = "# encoder=toy pooling=mean\n";
  for (std::size_t i = 1; i < dump.size(); ++i) {
    const bool money = dump[i][2].find("Money") != std::string::npos;
    sidecar += "{\"doc_id\": \"" + dump[i][0] + "\", \"sent\": " + dump[i][1] + ", \"vec\": " +
               (money ? "[0, 2]" : "[3, 0]") + "}\n";
  }
  const auto side = dir_.write("side.jsonl", sidecar);
  const auto formula = dir_.write("f.json", R"({"terms": {"pcref": 1, "pcref_chunk": 1}})");
  const auto r = run_cli({"score", corpus, "--sidecar", side.string(), "--formula", formula.string(), "--percentile",
                          "50", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["documents"][0]["indices"]["pcref"], 0.5);
  EXPECT_EQ(j["documents"][0]["indices"]["pcref_chunk"], 2.0);
}

TEST_F(CliTest, ConfigFileAndOverrides) {
  dir_.write("corpus/a.txt", "Two words. Three more words.");
  dir_.write("corpus/b.txt", "One two three four.");
  const auto config = dir_.write("run.json", R"({"formula": "msl_down.json", "format": "json", "jobs": 2})");
  const auto corpus = (dir_.path() / "corpus").string();
  const auto from_file = run_cli({"--config", config.string(), "score", corpus});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  const auto j = nlohmann::json::parse(from_file.out);
  EXPECT_EQ(j["formula"], "msl_down");
  EXPECT_EQ(j["documents"][0]["gis"], 1.0);

  const auto overridden = run_cli({"--config", config.string(), "score", corpus, "--format", "tsv", "--formula", msl_up_});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_EQ(rows(overridden.out)[1].back(), "-1");

  const auto unknown = dir_.write("bad.json", R"({"formulae": "scigispy"})");
  const auto r = run_cli({"--config", unknown.string(), "score", corpus});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("formulae"), std::string::npos);
}

TEST_F(CliTest, OutputFile) {
  dir_.write("corpus/a.txt", "Two words.");
  dir_.write("corpus/b.txt", "One two three four.");
  const auto target = dir_.path() / "out.tsv";
  const auto r = run_cli({"score", (dir_.path() / "corpus").string(), "--formula", msl_up_, "-o", target.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(target);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "doc_id\tmsl\tz_msl\tgis");
}

}  // namespace
}  // namespace scigis
