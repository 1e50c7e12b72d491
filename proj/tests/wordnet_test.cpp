#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "scigis/error.hpp"
#include "scigis/wordnet.hpp"
#include "test_support.hpp"

namespace scigis {
namespace {

using testing::fixture;
using testing::noun;
using testing::noun_db;
using testing::TempDir;
using testing::toy_wordnet;
using testing::verb;

std::size_t count_data_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.rfind("  ", 0) != 0) ++n;
  }
  return n;
}

// Every root-reaching path, enumerated from the fixture's own edge list.
std::set<std::vector<std::string>> brute_force_paths(const std::string& start) {
  std::multimap<std::string, std::string> parents;
  std::ifstream in(fixture("toy_wordnet/edges.tsv"));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    parents.emplace(line.substr(0, tab), line.substr(tab + 1));
  }
  std::set<std::vector<std::string>> done;
  std::vector<std::vector<std::string>> open = {{start}};
  while (!open.empty()) {
    auto path = open.back();
    open.pop_back();
    const auto [lo, hi] = parents.equal_range(path.back());
    if (lo == hi) done.insert(path);
    for (auto it = lo; it != hi; ++it) {
      auto next = path;
      next.push_back(it->second);
      open.push_back(next);
    }
  }
  return done;
}

TEST(WordNetParse, SynsetCountMatchesFixtureLines) {
  const auto expected =
      count_data_lines(fixture("toy_wordnet/data.noun")) + count_data_lines(fixture("toy_wordnet/data.verb"));
  EXPECT_EQ(toy_wordnet().size(), expected);
  EXPECT_LE(toy_wordnet().size(), 30u);
}

TEST(WordNetParse, PointersBecomeHypernyms) {
  const auto& db = toy_wordnet();
  ASSERT_EQ(db.at(noun("heart")).hypernyms.size(), 1u);
  EXPECT_EQ(db.at(noun("heart")).hypernyms[0], noun("organ"));
  // "@i" instance pointer.
  ASSERT_EQ(db.at(noun("warfarin")).hypernyms.size(), 1u);
  EXPECT_EQ(db.at(noun("warfarin")).hypernyms[0], noun("anticoagulant"));
  EXPECT_EQ(db.at(noun("person")).hypernyms.size(), 2u);
  EXPECT_TRUE(db.at(noun("entity")).hypernyms.empty());
}

TEST(WordNetParse, IndexPreservesFileOrderAndLemmas) {
  const auto& db = toy_wordnet();
  const auto things = db.lookup("thing", SynsetPos::Noun);
  ASSERT_EQ(things.size(), 2u);
  EXPECT_EQ(things[0], noun("abstraction"));
  EXPECT_EQ(things[1], noun("object"));
  EXPECT_EQ(db.lookup("buy", SynsetPos::Verb).front(), db.lookup("purchase", SynsetPos::Verb).front());
  EXPECT_TRUE(db.lookup("buy", SynsetPos::Noun).empty());
  EXPECT_TRUE(db.lookup("unknown", SynsetPos::Noun).empty());
  const auto& synset = db.at(noun("causal_agent"));
  EXPECT_EQ(synset.lemmas, (std::vector<std::string>{"causal_agent", "cause"}));
}

TEST(WordNetParse, CycleIsRejectedNamingSynset) {
  try {
    parse_wordnet_db(fixture("cyclic_wordnet"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("n"), std::string::npos);
  }
}

TEST(WordNetParse, OffsetMismatchNamesLine) {
  TempDir dir;
  for (const char* f : {"index.noun", "index.verb", "data.verb"}) {
    std::filesystem::copy_file(fixture(std::string("toy_wordnet/") + f), dir.path() / f);
  }
  dir.write("data.noun", "00000000 03 n 01 entity 0 000 | root\n00000099 03 n 01 thing 0 000 | off\n");
  try {
    parse_wordnet_db(dir.path());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("byte offset"), std::string::npos);
  }
}

TEST(WordNetParse, MissingFileIsAnError) {
  TempDir dir;
  EXPECT_THROW(parse_wordnet_db(dir.path()), Error);
}

TEST(WordNetParse, DanglingIndexEntryIsAnError) {
  WordNetDb::Builder b;
  b.add_synset({{1, SynsetPos::Noun}, {"a"}, {}});
  b.add_index_entry("a", SynsetPos::Noun, {{2, SynsetPos::Noun}});
  EXPECT_THROW(std::move(b).build(), ParseError);
}

TEST(WordNetParse, EdgeListIsByteStable) {
  const auto a = hypernym_edge_list(parse_wordnet_db(fixture("toy_wordnet")));
  const auto b = hypernym_edge_list(parse_wordnet_db(fixture("toy_wordnet")));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(HypernymPaths, RootAlone) {
  const auto paths = hypernym_paths(toy_wordnet(), noun("entity"));
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], (HypernymPath{noun("entity")}));
}

TEST(HypernymPaths, LinearChain) {
  const auto db = noun_db({{1, "c", {}}, {2, "b", {1}}, {3, "a", {2}}});
  const auto paths = hypernym_paths(db, {3, SynsetPos::Noun});
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].size(), 3u);
}

TEST(HypernymPaths, Diamond) {
  const auto db = noun_db({{1, "d", {}}, {2, "b", {1}}, {3, "c", {1}}, {4, "a", {2, 3}}});
  const auto paths = hypernym_paths(db, {4, SynsetPos::Noun});
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].size(), 3u);
  EXPECT_EQ(paths[1].size(), 3u);
  EXPECT_EQ(paths[0][1].offset, 2u);  // lexicographic order
  EXPECT_EQ(paths[1][1].offset, 3u);
}

TEST(HypernymPaths, MultiRootVerb) {
  const auto paths = hypernym_paths(toy_wordnet(), verb("administer"));
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].back(), verb("act"));  // act precedes manage in the file
  EXPECT_EQ(paths[0].size(), 3u);
  EXPECT_EQ(paths[1].back(), verb("manage"));
  EXPECT_EQ(paths[1].size(), 2u);
}

TEST(HypernymPaths, UnknownSynsetThrows) {
  EXPECT_THROW(hypernym_paths(toy_wordnet(), {999999, SynsetPos::Noun}), Error);
}

TEST(HypernymPaths, MatchesBruteForceOnEverySynset) {
  const auto& db = toy_wordnet();
  for (const auto& [id, synset] : db.synsets()) {
    std::set<std::vector<std::string>> got;
    for (const auto& path : hypernym_paths(db, id)) {
      std::vector<std::string> keys;
      for (const auto& s : path) keys.push_back(s.str());
      got.insert(keys);
    }
    EXPECT_EQ(got, brute_force_paths(id.str())) << id.str();
  }
}

TEST(HypernymIndex, SummariesAgreeWithEnumeration) {
  const auto& db = toy_wordnet();
  const HypernymIndex index(db);
  for (const auto& [id, synset] : db.synsets()) {
    const auto paths = hypernym_paths(db, id);
    double total = 0;
    std::size_t longest = 0;
    SynsetId root;
    for (const auto& p : paths) {
      total += static_cast<double>(p.size());
      if (p.size() > longest || (p.size() == longest && p.back() > root)) {
        longest = p.size();
        root = p.back();
      }
    }
    const auto& s = index.summary(id);
    EXPECT_EQ(s.path_count, static_cast<double>(paths.size())) << id.str();
    EXPECT_NEAR(s.mean_length, total / static_cast<double>(paths.size()), 1e-12) << id.str();
    EXPECT_EQ(s.longest, longest) << id.str();
    EXPECT_EQ(s.longest_root, root) << id.str();
  }
}

TEST(HypernymIndex, RootScaleIsDeepestRepresentative) {
  const HypernymIndex index(toy_wordnet());
  // myocardium: heart organ object physical_entity entity.
  EXPECT_EQ(index.root_scale(noun("entity")), 6u);
  EXPECT_EQ(index.root_scale(verb("act")), 4u);  // drug > administer > give > act
  EXPECT_EQ(index.root_scale(verb("run")), 1u);
  EXPECT_EQ(index.root_scale(noun("heart")), 0u);
}

}  // namespace
}  // namespace scigis
