#include <sstream>

#include <gtest/gtest.h>

#include "scigis/corpus.hpp"
#include "scigis/error.hpp"
#include "scigis/support.hpp"
#include "test_support.hpp"

namespace scigis {
namespace {

using testing::fixture;
using testing::TempDir;

std::size_t matches(const ConnectivePatterns& p, const std::string& text) {
  std::size_t n = 0;
  for (const auto& s : segment_and_tokenize(text).sentences) n += p.count_matches(s.tokens);
  return n;
}

TEST(RatingLexicon, ColumnMappingAndOptionalHeader) {
  std::istringstream plain("heart\t5.8\t6.1\n");
  const auto lex = RatingLexicon::parse(plain);
  ASSERT_NE(lex.find("heart"), nullptr);
  EXPECT_EQ(lex.find("heart")->concreteness, 5.8);
  EXPECT_EQ(lex.find("heart")->imageability, 6.1);
  EXPECT_EQ(lex.find("Heart"), lex.find("heart"));

  std::istringstream with_header("word\tconc\timag\nHeart\t5.8\t6.1\n");
  EXPECT_EQ(RatingLexicon::parse(with_header).size(), 1u);
}

TEST(RatingLexicon, MalformedLineNamesLine) {
  std::istringstream in("heart\t5.8\t6.1\nlung\tx\t2\n");
  try {
    RatingLexicon::parse(in, "lex.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Connectives, PhrasesMatchAsUnits) {
  const auto p = ConnectivePatterns::parse("because\nso that\n");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(matches(p, "We left so that we could rest."), 1u);
  EXPECT_EQ(matches(p, "So that was it."), 1u);
  EXPECT_EQ(matches(p, "He fell because it rained."), 1u);
  EXPECT_EQ(matches(p, "Becauseway is a street."), 0u);
}

TEST(Connectives, LongestFirstWithoutOverlap) {
  const auto p = ConnectivePatterns::parse("# comment\nbecause\nbecause of\nof\n");
  // "because of" consumes both words, so "of" is not counted again.
  EXPECT_EQ(matches(p, "It failed because of rain."), 1u);
  EXPECT_EQ(matches(p, "Because because."), 2u);
}

TEST(Connectives, DefaultListIsShipped) {
  const auto& p = ConnectivePatterns::defaults();
  EXPECT_GE(p.size(), 30u);
  EXPECT_EQ(matches(p, "He fell because it rained."), 1u);
  EXPECT_EQ(matches(p, "As a result, the trial stopped."), 1u);
}

TEST(SupportFiles, LoadsEachPresentFile) {
  TempDir dir;
  const auto conn = dir.write("conn.txt", "because\nso that\n");
  const auto side = dir.write("side.jsonl", R"({"doc_id": "d", "sent": 0, "vec": [1, 2]})" "\n");
  const auto loaded = load_support_files(fixture("ratings.tsv"), conn, side);
  ASSERT_TRUE(loaded.ratings);
  ASSERT_TRUE(loaded.connectives);
  ASSERT_TRUE(loaded.sidecar);
  EXPECT_EQ(loaded.connectives->size(), 2u);
  EXPECT_EQ(loaded.sidecar->dim(), 2u);
  const auto none = load_support_files(std::nullopt, std::nullopt, std::nullopt);
  EXPECT_FALSE(none.ratings || none.connectives || none.sidecar);
}

}  // namespace
}  // namespace scigis
