#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "toxspan/dataio.hpp"

namespace toxspan {
namespace {

std::vector<LabeledPost> parse(const std::string& csv, ParseOptions opts = {},
                               std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(csv);
  return parse_dataset(in, opts, warnings);
}

std::string error_of(const std::string& csv, ParseOptions opts = {}) {
  try {
    parse(csv, opts);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(CharSpanSet, SortedAndDeduplicated) {
  const CharSpanSet s({5, 1, 3, 1, 5, -2});
  EXPECT_EQ(s.indexes(), (std::vector<CharIndex>{-2, 1, 3, 5}));
  EXPECT_TRUE(CharSpanSet{}.empty());
}

TEST(CharSpanSet, RandomListsNormalize) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CharIndex> raw(rng() % 20);
    for (auto& v : raw) v = static_cast<CharIndex>(rng() % 30) - 5;
    const CharSpanSet s(raw);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    for (CharIndex v : raw) EXPECT_TRUE(s.contains(v));
  }
}

TEST(CharSpanSet, SetAlgebra) {
  const CharSpanSet a = CharSpanSet::range(0, 5);
  const CharSpanSet b({-1, 0, 1, 2, 3});
  EXPECT_EQ(a.intersection_size(b), 4u);
  EXPECT_EQ(a.set_intersection(b), CharSpanSet({0, 1, 2, 3}));
  EXPECT_EQ(a.set_union(b), CharSpanSet::range(-1, 5));
  EXPECT_EQ(a.set_difference(b), CharSpanSet({4}));
  EXPECT_TRUE(CharSpanSet({1, 2}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_TRUE(a.intersects(4, 9));
  EXPECT_FALSE(a.intersects(5, 9));
}

TEST(CharLength, CountsCodePoints) {
  EXPECT_EQ(char_length(""), 0u);
  EXPECT_EQ(char_length("abc"), 3u);
  EXPECT_EQ(char_length("caf\xC3\xA9"), 4u);
  EXPECT_EQ(char_length("\xF0\x9F\x98\x80!"), 2u);
}

TEST(SpanLiteral, ParsesGrammar) {
  EXPECT_EQ(parse_span_literal("[]"), CharSpanSet{});
  EXPECT_EQ(parse_span_literal(" [ ] "), CharSpanSet{});
  EXPECT_EQ(parse_span_literal("[7, 8, 9]"), CharSpanSet({7, 8, 9}));
  EXPECT_EQ(parse_span_literal("[9,8 ,7]"), CharSpanSet({7, 8, 9}));
  EXPECT_EQ(parse_span_literal("[-1, 0]"), CharSpanSet({-1, 0}));
}

TEST(SpanLiteral, RejectsMalformed) {
  for (const char* bad : {"", "7, 8", "[7, 8", "[7,, 8]", "[7, x]", "[1.5]", "[1] 2", "[,]",
                          "(1, 2)", "[1 2]", "[99999999999999999999999]"}) {
    EXPECT_THROW(parse_span_literal(bad), DataError) << bad;
  }
}

TEST(SpanLiteral, FormatMatchesSubmissionStyle) {
  EXPECT_EQ(format_span_literal(CharSpanSet::range(66, 71)), "[66, 67, 68, 69, 70]");
  EXPECT_EQ(format_span_literal({}), "[]");
}

TEST(ReadCsv, QuotedFieldsWithCommasQuotesAndNewlines) {
  std::istringstream in("spans,text\r\n\"[1]\",\"a, \"\"b\"\"\nc\"\r\n[],plain\n");
  const auto rows = read_csv(in);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][1], "a, \"b\"\nc");
  EXPECT_EQ(rows[2][0], "[]");
  EXPECT_EQ(rows[2][1], "plain");
}

TEST(ReadCsv, SkipsBlankLinesAndKeepsEmptyFields) {
  std::istringstream in("a,b\n\n1,\n,2\n\n");
  const auto rows = read_csv(in);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", ""}));
  EXPECT_EQ(rows[2], (std::vector<std::string>{"", "2"}));
}

TEST(ParseDataset, SamplePosts) {
  const std::string csv =
      "spans,text\n"
      "\"[7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17]\",\"" + fixture::kSamplePost1 + "\"\n"
      "\"[45, 46, 47, 48, 49, 50, 51, 52, 53, 31, 32, 33, 34, 35, 36, 37, 38, 39]\",\"" +
      fixture::kSamplePost2 + "\"\n"
      "[],\"" + fixture::kSamplePost5 + "\"\n";
  const auto posts = parse(csv);
  ASSERT_EQ(posts.size(), 3u);
  EXPECT_EQ(posts[0].id, 0u);
  EXPECT_EQ(posts[0].gold, CharSpanSet::range(7, 18));
  EXPECT_EQ(posts[0].text, fixture::kSamplePost1);
  EXPECT_EQ(posts[1].gold, CharSpanSet::range(31, 40).set_union(CharSpanSet::range(45, 54)));
  EXPECT_TRUE(std::is_sorted(posts[1].gold.begin(), posts[1].gold.end()));
  EXPECT_EQ(posts[2].id, 2u);
  EXPECT_TRUE(posts[2].gold.empty());
}

TEST(ParseDataset, ColumnOrderFollowsHeader) {
  const auto posts = parse("text,spans\nhello there,[0]\n");
  ASSERT_EQ(posts.size(), 1u);
  EXPECT_EQ(posts[0].text, "hello there");
  EXPECT_EQ(posts[0].gold, CharSpanSet({0}));
}

TEST(ParseDataset, TextOnlyForBlindTest) {
  ParseOptions opts;
  opts.has_gold = false;
  const auto posts = parse("text\nfirst\n\"second, with comma\"\n", opts);
  ASSERT_EQ(posts.size(), 2u);
  EXPECT_EQ(posts[1].text, "second, with comma");
  EXPECT_TRUE(posts[1].gold.empty());
  EXPECT_NE(error_of("text\nfirst\n"), "");
}

TEST(ParseDataset, NonAsciiIndexesAreCharacters) {
  // "é" is two bytes but one character.
  const auto posts = parse("spans,text\n\"[4, 5, 6]\",\"caf\xC3\xA9 bad\"\n");
  EXPECT_EQ(posts[0].gold, CharSpanSet({4, 5, 6}));
  EXPECT_NE(error_of("spans,text\n\"[8]\",\"caf\xC3\xA9 bad\"\n"), "");
}

TEST(ParseDataset, ErrorsNameTheRecord) {
  // The header is record 0, so the first post is record 1.
  EXPECT_NE(error_of("spans,text\n[],ok\n\"[1, x]\",bad\n").find("record 2 (line 3)"),
            std::string::npos);
  EXPECT_NE(error_of("spans,text\n[],ok\n[],a,b\n").find("record 2 (line 3)"), std::string::npos);
  EXPECT_NE(error_of("spans,text\n[],ok\n\"[1]\",\"open\n").find("record 2 (line 3)"),
            std::string::npos);
  EXPECT_NE(error_of("spans,text\n[99],short\n").find("record 1"), std::string::npos);
  EXPECT_NE(error_of("spans,text\n[-1],short\n").find("record 1"), std::string::npos);
  EXPECT_NE(error_of("spans,text\n[],\n").find("record 1"), std::string::npos);
  EXPECT_NE(error_of(""), "");
  EXPECT_NE(error_of("spans,body\n[],x\n"), "");
}

TEST(ParseDataset, LenientDropsOutOfRangeWithWarning) {
  ParseOptions opts;
  opts.lenient = true;
  std::vector<std::string> warnings;
  const auto posts = parse("spans,text\n\"[-1, 0, 4, 5, 99]\",hello\n", opts, &warnings);
  EXPECT_EQ(posts[0].gold, CharSpanSet({0, 4}));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("record 1"), std::string::npos);
}

TEST(ParseDataset, WriteThenParseRoundTrips) {
  std::mt19937_64 rng(2);
  std::vector<LabeledPost> posts =
      fixture::random_posts(rng, 30, fixture::tiny_vocab(), {"idiot", "stupid"});
  posts[3].text = "quote \" comma , newline\nend";
  posts[3].gold = CharSpanSet({0, 1});
  std::ostringstream out;
  write_dataset(posts, out);
  const auto back = parse(out.str());
  ASSERT_EQ(back.size(), posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    EXPECT_EQ(back[i].id, i);
    EXPECT_EQ(back[i].text, posts[i].text);
    EXPECT_EQ(back[i].gold, posts[i].gold);
  }
}

TEST(Predictions, ExactLineFormat) {
  std::ostringstream out;
  write_predictions({{0, CharSpanSet::range(66, 71)}, {1, {}}}, out);
  EXPECT_EQ(out.str(), "0\t[66, 67, 68, 69, 70]\n1\t[]\n");
}

TEST(Predictions, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PostPrediction> preds(rng() % 10);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      std::vector<CharIndex> idx(rng() % 15);
      for (auto& v : idx) v = static_cast<CharIndex>(rng() % 500) - 2;
      preds[i] = {i, CharSpanSet(idx)};
    }
    std::ostringstream out;
    write_predictions(preds, out);
    std::istringstream in(out.str());
    EXPECT_EQ(parse_predictions(in), preds);
  }
}

TEST(Predictions, MalformedLinesRejected) {
  for (const char* bad : {"0 [1]\n", "x\t[1]\n", "0\t[1\n", "-1\t[]\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_predictions(in), DataError) << bad;
  }
}

TEST(Scores, ParseAndValidate) {
  std::istringstream ok("0\t0.1\n5\t0.97\n");
  const auto scores = parse_scores(ok);
  EXPECT_EQ(scores.at(5), 0.97);
  for (const char* bad : {"0\t1.5\n", "0\t-0.1\n", "0\tabc\n", "0 0.5\n", "0\t0.5\n0\t0.6\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_scores(in), DataError) << bad;
  }
}

TEST(LoadDataset, MissingFileIsDataError) {
  EXPECT_THROW(load_dataset("/nonexistent/path.csv"), DataError);
  EXPECT_THROW(load_predictions("/nonexistent/pred.tsv"), DataError);
}

}  // namespace
}  // namespace toxspan
