#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "toxspan/model.hpp"
#include "toxspan/train.hpp"

namespace toxspan {
namespace {

struct GradCase {
  std::vector<TrainExample> examples;
  std::vector<const TrainExample*> batch;
};

GradCase make_case(const EmbeddingTable& table, std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  GradCase c;
  c.examples = make_examples(fixture::random_posts(rng, n, fixture::tiny_vocab(), {"idiot", "stupid"}),
                             table);
  for (const auto& e : c.examples) c.batch.push_back(&e);
  return c;
}

void expect_gradients_match(ModelParams& p, const EmbeddingTable& table,
                            const std::vector<const TrainExample*>& batch) {
  ModelParams grads = zeros_like(p);
  batch_loss(batch, p, table, &grads);
  auto views = tensors(p);
  const auto gviews = tensors(grads);
  std::vector<double*> coords;
  std::vector<double> analytic;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < views.size(); ++v) {
    for (std::size_t i = 0; i < views[v].data.size(); ++i) {
      coords.push_back(&views[v].data[i]);
      analytic.push_back(gviews[v].data[i]);
      names.push_back(views[v].name + "[" + std::to_string(i) + "]");
    }
  }
  const auto numeric =
      oracle::central_differences(coords, [&] { return batch_loss(batch, p, table); });
  double worst = 0.0;
  std::string worst_name;
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    const double err = oracle::relative_error(analytic[k], numeric[k]);
    if (err > worst) {
      worst = err;
      worst_name = names[k];
    }
  }
  EXPECT_LT(worst, 1e-4) << "worst coordinate " << worst_name;
}

TEST(ModelGradient, FullStackMatchesCentralDifferences) {
  const auto table = fixture::tiny_table(1, 5, fixture::tiny_vocab());
  auto c = make_case(table, 2, 3);
  ModelParams p = init_params({5, 8}, 3);
  // Nonzero CRF scores exercise every term of the transition gradient.
  std::mt19937_64 rng(4);
  p.crf.trans = oracle::random_matrix(rng, 2, 2, -1, 1);
  p.crf.start = oracle::random_matrix(rng, 2, 1, -1, 1);
  p.crf.stop = oracle::random_matrix(rng, 2, 1, -1, 1);
  expect_gradients_match(p, table, c.batch);
}

TEST(ModelGradient, FineTunedEmbeddingsMatchCentralDifferences) {
  const auto table = fixture::tiny_table(5, 4, fixture::tiny_vocab());
  auto c = make_case(table, 6, 3);
  ModelParams p = init_params({4, 3}, 7, &table);
  ASSERT_TRUE(p.embedding.has_value());
  expect_gradients_match(p, table, c.batch);
}

TEST(ModelPadding, PadRowDoesNotAffectLoss) {
  const auto table = fixture::tiny_table(8, 4, fixture::tiny_vocab());
  auto c = make_case(table, 9, 4);
  ModelParams p = init_params({4, 3}, 10, &table);
  const double before = batch_loss(c.batch, p, table);
  p.embedding->row(table.pad_index()).setConstant(123.0);
  EXPECT_EQ(batch_loss(c.batch, p, table), before);

  ModelParams grads = zeros_like(p);
  batch_loss(c.batch, p, table, &grads);
  EXPECT_TRUE(grads.embedding->row(table.pad_index()).isZero(0.0));
}

TEST(ModelPadding, PaddedPostMatchesUnpaddedPrefix) {
  const auto table = fixture::tiny_table(11, 4, fixture::tiny_vocab());
  const ModelParams p = init_params({4, 5}, 12);
  const auto tokens = tokenize("you are a total idiot");
  const auto short_post = encode_post(tokens, table, 5);
  const auto long_post = encode_post(tokens, table, 40);
  const LabelSeq labels = {0, 0, 0, 1, 1};
  EXPECT_EQ(example_loss(short_post, labels, p, table), example_loss(long_post, labels, p, table));
}

TEST(ModelInit, ShapesAndBiases) {
  const ModelParams p = init_params({6, 4}, 1);
  EXPECT_EQ(p.fwd.w_in.rows(), 16);
  EXPECT_EQ(p.fwd.w_in.cols(), 6);
  EXPECT_EQ(p.bwd.w_rec.rows(), 16);
  EXPECT_EQ(p.bwd.w_rec.cols(), 4);
  EXPECT_EQ(p.emit.w_out.rows(), 2);
  EXPECT_EQ(p.emit.w_out.cols(), 8);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(p.fwd.b(k), 0.0);
    EXPECT_EQ(p.fwd.b(4 + k), 1.0);
    EXPECT_EQ(p.bwd.b(4 + k), 1.0);
    EXPECT_EQ(p.fwd.b(8 + k), 0.0);
  }
  EXPECT_TRUE(p.crf.trans.isZero(0.0));
  const double limit = std::sqrt(6.0 / (16 + 6));
  EXPECT_LE(p.fwd.w_in.cwiseAbs().maxCoeff(), limit);
  EXPECT_GT(p.fwd.w_in.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(parameter_count(p), 2 * (16 * 6 + 16 * 4 + 16) + 2 * 8 + 2 + 4 + 2 + 2);
}

TEST(ModelInit, SeedDeterminesParameters) {
  const ModelParams a = init_params({5, 3}, 42);
  const ModelParams b = init_params({5, 3}, 42);
  const ModelParams c = init_params({5, 3}, 43);
  EXPECT_EQ(a.fwd.w_in, b.fwd.w_in);
  EXPECT_EQ(a.emit.w_out, b.emit.w_out);
  EXPECT_NE(a.fwd.w_in, c.fwd.w_in);
}

TEST(ModelPredict, HandBuiltTaggerFlagsLoser) {
  const auto table = fixture::loser_table();
  const ModelParams p = fixture::single_word_tagger(3, 2);
  EXPECT_EQ(predict(p, fixture::kErrorPost1, table), CharSpanSet::range(66, 71));
  EXPECT_EQ(predict(p, fixture::kErrorPost1, table),
            CharSpanSet({66, 67, 68, 69, 70}));
}

TEST(ModelPredict, EmptyTextGivesEmptySet) {
  const auto table = fixture::loser_table();
  const ModelParams p = fixture::single_word_tagger(3, 2);
  EXPECT_TRUE(predict(p, "", table).empty());
  EXPECT_TRUE(predict(p, "   \n ", table).empty());
}

TEST(ModelPredict, AllNonToxicDecodeIsEmpty) {
  const auto table = fixture::loser_table();
  const ModelParams p = fixture::single_word_tagger(3, 2);
  EXPECT_TRUE(predict(p, "the world is nice", table).empty());
}

TEST(ModelPredict, TruncatedTokensStayNonToxic) {
  const auto table = fixture::loser_table();
  const ModelParams p = fixture::single_word_tagger(3, 2);
  // "loser" is the fourth token; with max_len 3 it is cut off.
  EXPECT_TRUE(predict(p, "the world is loser", table, 3).empty());
  EXPECT_EQ(predict(p, "the world is loser", table, 4), CharSpanSet::range(13, 18));
}

TEST(ModelEmissions, EmptyPostRejected) {
  const auto table = fixture::loser_table();
  const ModelParams p = fixture::single_word_tagger(3, 2);
  const auto post = encode_post(tokenize(""), table, 8);
  EXPECT_THROW(bilstm_emissions(post, p, table), std::invalid_argument);
}

}  // namespace
}  // namespace toxspan
