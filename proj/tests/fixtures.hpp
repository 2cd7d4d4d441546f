#pragma once

// Small shared fixtures: a tiny embedding table, random posts over its
// vocabulary, and a hand-wired tagger that fires on one word.

#include <algorithm>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "toxspan/dataio.hpp"
#include "toxspan/embeddings.hpp"
#include "toxspan/model.hpp"
#include "toxspan/train.hpp"

namespace toxspan {
inline void PrintTo(const CharSpanSet& s, std::ostream* os) { *os << format_span_literal(s); }
}  // namespace toxspan

namespace fixture {

inline const std::string kSamplePost1 =
    "What a knucklehead. How can anyone not know this would be offensive??";
inline const std::string kSamplePost2 =
    "I only use the word haole when stupidity and arrogance is involved and not all the time.  "
    "Excluding the POTUS of course.";
inline const std::string kSamplePost3 =
    "Such garbage logic by republicans which will backfire and rush america into the great "
    "depression II";
inline const std::string kSamplePost5 =
    "Exposing hypocrites like Trump and Pence is therapeutic for you? Good job!";

inline const std::string kErrorPost1 =
    "Indeed, people the world over, all know that President Trump is a loser!";
inline const std::string kErrorPost2 =
    "Idiot \"miner\" in the photo isn't even wearing a dust mask. MSHA needs to inspect this "
    "operation for more worker safety violations.";
inline const std::string kErrorPost3 =
    "People who are anti-immigration are weak, lying, racist whiners.";
inline const std::string kErrorPost4 =
    "Uh-No, keep voting for failed Liberal idiocy that guarantees results ala Detroit, Chicago, "
    "etc.  You'll wish your body had only some crap rather than gangbanger gunfire.";
inline const std::string kErrorPost5 =
    "What is he going to do about those toxic mercury florescent bulbs Bush and Gore pushed on "
    "the stupid American public?";

inline toxspan::EmbeddingTable tiny_table(std::uint64_t seed, int dim,
                                          const std::vector<std::string>& words) {
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd m =
      oracle::random_matrix(rng, static_cast<Eigen::Index>(words.size()), dim, -1, 1);
  return toxspan::EmbeddingTable(words, toxspan::EmbeddingMatrix(m));
}

inline std::vector<std::string> tiny_vocab() {
  return {"you", "are", "a", "total", "idiot", "the", "cat", "sat", "on", "mat", "stupid", "."};
}

// Random posts drawn from `vocab` plus one out-of-vocabulary word; words
// listed in `toxic` are gold.
inline std::vector<toxspan::LabeledPost> random_posts(std::mt19937_64& rng, std::size_t n,
                                                      const std::vector<std::string>& vocab,
                                                      const std::vector<std::string>& toxic,
                                                      std::size_t min_words = 2,
                                                      std::size_t max_words = 7) {
  std::vector<std::string> pool = vocab;
  pool.push_back("zzyzx");
  std::vector<toxspan::LabeledPost> out;
  for (std::size_t i = 0; i < n; ++i) {
    toxspan::LabeledPost post;
    post.id = i;
    const std::size_t len = min_words + rng() % (max_words - min_words + 1);
    std::vector<toxspan::CharIndex> gold;
    for (std::size_t w = 0; w < len; ++w) {
      if (w > 0) post.text += ' ';
      const std::string& word = pool[rng() % pool.size()];
      const auto start = static_cast<toxspan::CharIndex>(post.text.size());
      post.text += word;
      if (std::find(toxic.begin(), toxic.end(), word) != toxic.end()) {
        for (std::size_t c = 0; c < word.size(); ++c) gold.push_back(start + c);
      }
    }
    post.gold = toxspan::CharSpanSet(gold);
    out.push_back(std::move(post));
  }
  return out;
}

// Vocabulary of the first error-analysis post. Only "loser" has a positive first
// coordinate; "nice" balances it so the UNK row stays at zero.
inline toxspan::EmbeddingTable loser_table() {
  std::vector<std::string> words = {"indeed", "people", "the", "world", "over", "all", "know",
                                    "that", "president", "trump", "is", "a", "loser", "!", ",",
                                    "nice"};
  toxspan::EmbeddingMatrix m =
      toxspan::EmbeddingMatrix::Zero(static_cast<Eigen::Index>(words.size()), 3);
  m(12, 0) = 1.0;
  m(15, 0) = -1.0;
  return toxspan::EmbeddingTable(words, m);
}

// A BiLSTM-CRF whose emissions favor "toxic" only for tokens whose first
// embedding coordinate is large. Recurrent weights are zero so each position
// sees only its own word.
inline toxspan::ModelParams single_word_tagger(int dim, int hidden) {
  toxspan::ModelParams p = toxspan::zero_params({dim, hidden});
  for (int k = 0; k < hidden; ++k) {
    p.fwd.b(k) = 6.0;                     // input gate open
    p.fwd.b(hidden + k) = -20.0;          // forget gate shut
    p.fwd.w_in(2 * hidden + k, 0) = 4.0;  // candidate follows coordinate 0
    p.fwd.b(3 * hidden + k) = 6.0;        // output gate open
  }
  p.emit.w_out(toxspan::kToxic, 0) = 10.0;
  p.emit.b_out(toxspan::kToxic) = -1.0;
  return p;
}

}  // namespace fixture
