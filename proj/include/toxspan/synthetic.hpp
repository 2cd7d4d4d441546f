#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toxspan/dataio.hpp"
#include "toxspan/embeddings.hpp"

namespace toxspan {

// Lexicon task: toxic words drawn from a small lexicon are planted inside
// random carrier sentences; gold spans cover exactly the planted words (and
// the space between two adjacent ones).
struct SyntheticConfig {
  std::uint64_t seed = 7;
  std::size_t train_posts = 500;
  std::size_t dev_posts = 100;
  std::size_t lexicon_size = 20;
  std::size_t carrier_words = 300;
  std::size_t oov_carriers = 30;  // carriers left out of the embedding file
  int dim = 25;
  std::size_t min_words = 6;
  std::size_t max_words = 20;
};

struct SyntheticCorpus {
  std::vector<LabeledPost> train;
  std::vector<LabeledPost> dev;
  std::vector<std::string> lexicon;
  std::vector<std::string> embedding_words;
  EmbeddingMatrix embedding_vectors;
};

SyntheticCorpus generate_lexicon_corpus(const SyntheticConfig& config = {});

// Standard `word v1 ... vd` text format.
void write_embeddings_text(const std::vector<std::string>& words, const EmbeddingMatrix& vectors,
                           std::ostream& out);

}  // namespace toxspan
