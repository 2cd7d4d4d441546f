#include "toxspan/synthetic.hpp"

#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "toxspan/random.hpp"

namespace toxspan {

namespace {

constexpr const char* kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r",
                                   "s", "t", "v", "z", "br", "st", "tr", "gl", "sn", "pl"};
constexpr const char* kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou", "ee"};

std::string pseudo_word(Rng& rng) {
  std::string w;
  const auto syllables = 1 + rng.below(3);
  for (std::uint64_t s = 0; s < syllables; ++s) {
    w += kOnsets[rng.below(std::size(kOnsets))];
    w += kVowels[rng.below(std::size(kVowels))];
  }
  if (rng.below(2) == 0) w += kOnsets[rng.below(10)];
  return w;
}

std::vector<std::string> unique_words(Rng& rng, std::size_t n, std::set<std::string>& taken) {
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w = pseudo_word(rng);
    if (taken.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::string capitalized(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 32);
  return w;
}

LabeledPost make_post(Rng& rng, const SyntheticConfig& cfg, const std::vector<std::string>& carriers,
                      const std::vector<std::string>& lexicon) {
  const auto n_words =
      cfg.min_words + rng.below(cfg.max_words - cfg.min_words + 1);
  const auto roll = rng.below(100);
  const std::size_t n_toxic = roll < 25 ? 0 : roll < 75 ? 1 : roll < 95 ? 2 : 3;

  // Word slots; true marks a toxic word.
  std::vector<std::pair<std::string, bool>> words;
  for (std::size_t i = 0; i < n_words; ++i) words.emplace_back(carriers[rng.below(carriers.size())], false);
  std::size_t placed = 0;
  while (placed < n_toxic) {
    const auto pos = rng.below(words.size() + 1);
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(pos),
                 {lexicon[rng.below(lexicon.size())], true});
    ++placed;
    // Sometimes a two-word toxic phrase.
    if (placed < n_toxic && rng.below(3) == 0) {
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                   {lexicon[rng.below(lexicon.size())], true});
      ++placed;
    }
  }

  LabeledPost post;
  std::vector<CharIndex> gold;
  std::string& text = post.text;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i].first;
    if (i == 0 || (words[i].second && rng.below(5) == 0)) w = capitalized(w);
    if (i > 0) {
      if (words[i].second && words[i - 1].second) gold.push_back(static_cast<CharIndex>(text.size()));
      text += ' ';
    }
    const auto start = static_cast<CharIndex>(text.size());
    text += w;
    if (words[i].second) {
      for (CharIndex c = start; c < static_cast<CharIndex>(text.size()); ++c) gold.push_back(c);
    }
    if (i + 1 < words.size() && rng.below(8) == 0 && !(words[i].second && words[i + 1].second)) {
      text += ',';
    }
  }
  constexpr const char* kEnds[] = {".", "!", "?", "!!", "..."};
  text += kEnds[rng.below(std::size(kEnds))];
  post.gold = CharSpanSet(std::move(gold));
  return post;
}

}  // namespace

SyntheticCorpus generate_lexicon_corpus(const SyntheticConfig& cfg) {
  if (cfg.lexicon_size == 0 || cfg.carrier_words <= cfg.oov_carriers || cfg.dim < 1 ||
      cfg.min_words < 1 || cfg.max_words < cfg.min_words) {
    throw std::invalid_argument("invalid synthetic corpus configuration");
  }
  Rng rng(cfg.seed);
  std::set<std::string> taken;
  SyntheticCorpus corpus;
  corpus.lexicon = unique_words(rng, cfg.lexicon_size, taken);
  const std::vector<std::string> carriers = unique_words(rng, cfg.carrier_words, taken);

  corpus.embedding_words = corpus.lexicon;
  corpus.embedding_words.insert(corpus.embedding_words.end(), carriers.begin(),
                                carriers.end() - static_cast<std::ptrdiff_t>(cfg.oov_carriers));
  // Lexicon vectors cluster around a shared direction, as abusive words do in
  // pretrained embeddings; carriers are spread uniformly.
  corpus.embedding_vectors.resize(static_cast<Eigen::Index>(corpus.embedding_words.size()), cfg.dim);
  Eigen::VectorXd toxic_direction(cfg.dim);
  for (Eigen::Index c = 0; c < cfg.dim; ++c) toxic_direction(c) = rng.uniform(-1.0, 1.0);
  const auto n_lexicon = static_cast<Eigen::Index>(corpus.lexicon.size());
  for (Eigen::Index r = 0; r < corpus.embedding_vectors.rows(); ++r) {
    for (Eigen::Index c = 0; c < cfg.dim; ++c) {
      corpus.embedding_vectors(r, c) =
          r < n_lexicon ? toxic_direction(c) + rng.uniform(-0.5, 0.5) : rng.uniform(-1.0, 1.0);
    }
  }

  for (std::size_t i = 0; i < cfg.train_posts + cfg.dev_posts; ++i) {
    LabeledPost p = make_post(rng, cfg, carriers, corpus.lexicon);
    auto& target = i < cfg.train_posts ? corpus.train : corpus.dev;
    p.id = target.size();
    target.push_back(std::move(p));
  }
  return corpus;
}

void write_embeddings_text(const std::vector<std::string>& words, const EmbeddingMatrix& vectors,
                           std::ostream& out) {
  char buf[32];
  for (std::size_t i = 0; i < words.size(); ++i) {
    out << words[i];
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
      std::snprintf(buf, sizeof buf, " %.6f", vectors(static_cast<Eigen::Index>(i), c));
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace toxspan
