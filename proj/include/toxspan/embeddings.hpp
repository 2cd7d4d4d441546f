#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "toxspan/tokenizer.hpp"

namespace toxspan {

using EmbeddingMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Pretrained word vectors plus two reserved rows: UNK (mean of all loaded
// vectors) and PAD (zeros). Immutable once built.
class EmbeddingTable {
 public:
  // `vectors` holds one row per word, in the same order as `words`.
  // Duplicate words keep their first row.
  EmbeddingTable(std::vector<std::string> words, const EmbeddingMatrix& vectors);

  int dim() const { return static_cast<int>(matrix_.cols()); }
  std::size_t vocab_size() const { return words_.size(); }
  std::size_t rows() const { return static_cast<std::size_t>(matrix_.rows()); }
  int unk_index() const { return static_cast<int>(words_.size()); }
  int pad_index() const { return static_cast<int>(words_.size()) + 1; }

  std::optional<int> find(std::string_view word) const;
  int lookup(std::string_view word) const;  // unk_index() when absent

  const EmbeddingMatrix& matrix() const { return matrix_; }
  const std::vector<std::string>& words() const { return words_; }

  // FNV-1a over the dimension and the word list, in row order.
  std::uint64_t vocab_hash() const { return vocab_hash_; }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::vector<std::string> words_;
  std::unordered_map<std::string, int, StringHash, std::equal_to<>> vocab_;
  EmbeddingMatrix matrix_;
  std::uint64_t vocab_hash_ = 0;
};

// Reads the `word v1 ... vd` text format. With no expected dimension the
// first line decides it.
EmbeddingTable load_embeddings(std::istream& in, std::optional<int> expected_dim = std::nullopt);
EmbeddingTable load_embeddings_file(const std::string& path,
                                    std::optional<int> expected_dim = std::nullopt);

inline constexpr std::size_t kDefaultMaxLen = 128;

struct EncodedPost {
  std::vector<int> indices;          // max_len row indexes
  std::vector<std::uint8_t> mask;    // 1 for real tokens
  std::size_t true_len = 0;          // token count before truncation

  // Number of unpadded positions.
  std::size_t effective_len() const {
    return true_len < indices.size() ? true_len : indices.size();
  }
};

EncodedPost encode_post(const TokenSeq& tokens, const EmbeddingTable& table,
                        std::size_t max_len = kDefaultMaxLen);

// Mean of the embedding rows over unpadded positions; zeros for an empty post.
Eigen::VectorXd mean_pool(const EncodedPost& post, const EmbeddingTable& table);

}  // namespace toxspan
