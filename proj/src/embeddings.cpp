#include "toxspan/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "toxspan/dataio.hpp"
#include "toxspan/hash.hpp"

namespace toxspan {

EmbeddingTable::EmbeddingTable(std::vector<std::string> words, const EmbeddingMatrix& vectors) {
  if (words.empty()) throw DataError("embedding table needs at least one word");
  if (static_cast<std::size_t>(vectors.rows()) != words.size()) {
    throw DataError("embedding table: " + std::to_string(words.size()) + " words but " +
                    std::to_string(vectors.rows()) + " vectors");
  }
  if (vectors.cols() < 1) throw DataError("embedding table: dimension must be positive");

  std::vector<Eigen::Index> keep;
  keep.reserve(words.size());
  words_.reserve(words.size());
  vocab_.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (vocab_.emplace(words[i], static_cast<int>(words_.size())).second) {
      words_.push_back(std::move(words[i]));
      keep.push_back(static_cast<Eigen::Index>(i));
    }
  }

  const auto n = static_cast<Eigen::Index>(words_.size());
  matrix_.resize(n + 2, vectors.cols());
  for (Eigen::Index r = 0; r < n; ++r) matrix_.row(r) = vectors.row(keep[r]);
  if (!matrix_.topRows(n).allFinite()) throw DataError("embedding table has non-finite values");
  matrix_.row(n) = matrix_.topRows(n).colwise().mean();
  matrix_.row(n + 1).setZero();

  std::uint64_t h = fnv1a64("dim=" + std::to_string(vectors.cols()) + "\n");
  for (const auto& w : words_) {
    h = fnv1a64(w, h);
    h = fnv1a64("\n", h);
  }
  vocab_hash_ = h;
}

std::optional<int> EmbeddingTable::find(std::string_view word) const {
  auto it = vocab_.find(word);
  if (it == vocab_.end()) return std::nullopt;
  return it->second;
}

int EmbeddingTable::lookup(std::string_view word) const {
  return find(word).value_or(unk_index());
}

EmbeddingTable load_embeddings(std::istream& in, std::optional<int> expected_dim) {
  std::vector<std::string> words;
  std::vector<double> values;
  int dim = expected_dim.value_or(0);
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto sp = line.find(' ');
    if (sp == std::string::npos || sp == 0) {
      throw DataError("embedding line " + std::to_string(lineno) + ": expected 'word v1 ... vd'");
    }
    row.clear();
    const char* p = line.data() + sp;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (next < end && *next != ' ')) {
        throw DataError("embedding line " + std::to_string(lineno) + ": non-numeric value");
      }
      if (!std::isfinite(v)) {
        throw DataError("embedding line " + std::to_string(lineno) + ": non-finite value");
      }
      row.push_back(v);
      p = next;
    }
    if (dim == 0) dim = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != dim || dim == 0) {
      throw DataError("embedding line " + std::to_string(lineno) + ": expected " +
                      std::to_string(dim) + " values, found " + std::to_string(row.size()));
    }
    words.emplace_back(line, 0, sp);
    values.insert(values.end(), row.begin(), row.end());
  }
  if (words.empty()) throw DataError("embedding file is empty");

  EmbeddingMatrix m = Eigen::Map<const EmbeddingMatrix>(
      values.data(), static_cast<Eigen::Index>(words.size()), dim);
  return EmbeddingTable(std::move(words), m);
}

EmbeddingTable load_embeddings_file(const std::string& path, std::optional<int> expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file " + path);
  try {
    return load_embeddings(in, expected_dim);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

EncodedPost encode_post(const TokenSeq& tokens, const EmbeddingTable& table, std::size_t max_len) {
  if (max_len == 0) throw std::invalid_argument("max_len must be at least 1");
  EncodedPost post;
  post.true_len = tokens.size();
  post.indices.assign(max_len, table.pad_index());
  post.mask.assign(max_len, 0);
  const std::size_t n = post.effective_len();
  for (std::size_t i = 0; i < n; ++i) {
    post.indices[i] = table.lookup(tokens[i].lower);
    post.mask[i] = 1;
  }
  return post;
}

Eigen::VectorXd mean_pool(const EncodedPost& post, const EmbeddingTable& table) {
  Eigen::VectorXd pooled = Eigen::VectorXd::Zero(table.dim());
  const std::size_t n = post.effective_len();
  if (n == 0) return pooled;
  for (std::size_t i = 0; i < n; ++i) pooled += table.matrix().row(post.indices[i]).transpose();
  return pooled / static_cast<double>(n);
}

}  // namespace toxspan
