#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "toxspan/embeddings.hpp"
#include "toxspan/model.hpp"
#include "toxspan/train.hpp"

namespace toxspan {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  ModelParams params;
  TrainConfig config;
  std::uint64_t vocab_hash = 0;
};

// Layout: a magic line, one line of JSON describing dimensions, vocabulary
// hash, training config and the tensor list, then every tensor's values as
// little-endian float64 in the listed order.
void save_checkpoint(const Checkpoint& ckpt, std::ostream& out);
Checkpoint load_checkpoint(std::istream& in);

// Writes through a temporary file and renames it into place.
void save_checkpoint_file(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint_file(const std::string& path);

// Throws CheckpointError if the checkpoint was trained against a different
// vocabulary or embedding width.
void check_compatible(const Checkpoint& ckpt, const EmbeddingTable& table);

std::string config_to_json(const TrainConfig& config);
TrainConfig config_from_json(const std::string& json);

// Writes `contents` to `path` via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace toxspan
