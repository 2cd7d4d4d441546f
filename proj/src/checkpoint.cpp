#include "toxspan/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "toxspan/hash.hpp"

namespace toxspan {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint payload assumes a little-endian host");

constexpr const char* kMagic = "toxspan-checkpoint v1";

using nlohmann::json;

json config_json(const TrainConfig& c) {
  return json{{"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"seed", c.seed},
              {"learning_rate", c.learning_rate},
              {"hidden_size", c.hidden_size},
              {"gradient_clip_norm", c.gradient_clip_norm},
              {"early_stop_patience", c.early_stop_patience},
              {"dev_fraction", c.dev_fraction},
              {"max_len", c.max_len},
              {"fine_tune_embeddings", c.fine_tune_embeddings},
              {"bridge_gaps", c.bridge.bridge_gaps},
              {"max_gap", c.bridge.max_gap}};
}

TrainConfig config_from(const json& j) {
  TrainConfig c;
  c.epochs = j.at("epochs").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.hidden_size = j.at("hidden_size").get<int>();
  c.gradient_clip_norm = j.at("gradient_clip_norm").get<double>();
  c.early_stop_patience = j.at("early_stop_patience").get<int>();
  c.dev_fraction = j.at("dev_fraction").get<double>();
  c.max_len = j.at("max_len").get<std::size_t>();
  c.fine_tune_embeddings = j.at("fine_tune_embeddings").get<bool>();
  c.bridge.bridge_gaps = j.at("bridge_gaps").get<bool>();
  c.bridge.max_gap = j.at("max_gap").get<CharIndex>();
  return c;
}

}  // namespace

std::string config_to_json(const TrainConfig& config) { return config_json(config).dump(); }

TrainConfig config_from_json(const std::string& text) {
  try {
    return config_from(json::parse(text));
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("bad training config: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& ckpt, std::ostream& out) {
  const auto views = tensors(ckpt.params);
  json list = json::array();
  for (const auto& t : views) list.push_back({{"name", t.name}, {"rows", t.rows}, {"cols", t.cols}});
  const json header{{"input_size", ckpt.params.input_size()},
                    {"hidden_size", ckpt.params.hidden_size()},
                    {"num_labels", ckpt.params.num_labels()},
                    {"vocab_hash", hex64(ckpt.vocab_hash)},
                    {"config", config_json(ckpt.config)},
                    {"tensors", list}};
  out << kMagic << '\n' << header.dump() << '\n';
  for (const auto& t : views) {
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size_bytes()));
  }
  if (!out) throw CheckpointError("failed writing checkpoint");
}

static Checkpoint read_checkpoint(std::istream& in) {
  std::string magic;
  std::getline(in, magic);
  if (magic != kMagic) throw CheckpointError("not a toxspan checkpoint");
  std::string header_line;
  std::getline(in, header_line);

  Checkpoint ckpt;
  json header;
  std::size_t embedding_rows = 0;
  ModelShape shape;
  try {
    header = json::parse(header_line);
    ckpt.config = config_from(header.at("config"));
    ckpt.vocab_hash = std::stoull(header.at("vocab_hash").get<std::string>(), nullptr, 16);
    for (const auto& t : header.at("tensors")) {
      if (t.at("name") == "embedding") embedding_rows = t.at("rows").get<std::size_t>();
    }
    shape = {header.at("input_size").get<int>(), header.at("hidden_size").get<int>(),
             header.at("num_labels").get<int>()};
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("bad checkpoint header: ") + e.what());
  }

  if (shape.input < 1 || shape.hidden < 1 || shape.labels < 1) {
    throw CheckpointError("checkpoint has non-positive dimensions");
  }
  ckpt.params = zero_params(shape, embedding_rows);
  auto views = tensors(ckpt.params);
  const auto& listed = header["tensors"];
  if (listed.size() != views.size()) throw CheckpointError("checkpoint tensor count mismatch");
  for (std::size_t k = 0; k < views.size(); ++k) {
    const auto& t = listed[k];
    if (t.at("name") != views[k].name || t.at("rows").get<Eigen::Index>() != views[k].rows ||
        t.at("cols").get<Eigen::Index>() != views[k].cols) {
      throw CheckpointError("checkpoint tensor '" + views[k].name + "' has unexpected shape");
    }
    in.read(reinterpret_cast<char*>(views[k].data.data()),
            static_cast<std::streamsize>(views[k].data.size_bytes()));
    if (in.gcount() != static_cast<std::streamsize>(views[k].data.size_bytes())) {
      throw CheckpointError("checkpoint truncated in tensor '" + views[k].name + "'");
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw CheckpointError("checkpoint has trailing bytes");
  }
  return ckpt;
}

Checkpoint load_checkpoint(std::istream& in) {
  try {
    return read_checkpoint(in);
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("bad checkpoint header: ") + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void save_checkpoint_file(const Checkpoint& ckpt, const std::string& path) {
  std::ostringstream buf(std::ios::binary);
  save_checkpoint(ckpt, buf);
  write_file_atomic(path, buf.str());
}

Checkpoint load_checkpoint_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path);
  try {
    return load_checkpoint(in);
  } catch (const CheckpointError& e) {
    throw CheckpointError(path + ": " + e.what());
  }
}

void check_compatible(const Checkpoint& ckpt, const EmbeddingTable& table) {
  if (ckpt.params.input_size() != table.dim()) {
    throw CheckpointError("checkpoint expects " + std::to_string(ckpt.params.input_size()) +
                          "-d embeddings, table has " + std::to_string(table.dim()));
  }
  if (ckpt.vocab_hash != table.vocab_hash()) {
    throw CheckpointError("vocabulary hash mismatch: checkpoint " + hex64(ckpt.vocab_hash) +
                          ", embeddings " + hex64(table.vocab_hash()));
  }
  if (ckpt.params.embedding &&
      static_cast<std::size_t>(ckpt.params.embedding->rows()) != table.rows()) {
    throw CheckpointError("fine-tuned embedding rows do not match the table");
  }
}

}  // namespace toxspan
