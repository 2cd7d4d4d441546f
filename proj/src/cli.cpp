#include "toxspan/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "toxspan/analysis.hpp"
#include "toxspan/checkpoint.hpp"
#include "toxspan/dataio.hpp"
#include "toxspan/embeddings.hpp"
#include "toxspan/gate.hpp"
#include "toxspan/hash.hpp"
#include "toxspan/metric.hpp"
#include "toxspan/model.hpp"
#include "toxspan/synthetic.hpp"
#include "toxspan/train.hpp"

namespace toxspan::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  try {
    write_file_atomic(path, text);
  } catch (const std::filesystem::filesystem_error& e) {
    throw std::runtime_error("cannot write " + path + ": " + e.what());
  }
}

// Records what produced an output file; written next to it as
// `<output>.manifest.json`.
class RunManifest {
 public:
  RunManifest(const CLI::App& command)
      : command_(command), started_(std::chrono::steady_clock::now()), started_at_(utc_now()) {}

  void input(const std::string& path) { inputs_.push_back(path); }
  void output(const std::string& path) { outputs_.push_back(path); }

  void write(const std::string& primary_output) const {
    nlohmann::json config = nlohmann::json::object();
    for (const CLI::Option* opt : command_.get_options()) {
      const std::string name = opt->get_name(false, true);
      if (name.rfind("--", 0) != 0 || name == "--help" || name == "--config") continue;
      const std::string key = name.substr(2);
      if (opt->count() > 0) {
        const auto& r = opt->results();
        config[key] = opt->get_type_size() == 0 ? std::string("true") : r.back();
      } else {
        config[key] = opt->get_default_str();
      }
    }
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& p : inputs_) inputs[p] = "fnv1a64:" + hex64(file_digest(p));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    nlohmann::json seed = nullptr;
    if (config.contains("seed")) seed = config["seed"];
    const nlohmann::json manifest{{"command", command_.get_name()},
                                  {"config", config},
                                  {"seed", seed},
                                  {"inputs", inputs},
                                  {"outputs", outputs_},
                                  {"started_at", started_at_},
                                  {"wall_clock_seconds", seconds}};
    write_text(primary_output + ".manifest.json", manifest.dump(2) + "\n");
  }

 private:
  const CLI::App& command_;
  std::chrono::steady_clock::time_point started_;
  std::string started_at_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

BridgePolicy bridge_policy(long gap) {
  if (gap < 0) throw UsageError("--bridge-gap must be >= 0");
  return BridgePolicy{true, gap};
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  std::string data;
  std::string csv;
  std::size_t max_len = kDefaultMaxLen;
  bool lenient = false;
};

int cmd_stats(const StatsArgs& a, const CLI::App& app, std::ostream& out) {
  RunManifest manifest(app);
  const auto posts = load_dataset(a.data, {true, a.lenient});
  manifest.input(a.data);
  const auto hist = span_word_histogram(posts);

  std::size_t over = 0;
  for (const auto& p : posts) {
    if (tokenize(p.text).size() > a.max_len) ++over;
  }

  out << "posts\t" << hist.total << "\n";
  out << "toxic_words\tposts\tpercent\n";
  for (const auto& [k, n] : hist.counts) {
    out << k << '\t' << n << '\t' << format("%.2f", hist.percentages.at(k)) << "\n";
  }
  out << "posts_over_max_len(" << a.max_len << ")\t" << over << "\n";

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "toxic_words,posts,percent\n";
    for (const auto& [k, n] : hist.counts) {
      csv << k << ',' << n << ',' << format("%.4f", hist.percentages.at(k)) << "\n";
    }
    write_text(a.csv, csv.str());
    manifest.output(a.csv);
    manifest.write(a.csv);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string data;
  std::string embeddings;
  std::string out;
  TrainConfig config;
  long bridge_gap = 1;
  bool lenient = false;
};

int cmd_train(TrainArgs a, const CLI::App& app, std::ostream& out) {
  RunManifest manifest(app);
  a.config.bridge = bridge_policy(a.bridge_gap);
  try {
    a.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const EmbeddingTable table = load_embeddings_file(a.embeddings);
  manifest.input(a.embeddings);
  const auto posts = load_dataset(a.data, {true, a.lenient});
  manifest.input(a.data);
  out << "loaded " << posts.size() << " posts, " << table.vocab_size() << " words ("
      << table.dim() << "-d)\n";

  const auto examples = make_examples(posts, table, a.config.max_len);
  const TrainResult result = train(examples, table, a.config, &out);
  out << "best epoch " << result.best_epoch << "\n";

  save_checkpoint_file({result.params, a.config, table.vocab_hash()}, a.out);
  std::ostringstream history;
  write_history(result.history, history);
  const std::string history_path = a.out + ".history.tsv";
  write_text(history_path, history.str());
  manifest.output(a.out);
  manifest.output(history_path);
  manifest.write(a.out);
  return kExitOk;
}

// ---------------------------------------------------------------- gate-train

struct GateTrainArgs {
  std::string data;
  std::string embeddings;
  std::string out;
  int epochs = 500;
  double threshold = 0.5;
  std::size_t max_len = kDefaultMaxLen;
  bool lenient = false;
};

int cmd_gate_train(const GateTrainArgs& a, const CLI::App& app, std::ostream& out) {
  RunManifest manifest(app);
  const EmbeddingTable table = load_embeddings_file(a.embeddings);
  manifest.input(a.embeddings);
  const auto posts = load_dataset(a.data, {true, a.lenient});
  manifest.input(a.data);

  std::vector<std::pair<EncodedPost, bool>> data;
  data.reserve(posts.size());
  for (const auto& p : posts) {
    data.emplace_back(encode_post(tokenize(p.text), table, a.max_len), !p.gold.empty());
  }
  GateModel gate;
  try {
    gate = train_gate(data, table, {a.epochs, a.threshold});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double s = gate_score(gate, posts[i].id, mean_pool(data[i].first, table));
    if ((s >= gate.threshold) == data[i].second) ++correct;
  }
  out << "gate training accuracy "
      << format("%.4f", static_cast<double>(correct) / static_cast<double>(data.size())) << "\n";

  save_gate_file(gate, a.out);
  manifest.output(a.out);
  manifest.write(a.out);
  return kExitOk;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
  std::string model;
  std::string data;
  std::string embeddings;
  std::string gate = "off";
  std::string gate_model;
  double threshold = 0.5;
  bool threshold_given = false;
  long bridge_gap = 1;
  std::size_t max_len = kDefaultMaxLen;
  std::string out;
  std::string ungated_out;
  bool lenient = false;
};

int cmd_predict(const PredictArgs& a, const CLI::App& app, std::ostream& out) {
  RunManifest manifest(app);
  const BridgePolicy policy = bridge_policy(a.bridge_gap);
  if (a.max_len < 1) throw UsageError("--max-len must be >= 1");

  const Checkpoint ckpt = load_checkpoint_file(a.model);
  manifest.input(a.model);
  const EmbeddingTable table = load_embeddings_file(a.embeddings, ckpt.params.input_size());
  manifest.input(a.embeddings);
  check_compatible(ckpt, table);
  const auto posts = load_dataset(a.data, {false, a.lenient});
  manifest.input(a.data);

  std::optional<GateModel> gate;
  if (a.gate == "internal") {
    if (a.gate_model.empty()) throw UsageError("--gate internal needs --gate-model");
    gate = load_gate_file(a.gate_model);
    manifest.input(a.gate_model);
    if (gate->vocab_hash != table.vocab_hash()) {
      throw CheckpointError("gate model was trained against different embeddings");
    }
    if (gate->weights.size() != table.dim() + 1) throw CheckpointError("gate width mismatch");
    if (a.threshold_given) gate->threshold = a.threshold;
  } else if (a.gate.rfind("scores:", 0) == 0) {
    const std::string path = a.gate.substr(7);
    gate = make_external_gate(load_scores(path), a.threshold);
    manifest.input(path);
  } else if (a.gate != "off") {
    throw UsageError("--gate must be off, internal or scores:<path>");
  }
  if (!(a.threshold >= 0.0 && a.threshold <= 1.0)) throw UsageError("--gate-threshold must be in [0, 1]");

  std::vector<PostPrediction> ungated;
  std::vector<PostPrediction> final_preds;
  std::size_t vetoed = 0;
  for (const auto& post : posts) {
    const TokenSeq tokens = tokenize(post.text);
    PostPrediction p{post.id, predict_tokens(ckpt.params, tokens, table, a.max_len, policy)};
    ungated.push_back(p);
    if (gate) {
      const Eigen::VectorXd pooled = mean_pool(encode_post(tokens, table, a.max_len), table);
      const double score = gate_score(*gate, post.id, pooled);
      const CharSpanSet kept = apply_gate(p.spans, score, gate->threshold);
      if (kept.size() != p.spans.size()) ++vetoed;
      p.spans = kept;
    }
    final_preds.push_back(std::move(p));
  }

  std::ostringstream buf;
  write_predictions(final_preds, buf);
  write_text(a.out, buf.str());
  manifest.output(a.out);
  if (!a.ungated_out.empty()) {
    std::ostringstream ubuf;
    write_predictions(ungated, ubuf);
    write_text(a.ungated_out, ubuf.str());
    manifest.output(a.ungated_out);
  }
  manifest.write(a.out);
  out << "predicted " << final_preds.size() << " posts";
  if (gate) out << ", gate emptied " << vetoed;
  out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string pred;
  std::string data;
  std::string out;
  bool lenient = false;
};

int cmd_evaluate(const EvaluateArgs& a, const CLI::App& app, std::ostream& out) {
  RunManifest manifest(app);
  const auto preds = load_predictions(a.pred);
  manifest.input(a.pred);
  const auto golds = load_dataset(a.data, {true, a.lenient});
  manifest.input(a.data);
  const EvalReport report = evaluate(preds, golds);

  std::ostringstream tsv;
  tsv << "id\tprecision\trecall\tf1\n";
  for (std::size_t i = 0; i < report.per_post.size(); ++i) {
    const auto& s = report.per_post[i];
    tsv << preds[i].id << '\t' << format("%.4f", s.precision) << '\t' << format("%.4f", s.recall)
        << '\t' << format("%.4f", s.f1) << "\n";
  }
  const std::string summary = "mean_f1\t" + format("%.4f", report.mean_f1) + "\n";
  tsv << summary;
  if (a.out.empty()) {
    out << tsv.str();
  } else {
    write_text(a.out, tsv.str());
    manifest.output(a.out);
    manifest.write(a.out);
    out << summary;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string pred;
  std::string data;
  std::size_t samples = 3;
  bool lenient = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto preds = load_predictions(a.pred);
  const auto golds = load_dataset(a.data, {true, a.lenient});
  const auto buckets = categorize_errors(preds, golds);

  const double total = static_cast<double>(golds.size());
  out << "category\tposts\tpercent\n";
  for (const auto& b : buckets) {
    out << category_name(b.category) << '\t' << b.post_ids.size() << '\t'
        << format("%.2f", total > 0 ? 100.0 * static_cast<double>(b.post_ids.size()) / total : 0.0)
        << "\n";
  }
  for (const auto& b : buckets) {
    if (b.category == ErrorCategory::exact || b.post_ids.empty() || a.samples == 0) continue;
    out << "\n# " << category_name(b.category) << "\n";
    for (std::size_t k = 0; k < std::min(a.samples, b.post_ids.size()); ++k) {
      const std::size_t id = b.post_ids[k];
      out << id << '\t' << golds[id].text << "\n"
          << "\tgold " << format_span_literal(golds[id].gold) << "\n"
          << "\tpred " << format_span_literal(preds[id].spans) << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string out_dir;
  SyntheticConfig config;
};

int cmd_synth(const SynthArgs& a, const CLI::App& app, std::ostream& out) {
  RunManifest manifest(app);
  const SyntheticCorpus corpus = generate_lexicon_corpus(a.config);
  std::filesystem::create_directories(a.out_dir);
  const std::string dir = a.out_dir + "/";

  std::ostringstream train_csv, dev_csv, emb, lex;
  write_dataset(corpus.train, train_csv);
  write_dataset(corpus.dev, dev_csv);
  write_embeddings_text(corpus.embedding_words, corpus.embedding_vectors, emb);
  for (const auto& w : corpus.lexicon) lex << w << "\n";
  write_text(dir + "train.csv", train_csv.str());
  write_text(dir + "dev.csv", dev_csv.str());
  write_text(dir + "embeddings.txt", emb.str());
  write_text(dir + "lexicon.txt", lex.str());
  for (const char* f : {"train.csv", "dev.csv", "embeddings.txt", "lexicon.txt"}) {
    manifest.output(dir + f);
  }
  manifest.write(dir + "train.csv");
  out << "wrote " << corpus.train.size() << " train / " << corpus.dev.size() << " dev posts to "
      << a.out_dir << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- config

bool flag_present(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& s) {
    return s == flag || s.rfind(flag + "=", 0) == 0;
  });
}

// Config values go first so that flags given on the command line win.
std::vector<std::string> apply_config(const std::vector<std::string>& args, CLI::App& app) {
  if (args.empty()) return args;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[0]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::vector<std::string> merged{args[0]};
  for (const auto& [key, value] : read_config_file(config_path)) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr || key == "config") {
      throw UsageError(config_path + ": unknown key '" + key + "' for " + args[0]);
    }
    if (flag_present(args, flag)) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1" || value == "yes") merged.push_back(flag);
    } else {
      merged.push_back(flag);
      merged.push_back(value);
    }
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + " line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"toxspan: toxic span detection with a BiLSTM-CRF tagger", "toxspan"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  std::string config_unused;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_unused, "Flat key = value file mirroring the flags");
  };

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Toxic-word-per-post histogram of a labeled CSV");
  s->add_option("--data", stats.data, "Labeled CSV")->required()->check(CLI::ExistingFile);
  s->add_option("--max-len", stats.max_len, "Length used to count truncated posts");
  s->add_option("--csv", stats.csv, "Also write the histogram as CSV");
  s->add_flag("--lenient", stats.lenient, "Drop out-of-range gold indexes with a warning");
  add_config(s);

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train the BiLSTM-CRF tagger");
  t->add_option("--data", tr.data, "Labeled training CSV")->required()->check(CLI::ExistingFile);
  t->add_option("--embeddings", tr.embeddings, "Word vectors in text format")
      ->required()
      ->check(CLI::ExistingFile);
  t->add_option("--out", tr.out, "Checkpoint path")->required();
  t->add_option("--max-len", tr.config.max_len, "Maximum tokens per post");
  t->add_option("--hidden", tr.config.hidden_size, "LSTM hidden size per direction");
  t->add_option("--epochs", tr.config.epochs, "Maximum training epochs");
  t->add_option("--batch", tr.config.batch_size, "Minibatch size");
  t->add_option("--lr", tr.config.learning_rate, "Adam learning rate");
  t->add_option("--seed", tr.config.seed, "Random seed");
  t->add_option("--bridge-gap", tr.bridge_gap, "Largest gap bridged between toxic tokens");
  t->add_option("--clip", tr.config.gradient_clip_norm, "Global gradient-norm clip (0 = off)");
  t->add_option("--patience", tr.config.early_stop_patience, "Early-stopping patience in epochs");
  t->add_option("--dev-fraction", tr.config.dev_fraction, "Share of posts held out for dev F1");
  t->add_flag("--fine-tune", tr.config.fine_tune_embeddings, "Train the embedding rows too");
  t->add_flag("--lenient", tr.lenient, "Drop out-of-range gold indexes with a warning");
  add_config(t);

  GateTrainArgs gt;
  auto* g = app.add_subcommand("gate-train", "Train the built-in post-level toxicity gate");
  g->add_option("--data", gt.data, "Labeled CSV")->required()->check(CLI::ExistingFile);
  g->add_option("--embeddings", gt.embeddings, "Word vectors in text format")
      ->required()
      ->check(CLI::ExistingFile);
  g->add_option("--out", gt.out, "Gate model path (JSON)")->required();
  g->add_option("--epochs", gt.epochs, "Full-batch gradient steps");
  g->add_option("--gate-threshold", gt.threshold, "Decision threshold stored with the gate");
  g->add_option("--max-len", gt.max_len, "Maximum tokens per post");
  g->add_flag("--lenient", gt.lenient, "Drop out-of-range gold indexes with a warning");
  add_config(g);

  PredictArgs pr;
  auto* p = app.add_subcommand("predict", "Predict toxic character spans");
  p->add_option("--model", pr.model, "Checkpoint from `train`")->required()->check(CLI::ExistingFile);
  p->add_option("--data", pr.data, "CSV with a text column")->required()->check(CLI::ExistingFile);
  p->add_option("--embeddings", pr.embeddings, "Word vectors the model was trained with")
      ->required()
      ->check(CLI::ExistingFile);
  p->add_option("--gate", pr.gate, "off, internal or scores:<path>");
  p->add_option("--gate-model", pr.gate_model, "Gate from `gate-train` (for --gate internal)")
      ->check(CLI::ExistingFile);
  auto* thr = p->add_option("--gate-threshold", pr.threshold, "Posts scoring below are emptied");
  p->add_option("--bridge-gap", pr.bridge_gap, "Largest gap bridged between toxic tokens");
  p->add_option("--max-len", pr.max_len, "Maximum tokens per post");
  p->add_option("--out", pr.out, "Prediction file")->required();
  p->add_option("--ungated-out", pr.ungated_out, "Also write the detector output before gating");
  p->add_flag("--lenient", pr.lenient, "Tolerate empty texts");
  add_config(p);

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Character-level F1 of a prediction file");
  e->add_option("--pred", ev.pred, "Prediction file")->required()->check(CLI::ExistingFile);
  e->add_option("--data", ev.data, "Gold CSV")->required()->check(CLI::ExistingFile);
  e->add_option("--out", ev.out, "Write the per-post report here instead of stdout");
  e->add_flag("--lenient", ev.lenient, "Drop out-of-range gold indexes with a warning");
  add_config(e);

  AnalyzeArgs an;
  auto* z = app.add_subcommand("analyze", "Sort predictions into error categories");
  z->add_option("--pred", an.pred, "Prediction file")->required()->check(CLI::ExistingFile);
  z->add_option("--data", an.data, "Gold CSV")->required()->check(CLI::ExistingFile);
  z->add_option("--samples", an.samples, "Example posts shown per category");
  z->add_flag("--lenient", an.lenient, "Drop out-of-range gold indexes with a warning");
  add_config(z);

  SynthArgs sy;
  auto* y = app.add_subcommand("synth", "Generate the synthetic lexicon corpus");
  y->add_option("--out", sy.out_dir, "Output directory")->required();
  y->add_option("--seed", sy.config.seed, "Random seed");
  y->add_option("--train-size", sy.config.train_posts, "Training posts");
  y->add_option("--dev-size", sy.config.dev_posts, "Dev posts");
  y->add_option("--lexicon", sy.config.lexicon_size, "Toxic lexicon size");
  add_config(y);

  try {
    std::vector<std::string> argv = apply_config(args, app);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "run with --help for usage of " << sub->get_name() << "\n";
    return kExitUsage;
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_stats(stats, *s, out);
    if (t->parsed()) return cmd_train(tr, *t, out);
    if (g->parsed()) return cmd_gate_train(gt, *g, out);
    if (p->parsed()) {
      pr.threshold_given = thr->count() > 0;
      return cmd_predict(pr, *p, out);
    }
    if (e->parsed()) return cmd_evaluate(ev, *e, out);
    if (z->parsed()) return cmd_analyze(an, out);
    if (y->parsed()) return cmd_synth(sy, *y, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const CheckpointError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const DataError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace toxspan::cli
