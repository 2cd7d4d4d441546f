// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exits nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "toxspan/checkpoint.hpp"
#include "toxspan/cli.hpp"
#include "toxspan/crf.hpp"
#include "toxspan/gate.hpp"
#include "toxspan/metric.hpp"
#include "toxspan/model.hpp"
#include "toxspan/synthetic.hpp"
#include "toxspan/train.hpp"

namespace fs = std::filesystem;
using namespace toxspan;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome verdict(bool ok, std::string detail) {
  return {ok ? Status::pass : Status::fail, std::move(detail)};
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Runs the CLI in-process; a nonzero exit becomes an exception carrying stderr.
std::string cli_ok(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) {
    throw std::runtime_error(args.front() + " exited " + std::to_string(code) + ": " + err.str());
  }
  return out.str();
}

double parse_mean_f1(const std::string& report) {
  const auto pos = report.rfind("mean_f1\t");
  if (pos == std::string::npos) throw std::runtime_error("no mean_f1 in evaluate output");
  return std::stod(report.substr(pos + 8));
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("toxspan_acceptance_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// ------------------------------------------------------------------ 1

Outcome metric_fidelity() {
  const double tol = 1e-12;
  const auto shifted = per_post_scores(CharSpanSet({-1, 0, 1, 2, 3}), CharSpanSet::range(0, 5));
  const double identity = per_post_scores(CharSpanSet::range(7, 18), CharSpanSet::range(7, 18)).f1;
  const double empty_empty = per_post_scores({}, {}).f1;
  const double pred_only = per_post_scores(CharSpanSet::range(66, 71), {}).f1;
  const double gold_only = per_post_scores({}, CharSpanSet::range(49, 63)).f1;
  const bool ok = std::abs(shifted.f1 - 0.8) <= tol && std::abs(identity - 1.0) <= tol &&
                  std::abs(empty_empty - 1.0) <= tol && std::abs(pred_only) <= tol &&
                  std::abs(gold_only) <= tol;
  return verdict(ok, "shifted-by-one F1 " + fmt("%.4f", shifted.f1) + ", identity " +
                         fmt("%g", identity) + ", empty/empty " + fmt("%g", empty_empty) +
                         ", one-empty " + fmt("%g", pred_only) + "/" + fmt("%g", gold_only));
}

// ------------------------------------------------------------------ 2

Outcome crf_oracle_equivalence() {
  const double tol = 1e-10;
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  int path_mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 8);
    const EmissionMatrix em = oracle::random_matrix(rng, T, 2, -2, 2);
    CrfParams crf;
    crf.trans = oracle::random_matrix(rng, 2, 2, -2, 2);
    crf.start = oracle::random_matrix(rng, 2, 1, -2, 2);
    crf.stop = oracle::random_matrix(rng, 2, 1, -2, 2);
    const auto ref = oracle::enumerate(em, crf.trans, crf.start, crf.stop);

    worst = std::max(worst, std::abs(crf_log_partition(em, crf) - ref.log_partition));
    const auto m = crf_marginals(em, crf);
    worst = std::max(worst, (m.node - ref.node).cwiseAbs().maxCoeff());
    worst = std::max(worst, (m.edge - ref.edge).cwiseAbs().maxCoeff());

    // Ties may pick a different path of the same score.
    const auto v = viterbi(em, crf);
    const double got = oracle::path_score(em, crf.trans, crf.start, crf.stop, v.path);
    worst = std::max(worst, std::abs(got - ref.best_score));
    worst = std::max(worst, std::abs(v.score - ref.best_score));
    if (v.path != ref.best_path && std::abs(got - ref.best_score) > tol) ++path_mismatches;
  }
  return verdict(worst <= tol && path_mismatches == 0,
                 "200 instances, max abs deviation " + fmt("%.2e", worst) + ", path mismatches " +
                     std::to_string(path_mismatches));
}

// ------------------------------------------------------------------ 3

Outcome gradient_correctness() {
  const auto table = fixture::tiny_table(31, 6, fixture::tiny_vocab());
  std::mt19937_64 rng(32);
  const auto examples =
      make_examples(fixture::random_posts(rng, 3, fixture::tiny_vocab(), {"idiot", "stupid"}), table);
  std::vector<const TrainExample*> batch;
  for (const auto& e : examples) batch.push_back(&e);

  ModelParams p = init_params({table.dim(), 8}, 33);
  p.crf.trans = oracle::random_matrix(rng, 2, 2, -1, 1);
  p.crf.start = oracle::random_matrix(rng, 2, 1, -1, 1);
  p.crf.stop = oracle::random_matrix(rng, 2, 1, -1, 1);

  ModelParams grads = zeros_like(p);
  batch_loss(batch, p, table, &grads);
  auto views = tensors(p);
  const auto gviews = tensors(grads);
  std::vector<double*> coords;
  std::vector<double> analytic;
  for (std::size_t v = 0; v < views.size(); ++v) {
    for (std::size_t i = 0; i < views[v].data.size(); ++i) {
      coords.push_back(&views[v].data[i]);
      analytic.push_back(gviews[v].data[i]);
    }
  }
  const auto numeric =
      oracle::central_differences(coords, [&] { return batch_loss(batch, p, table); }, 1e-5);
  double worst = 0.0;
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    worst = std::max(worst, oracle::relative_error(analytic[k], numeric[k]));
  }
  return verdict(worst < 1e-4, std::to_string(numeric.size()) + " parameters, max rel err " +
                                   fmt("%.2e", worst));
}

// ------------------------------------------------------------------ 4

Outcome synthetic_end_to_end() {
  const fs::path d = scratch("synth");
  const std::string dir = d.string() + "/";
  cli_ok({"synth", "--out", d.string()});
  const std::string train_out = cli_ok({"train", "--data", dir + "train.csv", "--embeddings",
                                        dir + "embeddings.txt", "--out", dir + "model.ckpt",
                                        "--epochs", "30"});
  cli_ok({"predict", "--model", dir + "model.ckpt", "--data", dir + "dev.csv", "--embeddings",
          dir + "embeddings.txt", "--out", dir + "dev.pred"});
  const double f1 = parse_mean_f1(
      cli_ok({"evaluate", "--pred", dir + "dev.pred", "--data", dir + "dev.csv"}));
  fs::remove_all(d);
  std::string best = train_out.substr(train_out.find("best epoch"));
  best.erase(best.find_last_not_of('\n') + 1);
  return verdict(f1 >= 0.95, "dev char-F1 " + fmt("%.4f", f1) + " (" + best + ")");
}

// ------------------------------------------------------------------ 5

Outcome gate_rule() {
  const fs::path d = scratch("gate");
  const std::string dir = d.string() + "/";
  const auto table = fixture::loser_table();
  std::ostringstream emb;
  write_embeddings_text(table.words(),
                        table.matrix().topRows(static_cast<Eigen::Index>(table.words().size())), emb);
  spit(dir + "emb.txt", emb.str());
  const auto loaded = load_embeddings_file(dir + "emb.txt");
  Checkpoint ckpt{fixture::single_word_tagger(3, 2), TrainConfig{}, loaded.vocab_hash()};
  ckpt.config.hidden_size = 2;
  save_checkpoint_file(ckpt, dir + "model.ckpt");

  std::ostringstream csv;
  write_dataset({{0, fixture::kErrorPost1, {}},
                 {1, "you are a loser", {}},
                 {2, "the world is nice", {}},
                 {3, "loser , loser", {}}},
                csv);
  spit(dir + "posts.csv", csv.str());
  spit(dir + "scores.tsv", "0\t0.1\n1\t0.9\n2\t0.3\n3\t0.5\n");
  cli_ok({"predict", "--model", dir + "model.ckpt", "--data", dir + "posts.csv", "--embeddings",
          dir + "emb.txt", "--gate", "scores:" + dir + "scores.tsv", "--out", dir + "gated.tsv",
          "--ungated-out", dir + "ungated.tsv"});
  const auto gated = load_predictions(dir + "gated.tsv");
  const auto ungated = load_predictions(dir + "ungated.tsv");
  fs::remove_all(d);

  bool subset = gated.size() == ungated.size();
  for (std::size_t i = 0; subset && i < gated.size(); ++i) {
    subset = gated[i].spans.is_subset_of(ungated[i].spans);
  }
  const bool loser_emptied = !ungated.empty() && ungated[0].spans == CharSpanSet::range(66, 71) &&
                    gated[0].spans.empty();
  return verdict(loser_emptied && subset, std::string("loser-post detector ") +
                                     format_span_literal(ungated.empty() ? CharSpanSet{} : ungated[0].spans) +
                                     " -> gated " +
                                     format_span_literal(gated.empty() ? CharSpanSet{} : gated[0].spans) +
                                     ", subset on all posts " + (subset ? "yes" : "no"));
}

// ------------------------------------------------------------------ 6

Outcome determinism() {
  const fs::path d = scratch("determinism");
  const std::string dir = d.string() + "/";
  cli_ok({"synth", "--out", d.string(), "--train-size", "120", "--dev-size", "30"});
  for (const char* name : {"a.ckpt", "b.ckpt"}) {
    cli_ok({"train", "--data", dir + "train.csv", "--embeddings", dir + "embeddings.txt", "--out",
            dir + name, "--epochs", "3", "--hidden", "16", "--seed", "5"});
  }
  const bool ckpt_same = slurp(dir + "a.ckpt") == slurp(dir + "b.ckpt");
  const bool hist_same = slurp(dir + "a.ckpt.history.tsv") == slurp(dir + "b.ckpt.history.tsv");
  const auto bytes = fs::file_size(dir + "a.ckpt");
  fs::remove_all(d);
  return verdict(ckpt_same && hist_same,
                 "checkpoint (" + std::to_string(bytes) + " bytes) " +
                     (ckpt_same ? "identical" : "differs") + ", history " +
                     (hist_same ? "identical" : "differs"));
}

// ------------------------------------------------------------------ 7

double bucket_percent(const std::string& stats, int words) {
  std::istringstream in(stats);
  std::string line;
  const std::string prefix = std::to_string(words) + "\t";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(line.rfind('\t') + 1));
  }
  return 0.0;
}

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? v : nullptr;
}

Outcome real_data_histogram() {
  const char* train = env("TOXSPAN_REAL_TRAIN_CSV");
  if (train == nullptr) return {Status::skip, "set TOXSPAN_REAL_TRAIN_CSV to the shared-task training CSV"};
  const std::string stats = cli_ok({"stats", "--data", train, "--lenient"});
  const double one = bucket_percent(stats, 1);
  const double zero = bucket_percent(stats, 0);
  return verdict(std::abs(one - 67.65) <= 2.0 && std::abs(zero - 6.10) <= 1.0,
                 "1-word bucket " + fmt("%.2f", one) + "% (67.65 +/- 2), 0-word bucket " +
                     fmt("%.2f", zero) + "% (6.10 +/- 1)");
}

Outcome real_data_gated_run() {
  const char* train = env("TOXSPAN_REAL_TRAIN_CSV");
  const char* dev = env("TOXSPAN_REAL_DEV_CSV");
  const char* emb = env("TOXSPAN_REAL_EMBEDDINGS");
  if (train == nullptr || dev == nullptr || emb == nullptr) {
    return {Status::skip,
            "set TOXSPAN_REAL_TRAIN_CSV, TOXSPAN_REAL_DEV_CSV and TOXSPAN_REAL_EMBEDDINGS"};
  }
  const fs::path d = scratch("real");
  const std::string dir = d.string() + "/";
  cli_ok({"train", "--data", train, "--embeddings", emb, "--out", dir + "model.ckpt", "--lenient"});
  cli_ok({"gate-train", "--data", train, "--embeddings", emb, "--out", dir + "gate.json",
          "--lenient"});
  cli_ok({"predict", "--model", dir + "model.ckpt", "--data", dev, "--embeddings", emb, "--gate",
          "internal", "--gate-model", dir + "gate.json", "--out", dir + "gated.tsv",
          "--ungated-out", dir + "ungated.tsv", "--lenient"});
  const double gated =
      parse_mean_f1(cli_ok({"evaluate", "--pred", dir + "gated.tsv", "--data", dev, "--lenient"}));
  const double ungated = parse_mean_f1(
      cli_ok({"evaluate", "--pred", dir + "ungated.tsv", "--data", dev, "--lenient"}));

  // Gate accuracy on held-out posts whose gold is empty.
  const auto gate = load_gate_file(dir + "gate.json");
  const auto table = load_embeddings_file(emb);
  std::size_t clean = 0, rejected = 0;
  for (const auto& post : load_dataset(dev, {true, true})) {
    if (!post.gold.empty()) continue;
    ++clean;
    const double s = gate_score(gate, post.id, mean_pool(encode_post(tokenize(post.text), table), table));
    if (s < gate.threshold) ++rejected;
  }
  fs::remove_all(d);
  const double acc = clean > 0 ? static_cast<double>(rejected) / static_cast<double>(clean) : 0.0;
  const bool band = gated >= 0.50 && gated <= 0.65;
  const bool direction = acc <= 0.9 || gated >= ungated;
  return verdict(band && direction, "gated F1 " + fmt("%.4f", gated) + " (band 0.50-0.65), ungated " +
                                        fmt("%.4f", ungated) + ", gate accuracy on clean posts " +
                                        fmt("%.3f", acc));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"1 metric fidelity", 1.0, metric_fidelity},
      {"2 CRF oracle equivalence", 10.0, crf_oracle_equivalence},
      {"3 gradient correctness", 30.0, gradient_correctness},
      {"4 synthetic end-to-end", 300.0, synthetic_end_to_end},
      {"5 gate rule", 10.0, gate_rule},
      {"6 determinism", 60.0, determinism},
      {"7a real-data histogram", 60.0, real_data_histogram},
      {"7b real-data gated run", 1e9, real_data_gated_run},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.status != Status::skip && secs > c.budget_seconds) {
      o.status = Status::fail;
      o.detail += "; over time budget " + fmt("%g", c.budget_seconds) + " s";
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    if (o.status == Status::fail) ++failures;
    std::cout << tag << "  " << c.name << "  [" << fmt("%.2f", secs) << " s]  " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria met" : "acceptance: failures present")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
