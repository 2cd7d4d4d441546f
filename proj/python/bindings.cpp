#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toxspan/analysis.hpp"
#include "toxspan/checkpoint.hpp"
#include "toxspan/cli.hpp"
#include "toxspan/crf.hpp"
#include "toxspan/dataio.hpp"
#include "toxspan/gate.hpp"
#include "toxspan/metric.hpp"
#include "toxspan/model.hpp"
#include "toxspan/span_codec.hpp"
#include "toxspan/tokenizer.hpp"

namespace py = pybind11;
using namespace toxspan;

namespace {

CharSpanSet to_set(const std::vector<CharIndex>& v) { return CharSpanSet(v); }

// A loaded checkpoint together with the embeddings it was trained against.
class Tagger {
 public:
  Tagger(const std::string& checkpoint, const std::string& embeddings)
      : ckpt_(load_checkpoint_file(checkpoint)),
        table_(load_embeddings_file(embeddings, ckpt_.params.input_size())) {
    check_compatible(ckpt_, table_);
  }

  std::vector<CharIndex> predict(const std::string& text, std::size_t max_len,
                                 CharIndex bridge_gap) const {
    return toxspan::predict(ckpt_.params, text, table_, max_len, BridgePolicy{true, bridge_gap})
        .indexes();
  }

  std::size_t vocab_size() const { return table_.vocab_size(); }
  std::size_t hidden_size() const { return ckpt_.config.hidden_size; }

 private:
  Checkpoint ckpt_;
  EmbeddingTable table_;
};

}  // namespace

PYBIND11_MODULE(_toxspan, m) {
  m.doc() = "Toxic span detection with a BiLSTM-CRF tagger";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<CheckpointError>(m, "CheckpointError", PyExc_ValueError);

  m.def("char_length", [](const std::string& s) { return char_length(s); });
  m.def("parse_span_literal",
        [](const std::string& s) { return parse_span_literal(s).indexes(); });
  m.def("format_span_literal",
        [](const std::vector<CharIndex>& v) { return format_span_literal(to_set(v)); });

  m.def(
      "tokenize",
      [](const std::string& text) {
        std::vector<py::tuple> out;
        for (const auto& t : tokenize(text).tokens) out.push_back(py::make_tuple(t.surface, t.lower, t.start, t.end));
        return out;
      },
      "Tokens as (surface, lower, start, end) with character offsets.");

  m.def(
      "spans_to_labels",
      [](const std::string& text, const std::vector<CharIndex>& gold) {
        return spans_to_labels(tokenize(text), to_set(gold));
      },
      py::arg("text"), py::arg("gold"));
  m.def(
      "labels_to_spans",
      [](const std::string& text, const std::vector<int>& labels, CharIndex bridge_gap) {
        return labels_to_spans(tokenize(text), labels, BridgePolicy{true, bridge_gap}).indexes();
      },
      py::arg("text"), py::arg("labels"), py::arg("bridge_gap") = 1);

  m.def(
      "per_post_scores",
      [](const std::vector<CharIndex>& pred, const std::vector<CharIndex>& gold) {
        const auto s = per_post_scores(to_set(pred), to_set(gold));
        return py::make_tuple(s.precision, s.recall, s.f1);
      },
      py::arg("pred"), py::arg("gold"), "(precision, recall, f1) for one post.");
  m.def(
      "mean_f1",
      [](const std::vector<std::vector<CharIndex>>& preds,
         const std::vector<std::vector<CharIndex>>& golds) {
        std::vector<CharSpanSet> p, g;
        for (const auto& v : preds) p.push_back(to_set(v));
        for (const auto& v : golds) g.push_back(to_set(v));
        return mean_f1(p, g);
      },
      py::arg("preds"), py::arg("golds"));

  m.def(
      "categorize",
      [](const std::vector<CharIndex>& pred, const std::vector<CharIndex>& gold) {
        return std::string(category_name(categorize(to_set(pred), to_set(gold))));
      },
      py::arg("pred"), py::arg("gold"));

  m.def(
      "apply_gate",
      [](const std::vector<CharIndex>& detected, double score, double threshold) {
        return apply_gate(to_set(detected), score, threshold).indexes();
      },
      py::arg("detected"), py::arg("score"), py::arg("threshold") = 0.5);

  auto crf_params = [](const Eigen::MatrixXd& trans, const Eigen::VectorXd& start,
                       const Eigen::VectorXd& stop) {
    CrfParams c;
    c.trans = trans;
    c.start = start;
    c.stop = stop;
    return c;
  };
  m.def(
      "crf_log_partition",
      [crf_params](const Eigen::MatrixXd& em, const Eigen::MatrixXd& trans,
                   const Eigen::VectorXd& start, const Eigen::VectorXd& stop) {
        return crf_log_partition(em, crf_params(trans, start, stop));
      },
      py::arg("emissions"), py::arg("trans"), py::arg("start"), py::arg("stop"));
  m.def(
      "viterbi",
      [crf_params](const Eigen::MatrixXd& em, const Eigen::MatrixXd& trans,
                   const Eigen::VectorXd& start, const Eigen::VectorXd& stop) {
        const auto v = viterbi(em, crf_params(trans, start, stop));
        return py::make_tuple(v.path, v.score);
      },
      py::arg("emissions"), py::arg("trans"), py::arg("start"), py::arg("stop"));

  py::class_<Tagger>(m, "Tagger")
      .def(py::init<const std::string&, const std::string&>(), py::arg("checkpoint"),
           py::arg("embeddings"))
      .def("predict", &Tagger::predict, py::arg("text"), py::arg("max_len") = kDefaultMaxLen,
           py::arg("bridge_gap") = 1)
      .def_property_readonly("vocab_size", &Tagger::vocab_size)
      .def_property_readonly("hidden_size", &Tagger::hidden_size);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one toxspan command; returns (exit_code, stdout, stderr).");
}
