#include "toxspan/lstm.hpp"

#include <cmath>
#include <string>

namespace toxspan {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Position processed at step s, and the one processed before it (-1 if none).
Eigen::Index position(Eigen::Index step, Eigen::Index T, bool reversed) {
  return reversed ? T - 1 - step : step;
}

Eigen::Index previous(Eigen::Index t, Eigen::Index T, bool reversed) {
  if (reversed) return t + 1 < T ? t + 1 : -1;
  return t - 1;
}

}  // namespace

LstmDirectionParams LstmDirectionParams::zeros(int input, int hidden) {
  return {Eigen::MatrixXd::Zero(4 * hidden, input), Eigen::MatrixXd::Zero(4 * hidden, hidden),
          Eigen::VectorXd::Zero(4 * hidden)};
}

LstmCache lstm_forward(const Eigen::MatrixXd& inputs, const LstmDirectionParams& p,
                       bool reversed) {
  const Eigen::Index T = inputs.rows();
  const Eigen::Index H = p.hidden_size();
  if (T < 1) throw std::invalid_argument("LSTM needs at least one position");
  if (inputs.cols() != p.input_size()) throw std::invalid_argument("LSTM input width mismatch");

  LstmCache c;
  c.reversed = reversed;
  c.inputs = inputs;
  c.gates.resize(T, 4 * H);
  c.cells.resize(T, H);
  c.cell_tanh.resize(T, H);
  c.hiddens.resize(T, H);

  // Input contributions for all positions at once, T x 4H.
  Eigen::MatrixXd projected = inputs * p.w_in.transpose();
  projected.rowwise() += p.b.transpose();

  Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(H);
  Eigen::VectorXd c_prev = Eigen::VectorXd::Zero(H);
  Eigen::VectorXd z(4 * H);
  for (Eigen::Index s = 0; s < T; ++s) {
    const Eigen::Index t = position(s, T, reversed);
    z.noalias() = p.w_rec * h_prev;
    z += projected.row(t).transpose();
    for (Eigen::Index k = 0; k < H; ++k) {
      const double i = sigmoid(z(k));
      const double f = sigmoid(z(H + k));
      const double g = std::tanh(z(2 * H + k));
      const double o = sigmoid(z(3 * H + k));
      const double cell = f * c_prev(k) + i * g;
      const double ct = std::tanh(cell);
      c.gates(t, k) = i;
      c.gates(t, H + k) = f;
      c.gates(t, 2 * H + k) = g;
      c.gates(t, 3 * H + k) = o;
      c.cells(t, k) = cell;
      c.cell_tanh(t, k) = ct;
      c.hiddens(t, k) = o * ct;
    }
    if (!c.cells.row(t).allFinite() || !c.hiddens.row(t).allFinite()) {
      throw NumericalError("non-finite LSTM activation at position " + std::to_string(t));
    }
    h_prev = c.hiddens.row(t).transpose();
    c_prev = c.cells.row(t).transpose();
  }
  return c;
}

LstmGradients lstm_backward(const LstmCache& cache, const LstmDirectionParams& p,
                            const Eigen::MatrixXd& d_hiddens) {
  const Eigen::Index T = cache.inputs.rows();
  const Eigen::Index H = p.hidden_size();
  if (d_hiddens.rows() != T || d_hiddens.cols() != H) {
    throw std::invalid_argument("LSTM upstream gradient shape mismatch");
  }

  Eigen::MatrixXd d_z(T, 4 * H);
  Eigen::MatrixXd h_before = Eigen::MatrixXd::Zero(T, H);
  Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(H);
  Eigen::VectorXd dc_next = Eigen::VectorXd::Zero(H);
  Eigen::VectorXd dz(4 * H);

  for (Eigen::Index s = T - 1; s >= 0; --s) {
    const Eigen::Index t = position(s, T, cache.reversed);
    const Eigen::Index prev = previous(t, T, cache.reversed);
    if (prev >= 0) h_before.row(t) = cache.hiddens.row(prev);
    for (Eigen::Index k = 0; k < H; ++k) {
      const double i = cache.gates(t, k);
      const double f = cache.gates(t, H + k);
      const double g = cache.gates(t, 2 * H + k);
      const double o = cache.gates(t, 3 * H + k);
      const double ct = cache.cell_tanh(t, k);
      const double c_prev = prev >= 0 ? cache.cells(prev, k) : 0.0;

      const double dh = d_hiddens(t, k) + dh_next(k);
      const double dc = dh * o * (1.0 - ct * ct) + dc_next(k);
      dz(k) = dc * g * i * (1.0 - i);
      dz(H + k) = dc * c_prev * f * (1.0 - f);
      dz(2 * H + k) = dc * i * (1.0 - g * g);
      dz(3 * H + k) = dh * ct * o * (1.0 - o);
      dc_next(k) = dc * f;
    }
    d_z.row(t) = dz.transpose();
    dh_next.noalias() = p.w_rec.transpose() * dz;
  }

  LstmGradients out;
  out.params.w_in.noalias() = d_z.transpose() * cache.inputs;
  out.params.w_rec.noalias() = d_z.transpose() * h_before;
  out.params.b = d_z.colwise().sum().transpose();
  out.d_inputs.noalias() = d_z * p.w_in;
  return out;
}

}  // namespace toxspan
