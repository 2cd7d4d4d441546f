#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace toxspan {

// One LSTM direction. Gate blocks are stacked in the order input, forget,
// cell, output, each `hidden` rows tall.
struct LstmDirectionParams {
  Eigen::MatrixXd w_in;   // 4H x D
  Eigen::MatrixXd w_rec;  // 4H x H
  Eigen::VectorXd b;      // 4H

  static LstmDirectionParams zeros(int input, int hidden);
  int input_size() const { return static_cast<int>(w_in.cols()); }
  int hidden_size() const { return static_cast<int>(w_rec.cols()); }
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything backprop needs; rows are indexed by original position even for
// the reversed direction.
struct LstmCache {
  bool reversed = false;
  Eigen::MatrixXd inputs;   // T x D
  Eigen::MatrixXd gates;    // T x 4H, post-activation
  Eigen::MatrixXd cells;    // T x H
  Eigen::MatrixXd cell_tanh;
  Eigen::MatrixXd hiddens;  // T x H
};

// Zero initial state. Throws NumericalError on a non-finite activation.
LstmCache lstm_forward(const Eigen::MatrixXd& inputs, const LstmDirectionParams& p, bool reversed);

struct LstmGradients {
  LstmDirectionParams params;
  Eigen::MatrixXd d_inputs;  // T x D
};

// `d_hiddens` is T x H, dLoss/dh for every position.
LstmGradients lstm_backward(const LstmCache& cache, const LstmDirectionParams& p,
                            const Eigen::MatrixXd& d_hiddens);

}  // namespace toxspan
