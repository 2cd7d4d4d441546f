#pragma once

#include <cstdint>

#include "toxspan/model.hpp"

namespace toxspan {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 5.0;  // global-norm clip; <= 0 disables
};

struct AdamState {
  AdamConfig config;
  std::int64_t step = 0;
  ModelParams m;  // first moments
  ModelParams v;  // second moments
};

AdamState make_adam_state(const ModelParams& like, const AdamConfig& config = {});

double global_norm(const ModelParams& grads);

// Rescales `grads` so its global norm is at most `max_norm`. Returns the norm
// before clipping.
double clip_global_norm(ModelParams& grads, double max_norm);

// Clips `grads` in place (if configured), then applies one bias-corrected
// Adam update to `params`.
void adam_step(ModelParams& params, ModelParams& grads, AdamState& state);

}  // namespace toxspan
