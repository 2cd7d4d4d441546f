#include "toxspan/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace toxspan {

AdamState make_adam_state(const ModelParams& like, const AdamConfig& config) {
  AdamState s;
  s.config = config;
  s.m = zeros_like(like);
  s.v = zeros_like(like);
  return s;
}

double global_norm(const ModelParams& grads) {
  double sq = 0.0;
  for (const auto& t : tensors(grads)) {
    for (double g : t.data) sq += g * g;
  }
  return std::sqrt(sq);
}

double clip_global_norm(ModelParams& grads, double max_norm) {
  const double norm = global_norm(grads);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& t : tensors(grads)) {
      for (double& g : t.data) g *= scale;
    }
  }
  return norm;
}

void adam_step(ModelParams& params, ModelParams& grads, AdamState& state) {
  auto p = tensors(params);
  auto g = tensors(grads);
  auto m = tensors(state.m);
  auto v = tensors(state.v);
  if (p.size() != g.size() || p.size() != m.size() || p.size() != v.size()) {
    throw std::invalid_argument("Adam: parameter and gradient layouts differ");
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].data.size() != g[k].data.size() || p[k].data.size() != m[k].data.size()) {
      throw std::invalid_argument("Adam: shape mismatch in " + p[k].name);
    }
  }

  clip_global_norm(grads, state.config.clip_norm);
  ++state.step;
  const auto& c = state.config;
  const double bias1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto pd = p[k].data;
    auto gd = g[k].data;
    auto md = m[k].data;
    auto vd = v[k].data;
    for (std::size_t i = 0; i < pd.size(); ++i) {
      md[i] = c.beta1 * md[i] + (1.0 - c.beta1) * gd[i];
      vd[i] = c.beta2 * vd[i] + (1.0 - c.beta2) * gd[i] * gd[i];
      const double m_hat = md[i] / bias1;
      const double v_hat = vd[i] / bias2;
      pd[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

}  // namespace toxspan
