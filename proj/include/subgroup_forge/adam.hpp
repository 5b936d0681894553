#pragma once

#include <cmath>
#include <vector>

#include "subgroup_forge/autodiff.hpp"

namespace sforge {

// Standard Adam with bias correction. State shapes are bound to the
// parameter list at init and never reallocated.
struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step = 0;
  std::vector<Tensor> m;
  std::vector<Tensor> v;

  void init(const std::vector<NodePtr>& params) {
    step = 0;
    m.clear();
    v.clear();
    for (const auto& p : params) {
      m.emplace_back(p->value.shape());
      v.emplace_back(p->value.shape());
    }
  }
};

// One in-place update from the accumulated grads. A missing grad (empty
// tensor) is treated as zero, so untouched parameters stay put.
inline void adam_step(std::vector<NodePtr>& params, AdamState& state) {
  if (state.m.size() != params.size()) {
    throw DimensionError("adam_step: state not initialized for these parameters");
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& w = params[i]->value;
    const Tensor& g = params[i]->grad;
    Tensor& mi = state.m[i];
    Tensor& vi = state.v[i];
    if (!g.empty() && !g.same_shape(w)) {
      throw DimensionError("adam_step: grad shape mismatch");
    }
    for (std::size_t j = 0; j < w.numel(); ++j) {
      const double gj = g.empty() ? 0.0 : g[j];
      mi[j] = state.beta1 * mi[j] + (1.0 - state.beta1) * gj;
      vi[j] = state.beta2 * vi[j] + (1.0 - state.beta2) * gj * gj;
      const double mhat = mi[j] / bc1;
      const double vhat = vi[j] / bc2;
      w[j] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
    }
  }
}

}  // namespace sforge
