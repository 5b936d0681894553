#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subgroup_forge/adam.hpp"
#include "subgroup_forge/autodiff.hpp"
#include "subgroup_forge/rng.hpp"
#include "subgroup_forge/subgroup.hpp"

namespace sforge {

// Dense network: tanh on hidden layers, linear output. Xavier-uniform init.
struct Mlp {
  std::vector<int> widths;
  std::vector<NodePtr> weights;
  std::vector<NodePtr> biases;

  Mlp() = default;

  Mlp(std::vector<int> widths_in, Rng& rng) : widths(std::move(widths_in)) {
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
      const int fan_in = widths[l], fan_out = widths[l + 1];
      const double limit = std::sqrt(6.0 / (fan_in + fan_out));
      Tensor w({static_cast<std::size_t>(fan_in), static_cast<std::size_t>(fan_out)});
      for (std::size_t i = 0; i < w.numel(); ++i) w[i] = rng.uniform(-limit, limit);
      weights.push_back(param(std::move(w)));
      biases.push_back(param(Tensor({1, static_cast<std::size_t>(fan_out)})));
    }
  }

  NodePtr forward(NodePtr x) const {
    for (std::size_t l = 0; l < weights.size(); ++l) {
      x = add_row_vector(matmul(x, weights[l]), biases[l]);
      if (l + 1 < weights.size()) x = tanh(x);
    }
    return x;
  }

  std::vector<NodePtr> parameters() const {
    std::vector<NodePtr> out;
    for (std::size_t l = 0; l < weights.size(); ++l) {
      out.push_back(weights[l]);
      out.push_back(biases[l]);
    }
    return out;
  }
};

namespace detail {

// pooled = sum_i inner(slot_i) over slots placed in canonical (sorted) order
inline NodePtr pooled_slot_sum(const Mlp& inner, const NodePtr& slots) {
  const std::size_t n = slots->value.cols();
  NodePtr sorted = sort_rows(slots);
  NodePtr acc;
  for (std::size_t i = 0; i < n; ++i) {
    NodePtr h = inner.forward(slice_cols(sorted, i, i + 1));
    acc = acc ? add(acc, h) : h;
  }
  return acc;
}

inline std::vector<std::vector<int>> orbit_maps(int n, bool dihedral) {
  SubgroupSpec spec = dihedral
                          ? SubgroupSpec::d_2k_on([n] {
                              std::vector<int> c(n);
                              for (int i = 0; i < n; ++i) c[i] = i;
                              return c;
                            }(), n)
                          : SubgroupSpec::z_k_on([n] {
                              std::vector<int> c(n);
                              for (int i = 0; i < n; ++i) c[i] = i;
                              return c;
                            }(), n);
  std::vector<std::vector<int>> maps;
  for_each_element(spec, [&maps](const Permutation& p) { maps.push_back(p.mapping()); });
  return maps;
}

// width-2 window products of the two leading columns: [u*v, u*v^2]
inline NodePtr window_products(const NodePtr& z) {
  NodePtr u = slice_cols(z, 0, 1);
  NodePtr v = slice_cols(z, 1, 2);
  NodePtr uv = mul(u, v);
  NodePtr uvv = mul(uv, v);
  return concat_cols(uv, uvv);
}

}  // namespace detail

// S_n-invariant Deep Sets network: shared inner net per slot, fixed-order
// sum over the sorted slots (bitwise invariant), then the outer net.
struct DeepSetsNet {
  int n = 0;
  int latent = 0;
  Mlp inner;
  Mlp outer;

  DeepSetsNet() = default;

  DeepSetsNet(int n_in, Rng& rng, int hidden = 32, int latent_in = 0)
      : n(n_in), latent(latent_in > 0 ? latent_in : n_in + 1) {
    inner = Mlp({1, hidden, hidden, latent}, rng);
    outer = Mlp({latent, hidden, 1}, rng);
  }

  NodePtr forward(const NodePtr& x) const {
    if (static_cast<int>(x->value.cols()) != n) {
      throw DimensionError("DeepSetsNet: input width != n");
    }
    return outer.forward(detail::pooled_slot_sum(inner, x));
  }

  std::vector<NodePtr> parameters() const {
    auto out = inner.parameters();
    auto o = outer.parameters();
    out.insert(out.end(), o.begin(), o.end());
    return out;
  }
};

// Input of width 2n: the first n coordinates pass through untouched, the
// last n are pooled slot-wise; invariant under any permutation of the
// pooled block.
struct PassThroughPoolNet {
  int n = 0;
  int latent = 0;
  Mlp inner;
  Mlp head;

  PassThroughPoolNet() = default;

  PassThroughPoolNet(int n_in, Rng& rng, int hidden = 32, int latent_in = 0)
      : n(n_in), latent(latent_in > 0 ? latent_in : n_in + 1) {
    inner = Mlp({1, hidden, hidden, latent}, rng);
    head = Mlp({n + latent, hidden, 1}, rng);
  }

  NodePtr forward(const NodePtr& y) const {
    if (static_cast<int>(y->value.cols()) != 2 * n) {
      throw DimensionError("PassThroughPoolNet: input width != 2n");
    }
    NodePtr pass = slice_cols(y, 0, n);
    NodePtr pooled = detail::pooled_slot_sum(inner, slice_cols(y, n, 2 * n));
    return head.forward(concat_cols(pass, pooled));
  }

  std::vector<NodePtr> parameters() const {
    auto out = inner.parameters();
    auto h = head.parameters();
    out.insert(out.end(), h.begin(), h.end());
    return out;
  }
};

// Z_n- (or D_2n-) invariant network: a shared backbone evaluated on every
// orbit transform of the input, mean-pooled, then a head. The optional
// sum-product features append the width-2 window products of the leading
// coordinates of each transform, which puts cyclic polynomials of that
// shape inside the model class.
struct CyclicInvariantNet {
  int n = 0;
  bool dihedral = false;
  bool sum_product = true;
  Mlp backbone;
  Mlp head;
  std::vector<std::vector<int>> orbit;

  CyclicInvariantNet() = default;

  CyclicInvariantNet(int n_in, bool dihedral_in, Rng& rng, bool sum_product_in = true,
                     int hidden = 32, int features = 32)
      : n(n_in), dihedral(dihedral_in), sum_product(sum_product_in) {
    backbone = Mlp({n + (sum_product ? 2 : 0), hidden, features}, rng);
    head = Mlp({features, hidden, 1}, rng);
    orbit = detail::orbit_maps(n, dihedral);
  }

  NodePtr pooled_features(const NodePtr& block) const {
    NodePtr acc;
    for (const auto& map : orbit) {
      NodePtr z = permute_cols(block, map);
      if (sum_product) z = concat_cols(z, detail::window_products(z));
      NodePtr h = backbone.forward(z);
      acc = acc ? add(acc, h) : h;
    }
    return scale(acc, 1.0 / static_cast<double>(orbit.size()));
  }

  NodePtr forward(const NodePtr& x) const {
    if (static_cast<int>(x->value.cols()) != n) {
      throw DimensionError("CyclicInvariantNet: input width != n");
    }
    return head.forward(pooled_features(x));
  }

  std::vector<NodePtr> parameters() const {
    auto out = backbone.parameters();
    auto h = head.parameters();
    out.insert(out.end(), h.begin(), h.end());
    return out;
  }
};

inline CyclicInvariantNet make_dihedral_net(int n, Rng& rng, bool sum_product = true,
                                            int hidden = 32, int features = 32) {
  return CyclicInvariantNet(n, true, rng, sum_product, hidden, features);
}

// The 2n-input head for cyclic/dihedral mask compositions: orbit-invariant
// in its first n coordinates, plain pass-through of the last n into the head.
struct CyclicPassThroughNet {
  int n = 0;
  CyclicInvariantNet pooled;  // provides backbone + orbit over block 1
  Mlp head;

  CyclicPassThroughNet() = default;

  CyclicPassThroughNet(int n_in, bool dihedral, Rng& rng, bool sum_product = true,
                       int hidden = 32, int features = 32)
      : n(n_in), pooled(n_in, dihedral, rng, sum_product, hidden, features) {
    head = Mlp({features + n, hidden, 1}, rng);
  }

  NodePtr forward(const NodePtr& y) const {
    if (static_cast<int>(y->value.cols()) != 2 * n) {
      throw DimensionError("CyclicPassThroughNet: input width != 2n");
    }
    NodePtr block1 = slice_cols(y, 0, n);
    NodePtr block2 = slice_cols(y, n, 2 * n);
    return head.forward(concat_cols(pooled.pooled_features(block1), block2));
  }

  std::vector<NodePtr> parameters() const {
    auto out = pooled.backbone.parameters();
    auto h = head.parameters();
    out.insert(out.end(), h.begin(), h.end());
    return out;
  }
};

// Deliberately non-invariant baseline.
struct SimpleFcNet {
  Mlp mlp;

  SimpleFcNet() = default;
  SimpleFcNet(int in, Rng& rng, int hidden = 64) : mlp({in, hidden, hidden, 1}, rng) {}

  NodePtr forward(const NodePtr& x) const { return mlp.forward(x); }
  std::vector<NodePtr> parameters() const { return mlp.parameters(); }
};

// 1-D convolution baseline, valid (non-circular) padding so it carries no
// accidental cyclic invariance, then dense layers.
struct Conv1dNet {
  int n = 0;
  int kernel = 3;
  int channels = 8;
  NodePtr kernel_w;  // [kernel x channels]
  NodePtr kernel_b;  // [1 x channels]
  Mlp fc;

  Conv1dNet() = default;

  Conv1dNet(int n_in, Rng& rng, int kernel_in = 3, int channels_in = 8, int hidden = 32)
      : n(n_in), kernel(kernel_in), channels(channels_in) {
    const double limit = std::sqrt(6.0 / (kernel + channels));
    Tensor w({static_cast<std::size_t>(kernel), static_cast<std::size_t>(channels)});
    for (std::size_t i = 0; i < w.numel(); ++i) w[i] = rng.uniform(-limit, limit);
    kernel_w = param(std::move(w));
    kernel_b = param(Tensor({1, static_cast<std::size_t>(channels)}));
    fc = Mlp({(n - kernel + 1) * channels, hidden, 1}, rng);
  }

  NodePtr forward(const NodePtr& x) const {
    if (static_cast<int>(x->value.cols()) != n) {
      throw DimensionError("Conv1dNet: input width != n");
    }
    NodePtr all;
    for (int j = 0; j + kernel <= n; ++j) {
      NodePtr window = slice_cols(x, j, j + kernel);
      NodePtr h = tanh(add_row_vector(matmul(window, kernel_w), kernel_b));
      all = all ? concat_cols(all, h) : h;
    }
    return fc.forward(all);
  }

  std::vector<NodePtr> parameters() const {
    std::vector<NodePtr> out{kernel_w, kernel_b};
    auto f = fc.parameters();
    out.insert(out.end(), f.begin(), f.end());
    return out;
  }
};

// Reynolds operator: (1/|G|) sum_g f(g.x); exactly G-invariant.
inline double orbit_average(const std::function<double(const std::vector<double>&)>& f,
                            const std::vector<double>& x, const SubgroupSpec& group,
                            std::uint64_t cap = kDefaultEnumerationCap) {
  double acc = 0.0;
  std::uint64_t count = 0;
  for_each_element(
      group,
      [&](const Permutation& g) {
        acc += f(g.apply(x));
        ++count;
      },
      cap);
  return acc / static_cast<double>(count);
}

// Single-sample inference through any batch-style forward.
template <typename Net>
double eval_scalar(const Net& net, const std::vector<double>& x) {
  NodePtr in = constant(Tensor::row(x));
  return net.forward(in)->value[0];
}

}  // namespace sforge
