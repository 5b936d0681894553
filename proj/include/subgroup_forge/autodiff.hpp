#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "subgroup_forge/tensor.hpp"

namespace sforge {

// Reverse-mode autodiff over rank-2 tensors (batch rows x features).
// The graph is rebuilt per forward pass; a Node owns its value and the
// vector-Jacobian closures back to its parents. Edges hold shared_ptrs,
// so a root keeps its whole graph alive and there are no cycles.

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Edge {
  NodePtr parent;
  // maps the adjoint of this node to the contribution for `parent`
  std::function<Tensor(const Tensor&)> vjp;
};

struct Node {
  Tensor value;
  Tensor grad;  // accumulated across backward() calls until zeroed
  bool requires_grad = false;
  bool needs_grad = false;  // requires_grad or any ancestor does
  std::vector<Edge> edges;

  static NodePtr leaf(Tensor v, bool wants_grad) {
    auto n = std::make_shared<Node>();
    n->value = std::move(v);
    n->requires_grad = wants_grad;
    n->needs_grad = wants_grad;
    return n;
  }

  static NodePtr op(Tensor v, std::vector<Edge> edges_in) {
    auto n = std::make_shared<Node>();
    n->value = std::move(v);
    for (auto& e : edges_in) {
      if (e.parent->needs_grad) {
        n->needs_grad = true;
        n->edges.push_back(std::move(e));
      }
    }
    return n;
  }
};

inline NodePtr constant(Tensor v) { return Node::leaf(std::move(v), false); }
inline NodePtr param(Tensor v) { return Node::leaf(std::move(v), true); }

// ---------------------------------------------------------------------------
// ops
// ---------------------------------------------------------------------------

inline void check_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_shape(b)) throw DimensionError(std::string(what) + ": shape mismatch");
}

inline NodePtr add(const NodePtr& a, const NodePtr& b) {
  check_same_shape(a->value, b->value, "add");
  Tensor out = a->value;
  out.add_inplace(b->value);
  auto pass = [](const Tensor& g) { return g; };
  return Node::op(std::move(out), {{a, pass}, {b, pass}});
}

inline NodePtr sub(const NodePtr& a, const NodePtr& b) {
  check_same_shape(a->value, b->value, "sub");
  Tensor out = a->value;
  for (std::size_t i = 0; i < out.numel(); ++i) out[i] -= b->value[i];
  return Node::op(std::move(out), {{a, [](const Tensor& g) { return g; }},
                                   {b, [](const Tensor& g) {
                                      Tensor n = g;
                                      n.scale_inplace(-1.0);
                                      return n;
                                    }}});
}

inline NodePtr mul(const NodePtr& a, const NodePtr& b) {
  check_same_shape(a->value, b->value, "mul");
  Tensor out = a->value;
  for (std::size_t i = 0; i < out.numel(); ++i) out[i] *= b->value[i];
  return Node::op(std::move(out), {{a,
                                    [b](const Tensor& g) {
                                      Tensor n = g;
                                      for (std::size_t i = 0; i < n.numel(); ++i)
                                        n[i] *= b->value[i];
                                      return n;
                                    }},
                                   {b, [a](const Tensor& g) {
                                      Tensor n = g;
                                      for (std::size_t i = 0; i < n.numel(); ++i)
                                        n[i] *= a->value[i];
                                      return n;
                                    }}});
}

inline NodePtr scale(const NodePtr& a, double c) {
  Tensor out = a->value;
  out.scale_inplace(c);
  return Node::op(std::move(out), {{a, [c](const Tensor& g) {
                                      Tensor n = g;
                                      n.scale_inplace(c);
                                      return n;
                                    }}});
}

inline NodePtr add_scalar(const NodePtr& a, double c) {
  Tensor out = a->value;
  for (std::size_t i = 0; i < out.numel(); ++i) out[i] += c;
  return Node::op(std::move(out), {{a, [](const Tensor& g) { return g; }}});
}

inline NodePtr matmul(const NodePtr& a, const NodePtr& b) {
  Tensor out = matmul_values(a->value, b->value);
  return Node::op(std::move(out),
                  {{a, [b](const Tensor& g) { return matmul_nt_values(g, b->value); }},
                   {b, [a](const Tensor& g) { return matmul_tn_values(a->value, g); }}});
}

// a * b^T; dA = g * b, dB = g^T * a
inline NodePtr matmul_nt(const NodePtr& a, const NodePtr& b) {
  Tensor out = matmul_nt_values(a->value, b->value);
  return Node::op(std::move(out),
                  {{a, [b](const Tensor& g) { return matmul_values(g, b->value); }},
                   {b, [a](const Tensor& g) { return matmul_tn_values(g, a->value); }}});
}

inline NodePtr tanh(const NodePtr& a) {
  Tensor out = a->value;
  for (std::size_t i = 0; i < out.numel(); ++i) out[i] = std::tanh(out[i]);
  auto out_copy = std::make_shared<Tensor>(out);
  return Node::op(std::move(out), {{a, [out_copy](const Tensor& g) {
                                      Tensor n = g;
                                      for (std::size_t i = 0; i < n.numel(); ++i) {
                                        const double t = (*out_copy)[i];
                                        n[i] *= 1.0 - t * t;
                                      }
                                      return n;
                                    }}});
}

// gradient at 0 taken as 0
inline NodePtr relu(const NodePtr& a) {
  Tensor out = a->value;
  for (std::size_t i = 0; i < out.numel(); ++i) out[i] = out[i] > 0.0 ? out[i] : 0.0;
  return Node::op(std::move(out), {{a, [a](const Tensor& g) {
                                      Tensor n = g;
                                      for (std::size_t i = 0; i < n.numel(); ++i)
                                        if (a->value[i] <= 0.0) n[i] = 0.0;
                                      return n;
                                    }}});
}

// gradient at 0 taken as 0
inline NodePtr abs(const NodePtr& a) {
  Tensor out = a->value;
  for (std::size_t i = 0; i < out.numel(); ++i) out[i] = std::fabs(out[i]);
  return Node::op(std::move(out), {{a, [a](const Tensor& g) {
                                      Tensor n = g;
                                      for (std::size_t i = 0; i < n.numel(); ++i) {
                                        const double v = a->value[i];
                                        n[i] *= v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
                                      }
                                      return n;
                                    }}});
}

// integer exponents only; negative bases are fine
inline NodePtr power(const NodePtr& a, int p) {
  auto ipow = [](double base, int e) {
    double r = 1.0;
    bool inv = e < 0;
    for (int i = 0; i < (inv ? -e : e); ++i) r *= base;
    return inv ? 1.0 / r : r;
  };
  Tensor out = a->value;
  for (std::size_t i = 0; i < out.numel(); ++i) out[i] = ipow(out[i], p);
  return Node::op(std::move(out), {{a, [a, p, ipow](const Tensor& g) {
                                      Tensor n = g;
                                      for (std::size_t i = 0; i < n.numel(); ++i)
                                        n[i] *= p * ipow(a->value[i], p - 1);
                                      return n;
                                    }}});
}

inline NodePtr sum_all(const NodePtr& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a->value.numel(); ++i) s += a->value[i];
  auto shape = a->value.shape();
  return Node::op(Tensor::scalar(s), {{a, [shape](const Tensor& g) {
                                         Tensor n(shape);
                                         n.fill(g[0]);
                                         return n;
                                       }}});
}

// axis 0: column sums -> [1 x c]; axis 1: row sums -> [r x 1]
inline NodePtr sum_axis(const NodePtr& a, int axis) {
  const std::size_t r = a->value.rows(), c = a->value.cols();
  if (axis == 0) {
    Tensor out({1, c});
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) out[j] += a->value.at(i, j);
    return Node::op(std::move(out), {{a, [r, c](const Tensor& g) {
                                        Tensor n({r, c});
                                        for (std::size_t i = 0; i < r; ++i)
                                          for (std::size_t j = 0; j < c; ++j) n.at(i, j) = g[j];
                                        return n;
                                      }}});
  }
  if (axis == 1) {
    Tensor out({r, 1});
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) out[i] += a->value.at(i, j);
    return Node::op(std::move(out), {{a, [r, c](const Tensor& g) {
                                        Tensor n({r, c});
                                        for (std::size_t i = 0; i < r; ++i)
                                          for (std::size_t j = 0; j < c; ++j) n.at(i, j) = g[i];
                                        return n;
                                      }}});
  }
  throw DimensionError("sum_axis: axis must be 0 or 1");
}

inline NodePtr mean(const NodePtr& a) {
  const double inv = 1.0 / static_cast<double>(a->value.numel());
  return scale(sum_all(a), inv);
}

// [r x c] + [1 x c] broadcast over rows
inline NodePtr add_row_vector(const NodePtr& a, const NodePtr& bias) {
  const std::size_t r = a->value.rows(), c = a->value.cols();
  if (bias->value.rows() != 1 || bias->value.cols() != c) {
    throw DimensionError("add_row_vector: bias must be [1 x cols]");
  }
  Tensor out = a->value;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) += bias->value[j];
  return Node::op(std::move(out),
                  {{a, [](const Tensor& g) { return g; }},
                   {bias, [r, c](const Tensor& g) {
                      Tensor n({1, c});
                      for (std::size_t i = 0; i < r; ++i)
                        for (std::size_t j = 0; j < c; ++j) n[j] += g.at(i, j);
                      return n;
                    }}});
}

inline NodePtr concat_cols(const NodePtr& a, const NodePtr& b) {
  const std::size_t r = a->value.rows();
  if (b->value.rows() != r) throw DimensionError("concat_cols: row mismatch");
  const std::size_t ca = a->value.cols(), cb = b->value.cols();
  Tensor out({r, ca + cb});
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < ca; ++j) out.at(i, j) = a->value.at(i, j);
    for (std::size_t j = 0; j < cb; ++j) out.at(i, ca + j) = b->value.at(i, j);
  }
  return Node::op(std::move(out),
                  {{a,
                    [r, ca](const Tensor& g) {
                      Tensor n({r, ca});
                      for (std::size_t i = 0; i < r; ++i)
                        for (std::size_t j = 0; j < ca; ++j) n.at(i, j) = g.at(i, j);
                      return n;
                    }},
                   {b, [r, ca, cb](const Tensor& g) {
                      Tensor n({r, cb});
                      for (std::size_t i = 0; i < r; ++i)
                        for (std::size_t j = 0; j < cb; ++j) n.at(i, j) = g.at(i, ca + j);
                      return n;
                    }}});
}

// columns [c0, c1)
inline NodePtr slice_cols(const NodePtr& a, std::size_t c0, std::size_t c1) {
  const std::size_t r = a->value.rows(), c = a->value.cols();
  if (c0 >= c1 || c1 > c) throw DimensionError("slice_cols: bad range");
  const std::size_t w = c1 - c0;
  Tensor out({r, w});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < w; ++j) out.at(i, j) = a->value.at(i, c0 + j);
  return Node::op(std::move(out), {{a, [r, c, c0, w](const Tensor& g) {
                                      Tensor n({r, c});
                                      for (std::size_t i = 0; i < r; ++i)
                                        for (std::size_t j = 0; j < w; ++j)
                                          n.at(i, c0 + j) = g.at(i, j);
                                      return n;
                                    }}});
}

// out[:, j] = a[:, index[j]]; indices may repeat
inline NodePtr gather_cols(const NodePtr& a, std::vector<std::size_t> index) {
  const std::size_t r = a->value.rows(), c = a->value.cols();
  for (std::size_t j : index)
    if (j >= c) throw DimensionError("gather_cols: index out of range");
  const std::size_t w = index.size();
  Tensor out({r, w});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < w; ++j) out.at(i, j) = a->value.at(i, index[j]);
  return Node::op(std::move(out), {{a, [r, c, index](const Tensor& g) {
                                      Tensor n({r, c});
                                      for (std::size_t i = 0; i < r; ++i)
                                        for (std::size_t j = 0; j < index.size(); ++j)
                                          n.at(i, index[j]) += g.at(i, j);
                                      return n;
                                    }}});
}

// Rows independently sorted ascending; the backward pass scatters through
// the per-row argsort. This is the canonicalization that makes pooled sums
// bitwise permutation-invariant.
inline NodePtr sort_rows(const NodePtr& a) {
  const std::size_t r = a->value.rows(), c = a->value.cols();
  Tensor out({r, c});
  auto order = std::make_shared<std::vector<std::size_t>>(r * c);
  std::vector<std::size_t> idx(c);
  for (std::size_t i = 0; i < r; ++i) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const double* row = a->value.data() + i * c;
    std::stable_sort(idx.begin(), idx.end(),
                     [row](std::size_t x, std::size_t y) { return row[x] < row[y]; });
    for (std::size_t j = 0; j < c; ++j) {
      (*order)[i * c + j] = idx[j];
      out.at(i, j) = row[idx[j]];
    }
  }
  return Node::op(std::move(out), {{a, [r, c, order](const Tensor& g) {
                                      Tensor n({r, c});
                                      for (std::size_t i = 0; i < r; ++i)
                                        for (std::size_t j = 0; j < c; ++j)
                                          n.at(i, (*order)[i * c + j]) += g.at(i, j);
                                      return n;
                                    }}});
}

// out[:, j] = a[:, perm[j]] for a fixed column permutation
inline NodePtr permute_cols(const NodePtr& a, const std::vector<int>& perm) {
  std::vector<std::size_t> idx(perm.begin(), perm.end());
  return gather_cols(a, std::move(idx));
}

// ---------------------------------------------------------------------------
// backward
// ---------------------------------------------------------------------------

// Accumulates d(root)/d(leaf) into every requires_grad node reachable from
// root. Repeated calls without zeroing grads accumulate.
inline void backward(const NodePtr& root) {
  if (!root->value.is_scalar()) throw DimensionError("backward: root must be scalar");
  if (!root->needs_grad) return;

  // iterative post-order topological sort
  std::vector<Node*> topo;
  std::unordered_map<Node*, int> state;  // 0 unseen, 1 open, 2 done
  std::vector<Node*> stack{root.get()};
  while (!stack.empty()) {
    Node* n = stack.back();
    int& st = state[n];
    if (st == 0) {
      st = 1;
      for (const Edge& e : n->edges) {
        Node* p = e.parent.get();
        if (p->needs_grad && state[p] == 0) stack.push_back(p);
      }
    } else {
      stack.pop_back();
      if (st == 1) {
        st = 2;
        topo.push_back(n);
      }
    }
  }

  std::unordered_map<Node*, Tensor> adjoint;
  adjoint.reserve(topo.size());
  adjoint[root.get()] = Tensor::scalar(1.0);

  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    Node* n = *it;
    auto found = adjoint.find(n);
    if (found == adjoint.end()) continue;
    const Tensor& adj = found->second;
    for (const Edge& e : n->edges) {
      Tensor contrib = e.vjp(adj);
      Node* p = e.parent.get();
      auto [slot, fresh] = adjoint.try_emplace(p, std::move(contrib));
      if (!fresh) slot->second.add_inplace(contrib);
    }
  }

  for (Node* n : topo) {
    if (!n->requires_grad) continue;
    auto found = adjoint.find(n);
    if (found == adjoint.end()) continue;
    if (n->grad.empty()) n->grad = Tensor(n->value.shape());
    n->grad.add_inplace(found->second);
  }
}

inline void zero_grad(const std::vector<NodePtr>& params) {
  for (const auto& p : params) p->grad = Tensor();
}

}  // namespace sforge
