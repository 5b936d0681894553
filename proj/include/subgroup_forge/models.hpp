#pragma once

#include <memory>
#include <string>
#include <vector>

#include "subgroup_forge/datasets.hpp"
#include "subgroup_forge/mask_head.hpp"
#include "subgroup_forge/nets.hpp"

namespace sforge {

// A trainable regression model over batched features. The mask head, when
// present, is what discovery inspects after training.
class Model {
 public:
  virtual ~Model() = default;
  virtual NodePtr forward(const NodePtr& x) = 0;
  virtual std::vector<NodePtr> parameters() = 0;
  virtual NodePtr regularization() { return nullptr; }
  virtual const MaskHead* mask_head() const { return nullptr; }

  double eval1(const std::vector<double>& x) {
    return forward(constant(Tensor::row(x)))->value[0];
  }
};

using ModelPtr = std::unique_ptr<Model>;

struct ArchConfig {
  int hidden = 32;
  int features = 32;
  bool sum_product = true;
  int baseline_hidden = 64;
  int conv_channels = 8;
  int conv_kernel = 3;
  int glyph_hidden = 16;
};

namespace detail {

// proposed/known polynomial model: ZD mask head into the 2n-input
// cyclic-invariant head
class ZdMaskedModel : public Model {
 public:
  ZdMaskedModel(MaskHead head, CyclicPassThroughNet phi)
      : head_(std::move(head)), phi_(std::move(phi)) {}

  NodePtr forward(const NodePtr& x) override { return phi_.forward(head_.forward(x)); }

  std::vector<NodePtr> parameters() override {
    auto out = head_.parameters();
    auto p = phi_.parameters();
    out.insert(out.end(), p.begin(), p.end());
    return out;
  }

  NodePtr regularization() override { return head_.regularization(); }
  const MaskHead* mask_head() const override { return &head_; }

 private:
  MaskHead head_;
  CyclicPassThroughNet phi_;
};

class MlpModel : public Model {
 public:
  explicit MlpModel(SimpleFcNet net) : net_(std::move(net)) {}
  NodePtr forward(const NodePtr& x) override { return net_.forward(x); }
  std::vector<NodePtr> parameters() override { return net_.parameters(); }

 private:
  SimpleFcNet net_;
};

class ConvModel : public Model {
 public:
  explicit ConvModel(Conv1dNet net) : net_(std::move(net)) {}
  NodePtr forward(const NodePtr& x) override { return net_.forward(x); }
  std::vector<NodePtr> parameters() override { return net_.parameters(); }

 private:
  Conv1dNet net_;
};

// digit-sum: shared glyph scorer -> slot scores [N x n], then either the
// mask head + pass-through pool (proposed) or the true-slot Deep Sets oracle
class DigitScoreModel : public Model {
 public:
  DigitScoreModel(int n, int glyph_dim, Mlp scorer) : n_(n), glyph_dim_(glyph_dim),
                                                      scorer_(std::move(scorer)) {}

  NodePtr slot_scores(const NodePtr& x) {
    NodePtr scores;
    for (int slot = 0; slot < n_; ++slot) {
      NodePtr g = slice_cols(x, slot * glyph_dim_, (slot + 1) * glyph_dim_);
      NodePtr s = scorer_.forward(g);  // [N x 1]
      scores = scores ? concat_cols(scores, s) : s;
    }
    return scores;
  }

 protected:
  int n_;
  int glyph_dim_;
  Mlp scorer_;
};

class DigitProposedModel : public DigitScoreModel {
 public:
  DigitProposedModel(int n, int glyph_dim, Mlp scorer, MaskHead head, PassThroughPoolNet phi)
      : DigitScoreModel(n, glyph_dim, std::move(scorer)),
        head_(std::move(head)),
        phi_(std::move(phi)) {}

  NodePtr forward(const NodePtr& x) override {
    return phi_.forward(head_.forward(slot_scores(x)));
  }

  std::vector<NodePtr> parameters() override {
    auto out = scorer_.parameters();
    auto h = head_.parameters();
    auto p = phi_.parameters();
    out.insert(out.end(), h.begin(), h.end());
    out.insert(out.end(), p.begin(), p.end());
    return out;
  }

  NodePtr regularization() override { return head_.regularization(); }
  const MaskHead* mask_head() const override { return &head_; }

 private:
  MaskHead head_;
  PassThroughPoolNet phi_;
};

class DigitOracleModel : public DigitScoreModel {
 public:
  DigitOracleModel(int n, int glyph_dim, Mlp scorer, std::vector<int> true_indices,
                   DeepSetsNet ds)
      : DigitScoreModel(n, glyph_dim, std::move(scorer)),
        true_indices_(std::move(true_indices)),
        ds_(std::move(ds)) {}

  NodePtr forward(const NodePtr& x) override {
    std::vector<std::size_t> idx(true_indices_.begin(), true_indices_.end());
    return ds_.forward(gather_cols(slot_scores(x), std::move(idx)));
  }

  std::vector<NodePtr> parameters() override {
    auto out = scorer_.parameters();
    auto d = ds_.parameters();
    out.insert(out.end(), d.begin(), d.end());
    return out;
  }

 private:
  std::vector<int> true_indices_;
  DeepSetsNet ds_;
};

}  // namespace detail

// method in {"known", "proposed", "simple_fc", "conv1d"}
inline ModelPtr make_polynomial_model(const std::string& method, const PolynomialTask& task,
                                      const ArchConfig& arch, Rng& rng,
                                      double l1_penalty = 0.0) {
  const bool dihedral = false;
  if (method == "known") {
    MaskHead head = MaskHead::from_ideal(
        build_ideal(task.n, task.k, MaskVariant::ZD, task.cycle()));
    CyclicPassThroughNet phi(task.n, dihedral, rng, arch.sum_product, arch.hidden,
                             arch.features);
    return std::make_unique<detail::ZdMaskedModel>(std::move(head), std::move(phi));
  }
  if (method == "proposed") {
    MaskHead head = MaskHead::learnable(task.n, MaskVariant::ZD, rng, l1_penalty);
    CyclicPassThroughNet phi(task.n, dihedral, rng, arch.sum_product, arch.hidden,
                             arch.features);
    return std::make_unique<detail::ZdMaskedModel>(std::move(head), std::move(phi));
  }
  if (method == "simple_fc") {
    return std::make_unique<detail::MlpModel>(SimpleFcNet(task.n, rng, arch.baseline_hidden));
  }
  if (method == "conv1d") {
    return std::make_unique<detail::ConvModel>(
        Conv1dNet(task.n, rng, arch.conv_kernel, arch.conv_channels));
  }
  throw ParseError("unknown polynomial method '" + method + "'");
}

// method in {"oracle", "proposed", "simple_fc"}
inline ModelPtr make_digitsum_model(const std::string& method, const DigitSumTask& task,
                                    const ArchConfig& arch, Rng& rng,
                                    double l1_penalty = 0.0) {
  if (method == "oracle") {
    Mlp scorer({task.glyph_dim, arch.glyph_hidden, 1}, rng);
    DeepSetsNet ds(task.k, rng, arch.hidden);
    return std::make_unique<detail::DigitOracleModel>(task.n, task.glyph_dim,
                                                      std::move(scorer), task.indices(),
                                                      std::move(ds));
  }
  if (method == "proposed") {
    Mlp scorer({task.glyph_dim, arch.glyph_hidden, 1}, rng);
    MaskHead head = MaskHead::learnable(task.n, MaskVariant::Sk, rng, l1_penalty);
    PassThroughPoolNet phi(task.n, rng, arch.hidden);
    return std::make_unique<detail::DigitProposedModel>(task.n, task.glyph_dim,
                                                        std::move(scorer), std::move(head),
                                                        std::move(phi));
  }
  if (method == "simple_fc") {
    return std::make_unique<detail::MlpModel>(
        SimpleFcNet(task.feature_dim(), rng, arch.baseline_hidden));
  }
  throw ParseError("unknown digitsum method '" + method + "'");
}

}  // namespace sforge
