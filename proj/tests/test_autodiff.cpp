#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "subgroup_forge/adam.hpp"
#include "subgroup_forge/autodiff.hpp"
#include "subgroup_forge/tensor.hpp"
#include "test_util.hpp"

using namespace sforge;
using sforge::test::max_grad_error;
using sforge::test::random_tensor;

TEST(Tensor, ShapeAndAccess) {
  Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.cols(), 3u);
  EXPECT_DOUBLE_EQ(t.at(1, 2), 6.0);
  EXPECT_THROW(Tensor({2, 2}, {1, 2, 3}), DimensionError);
}

TEST(Tensor, CsvRoundTrip) {
  Rng rng(7);
  Tensor t = random_tensor(5, 4, rng);
  std::stringstream ss;
  write_tensor_csv(t, ss);
  Tensor back = read_tensor_csv(ss);
  EXPECT_EQ(t, back);
}

TEST(Tensor, BinaryRoundTrip) {
  Rng rng(8);
  Tensor t = random_tensor(3, 7, rng, -100.0, 100.0);
  std::stringstream ss;
  write_tensor_binary(t, ss);
  Tensor back = read_tensor_binary(ss);
  EXPECT_EQ(t, back);
}

TEST(Autodiff, TanhAtZero) {
  NodePtr x = param(Tensor::zeros(1, 4));
  NodePtr y = tanh(x);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(y->value[i], 0.0);
  backward(sum_all(y));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(x->grad[i], 1.0);
}

TEST(Autodiff, MatmulIdentity) {
  NodePtr i2 = constant(Tensor::identity(2));
  NodePtr b = constant(Tensor({2, 3}, {1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(matmul(i2, b)->value, b->value);
}

TEST(Autodiff, SumOfSquaresGradient) {
  // d/dx sum(x * x) at [1,2,3] = [2,4,6]; oracle is central differences
  NodePtr x = param(Tensor::row({1, 2, 3}));
  backward(sum_all(mul(x, x)));
  EXPECT_DOUBLE_EQ(x->grad[0], 2.0);
  EXPECT_DOUBLE_EQ(x->grad[1], 4.0);
  EXPECT_DOUBLE_EQ(x->grad[2], 6.0);
  const double err = max_grad_error({x}, [&] { return sum_all(mul(x, x)); });
  EXPECT_LT(err, 1e-4);
}

TEST(Autodiff, BackwardRequiresScalarRoot) {
  NodePtr x = param(Tensor::row({1, 2}));
  EXPECT_THROW(backward(tanh(x)), DimensionError);
}

TEST(Autodiff, ConstantRootLeavesGradsZero) {
  NodePtr w = param(Tensor::row({1.0}));
  NodePtr root = constant(Tensor::scalar(3.0));
  backward(root);
  EXPECT_TRUE(w->grad.empty());
}

TEST(Autodiff, LinearInWeights) {
  Rng rng(3);
  NodePtr w = param(random_tensor(3, 2, rng));
  NodePtr x = constant(random_tensor(4, 3, rng));
  const double err = max_grad_error({w}, [&] { return sum_all(matmul(x, w)); });
  EXPECT_LT(err, 1e-4);
}

TEST(Autodiff, RepeatedBackwardAccumulates) {
  NodePtr x = param(Tensor::row({2.0}));
  NodePtr root = sum_all(mul(x, x));
  backward(root);
  backward(root);
  EXPECT_DOUBLE_EQ(x->grad[0], 8.0);  // 2 * (2x)
}

TEST(Autodiff, ShapeMismatchThrows) {
  NodePtr a = param(Tensor::zeros(2, 3));
  NodePtr b = param(Tensor::zeros(3, 3));
  EXPECT_THROW(add(a, b), DimensionError);
  EXPECT_THROW(mul(a, b), DimensionError);
  EXPECT_THROW(matmul(b, a), DimensionError);
  EXPECT_THROW(slice_cols(a, 2, 5), DimensionError);
}

TEST(Autodiff, EveryOpPassesFiniteDifferences) {
  Rng rng(11);
  double worst = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    // inputs kept away from |v| < 0.05 so abs/relu kinks are not straddled
    auto sample = [&rng](std::size_t r, std::size_t c) {
      Tensor t({r, c});
      for (std::size_t i = 0; i < t.numel(); ++i) {
        double v = rng.uniform(0.05, 1.0);
        t[i] = rng.uniform01() < 0.5 ? -v : v;
      }
      return t;
    };
    NodePtr a = param(sample(3, 4));
    NodePtr b = param(sample(3, 4));
    NodePtr m = param(sample(4, 5));
    NodePtr bias = param(sample(1, 4));
    const Tensor weights = sample(3, 4);

    auto weighted = [&](NodePtr v) {
      // fixed random projection to a scalar so every output entry matters
      NodePtr w = constant(Tensor::ones(v->value.rows(), v->value.cols()));
      return sum_all(mul(v, w));
    };

    std::vector<std::pair<const char*, std::function<NodePtr()>>> cases = {
        {"add", [&] { return weighted(add(a, b)); }},
        {"sub", [&] { return weighted(sub(a, b)); }},
        {"mul", [&] { return weighted(mul(a, b)); }},
        {"scale", [&] { return weighted(scale(a, -1.7)); }},
        {"matmul", [&] { return weighted(matmul(a, m)); }},
        {"matmul_nt", [&] { return weighted(matmul_nt(a, b)); }},
        {"tanh", [&] { return weighted(tanh(a)); }},
        {"relu", [&] { return weighted(relu(a)); }},
        {"abs", [&] { return weighted(abs(a)); }},
        {"power3", [&] { return weighted(power(a, 3)); }},
        {"sum_axis0", [&] { return weighted(sum_axis(a, 0)); }},
        {"sum_axis1", [&] { return weighted(sum_axis(a, 1)); }},
        {"mean", [&] { return mean(a); }},
        {"add_row_vector", [&] { return weighted(add_row_vector(a, bias)); }},
        {"concat_cols", [&] { return weighted(concat_cols(a, b)); }},
        {"slice_cols", [&] { return weighted(slice_cols(a, 1, 3)); }},
        {"gather_cols", [&] { return weighted(gather_cols(a, {2, 0, 2})); }},
        {"sort_rows", [&] { return weighted(sort_rows(a)); }},
        {"permute_cols", [&] { return weighted(permute_cols(a, {3, 2, 1, 0})); }},
    };
    for (auto& [name, build] : cases) {
      const double err = max_grad_error({a, b, m, bias}, build);
      EXPECT_LT(err, 1e-4) << name << " instance " << inst;
      worst = std::max(worst, err);
    }
  }
  RecordProperty("worst_grad_error", testing::PrintToString(worst));
}

TEST(Autodiff, TwoLayerMlpMatchesFiniteDifferences) {
  Rng rng(21);
  for (int inst = 0; inst < 5; ++inst) {
    NodePtr w1 = param(random_tensor(4, 8, rng, -0.5, 0.5));
    NodePtr b1 = param(random_tensor(1, 8, rng, -0.5, 0.5));
    NodePtr w2 = param(random_tensor(8, 1, rng, -0.5, 0.5));
    NodePtr b2 = param(random_tensor(1, 1, rng, -0.5, 0.5));
    NodePtr x = constant(random_tensor(6, 4, rng));
    auto build = [&] {
      NodePtr h = tanh(add_row_vector(matmul(x, w1), b1));
      NodePtr out = add_row_vector(matmul(h, w2), b2);
      return mean(mul(out, out));
    };
    EXPECT_LT(max_grad_error({w1, b1, w2, b2}, build), 1e-4);
  }
}

TEST(Autodiff, SortRowsSortsAndRoutesGradients) {
  NodePtr x = param(Tensor({2, 3}, {3, 1, 2, 5, 6, 4}));
  NodePtr s = sort_rows(x);
  EXPECT_EQ(s->value, Tensor({2, 3}, {1, 2, 3, 4, 5, 6}));
  // pick out the largest entry of each row: grads go to positions of 3 and 6
  backward(sum_all(slice_cols(s, 2, 3)));
  EXPECT_EQ(x->grad, Tensor({2, 3}, {1, 0, 0, 0, 1, 0}));
}

TEST(Autodiff, ForwardDeterminism) {
  Rng rng1(99), rng2(99);
  Tensor a1 = random_tensor(5, 5, rng1), a2 = random_tensor(5, 5, rng2);
  EXPECT_EQ(a1, a2);
  NodePtr r1 = tanh(matmul(constant(a1), constant(a1)));
  NodePtr r2 = tanh(matmul(constant(a2), constant(a2)));
  EXPECT_EQ(r1->value, r2->value);
}

TEST(Adam, ZeroGradientLeavesParamsUnchanged) {
  std::vector<NodePtr> params{param(Tensor::row({1.5, -2.0}))};
  AdamState state;
  state.init(params);
  const Tensor before = params[0]->value;
  adam_step(params, state);  // no backward ran; grad empty = zero
  EXPECT_EQ(params[0]->value, before);
}

TEST(Adam, DescendsOnQuadratic) {
  std::vector<NodePtr> params{param(Tensor::scalar(1.0))};
  AdamState state;
  state.lr = 0.1;
  state.init(params);
  NodePtr loss = mul(params[0], params[0]);
  zero_grad(params);
  backward(loss);
  adam_step(params, state);
  EXPECT_LT(params[0]->value[0], 1.0);
}

TEST(Adam, ConvergesAndMatchesScalarRecurrence) {
  // f(w) = (w-3)^2 for 200 steps; the oracle is the same recurrence run on
  // plain doubles, independent of the graph machinery
  std::vector<NodePtr> params{param(Tensor::scalar(0.0))};
  AdamState state;
  state.lr = 0.1;
  state.init(params);

  double w = 0.0, m = 0.0, v = 0.0;
  for (int t = 1; t <= 200; ++t) {
    NodePtr diff = add_scalar(params[0], -3.0);
    NodePtr loss = mul(diff, diff);
    zero_grad(params);
    backward(loss);
    adam_step(params, state);

    const double g = 2.0 * (w - 3.0);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mhat = m / (1.0 - std::pow(0.9, t));
    const double vhat = v / (1.0 - std::pow(0.999, t));
    w -= 0.1 * mhat / (std::sqrt(vhat) + 1e-8);
  }
  EXPECT_NEAR(params[0]->value[0], w, 1e-12);
  EXPECT_LT(std::fabs(params[0]->value[0] - 3.0), 1e-2);
}
