#include <gtest/gtest.h>

#include <cmath>

#include "subgroup_forge/discovery.hpp"
#include "subgroup_forge/mask_head.hpp"
#include "subgroup_forge/rng.hpp"
#include "subgroup_forge/training.hpp"

using namespace sforge;

TEST(Estimate, IdealZdMaskRecoversIndices) {
  const Tensor m = build_ideal(16, 4, MaskVariant::ZD, {0, 1, 2, 3}).mask_m();
  IndexEstimate est = estimate_indices(m, {0, 1, 2, 3});
  EXPECT_EQ(est.estimated_indices, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_TRUE(est.success);
  EXPECT_FALSE(est.tie_warning);
  EXPECT_DOUBLE_EQ(est.column_l1[0], 4.0);
  EXPECT_DOUBLE_EQ(est.threshold, 1.0);
}

TEST(Estimate, MeanThresholdExample) {
  // column L1 norms [2.0, 0.1, 1.8, 0.2] -> threshold 1.025 -> {0, 2}
  const Tensor m = Tensor::row({2.0, 0.1, 1.8, 0.2});
  IndexEstimate est = estimate_indices(m, {0, 2});
  EXPECT_DOUBLE_EQ(est.threshold, 1.025);
  EXPECT_EQ(est.estimated_indices, (std::vector<int>{0, 2}));
  EXPECT_TRUE(est.success);
}

TEST(Estimate, AllZeroMatrixEstimatesEmpty) {
  const Tensor m = Tensor::zeros(4, 4);
  IndexEstimate est = estimate_indices(m, {0, 1});
  EXPECT_TRUE(est.estimated_indices.empty());
  EXPECT_FALSE(est.success);
  EXPECT_TRUE(est.tie_warning);

  IndexEstimate est_empty_truth = estimate_indices(m, {});
  EXPECT_TRUE(est_empty_truth.success);
}

TEST(Estimate, NonFiniteRejected) {
  Tensor m = Tensor::zeros(2, 2);
  m[3] = std::nan("");
  EXPECT_THROW(estimate_indices(m, {0}), DimensionError);
}

TEST(Estimate, PositiveScalingInvariance) {
  Rng rng(5);
  Tensor m({6, 6});
  for (std::size_t i = 0; i < m.numel(); ++i) m[i] = rng.uniform(-1.0, 1.0);
  IndexEstimate base = estimate_indices(m, {0});
  Tensor scaled = m;
  scaled.scale_inplace(3.7);
  IndexEstimate s = estimate_indices(scaled, {0});
  EXPECT_EQ(s.estimated_indices, base.estimated_indices);
  EXPECT_NEAR(s.threshold, 3.7 * base.threshold, 1e-12);
}

TEST(Estimate, RowPermutationInvariance) {
  Rng rng(6);
  Tensor m({6, 6});
  for (std::size_t i = 0; i < m.numel(); ++i) m[i] = rng.uniform(-1.0, 1.0);
  std::vector<int> perm{3, 1, 5, 0, 2, 4};
  Tensor pm({6, 6});
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) pm.at(i, j) = m.at(perm[i], j);
  IndexEstimate a = estimate_indices(m, {0});
  IndexEstimate b = estimate_indices(pm, {0});
  EXPECT_EQ(a.column_l1, b.column_l1);
  EXPECT_EQ(a.estimated_indices, b.estimated_indices);
}

TEST(Estimate, JsonRoundTrip) {
  const Tensor m = Tensor::row({2.0, 0.1, 1.8, 0.2});
  IndexEstimate est = estimate_indices(m, {0, 2});
  est.complement_column_l1 = {1.0, 0.9, 0.8, 0.7};
  IndexEstimate back = index_estimate_from_json(to_json(est));
  EXPECT_EQ(back.estimated_indices, est.estimated_indices);
  EXPECT_EQ(back.column_l1, est.column_l1);
  EXPECT_EQ(back.complement_column_l1, est.complement_column_l1);
  EXPECT_EQ(back.success, est.success);
}

TEST(Accuracy, CountsExactMatches) {
  const Tensor good = build_ideal(8, 2, MaskVariant::ZD, {0, 1}).mask_m();
  const Tensor bad = Tensor::zeros(8, 8);
  std::vector<IndexEstimate> ests;
  for (int i = 0; i < 7; ++i) ests.push_back(estimate_indices(good, {0, 1}));
  for (int i = 0; i < 3; ++i) ests.push_back(estimate_indices(bad, {0, 1}));
  EXPECT_DOUBLE_EQ(estimation_accuracy(ests), 70.0);

  std::vector<IndexEstimate> all_good(ests.begin(), ests.begin() + 7);
  EXPECT_DOUBLE_EQ(estimation_accuracy(all_good), 100.0);
  EXPECT_THROW(estimation_accuracy(std::vector<IndexEstimate>{}), DimensionError);
}

TEST(Refit, EmptyEstimateSkips) {
  IndexEstimate est;  // empty estimated_indices
  PolynomialTask task{8, 4, {}, {8, 8, 8}};
  TrainConfig cfg;
  cfg.epochs = 5;
  RefitResult r = refit_with_estimate(est, task, cfg);
  EXPECT_TRUE(r.skipped);
  EXPECT_EQ(r.note, "empty estimate");
}

TEST(Refit, NonDivisorEstimateSkips) {
  IndexEstimate est;
  est.estimated_indices = {0, 1, 2};
  PolynomialTask task{8, 4, {}, {8, 8, 8}};
  TrainConfig cfg;
  cfg.epochs = 5;
  RefitResult r = refit_with_estimate(est, task, cfg);
  EXPECT_TRUE(r.skipped);
  EXPECT_NE(r.note.find("does not divide"), std::string::npos);
}

TEST(Refit, CorrectEstimateTrainsFrozenModel) {
  IndexEstimate est;
  est.estimated_indices = {0, 1};
  PolynomialTask task{4, 2, {}, {16, 8, 8}};
  TrainConfig cfg;
  cfg.epochs = 30;
  ArchConfig arch;
  arch.hidden = 8;
  arch.features = 8;
  RefitResult r = refit_with_estimate(est, task, cfg, arch);
  EXPECT_FALSE(r.skipped);
  EXPECT_FALSE(r.report.failed);
  EXPECT_TRUE(r.report.has_estimate);
  // the frozen ideal mask trivially re-estimates its own indices
  EXPECT_TRUE(r.report.estimate.success);
}

TEST(Refit, AllIndicesEstimateIsWholeGroupModel) {
  IndexEstimate est;
  est.estimated_indices = {0, 1, 2, 3};
  PolynomialTask task{4, 4, {}, {8, 8, 8}};
  TrainConfig cfg;
  cfg.epochs = 5;
  ArchConfig arch;
  arch.hidden = 8;
  arch.features = 8;
  RefitResult r = refit_with_estimate(est, task, cfg, arch);
  EXPECT_FALSE(r.skipped);
}
