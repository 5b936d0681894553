#include <gtest/gtest.h>

#include "subgroup_forge/canonical.hpp"
#include "subgroup_forge/rng.hpp"
#include "subgroup_forge/subgroup.hpp"

using namespace sforge;

TEST(Gamma, PowerMapValues) {
  EXPECT_EQ(gamma(0.0, 4), (std::vector<double>{1, 0, 0, 0, 0}));
  EXPECT_EQ(gamma(1.0, 4), (std::vector<double>{1, 1, 1, 1, 1}));
  EXPECT_EQ(gamma(0.5, 2), (std::vector<double>{1, 0.5, 0.25}));
  EXPECT_THROW(gamma(0.5, 0), DimensionError);
}

TEST(Gamma, MonotoneInEachDegree) {
  // t < s implies t^j < s^j on (0,1) for j >= 1
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    double t = rng.uniform(0.01, 0.99);
    double s = rng.uniform(t + 1e-6, 1.0);
    const auto gt = gamma(t, 6), gs = gamma(s, 6);
    for (int j = 1; j <= 6; ++j) EXPECT_LT(gt[j], gs[j]);
  }
}

TEST(SumGammaPool, Examples) {
  EXPECT_EQ(sum_gamma_pool({0, 0, 0}), (std::vector<double>{3, 0, 0, 0}));

  const auto pooled = sum_gamma_pool({0.1, 0.9});
  ASSERT_EQ(pooled.size(), 3u);
  EXPECT_NEAR(pooled[0], 2.0, 1e-15);
  EXPECT_NEAR(pooled[1], 1.0, 1e-15);
  EXPECT_NEAR(pooled[2], 0.82, 1e-15);
}

TEST(SumGammaPool, BitwiseInvariantUnderShuffle) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(6);
    for (double& v : x) v = rng.uniform01();
    std::vector<double> y = x;
    rng.shuffle(y);
    EXPECT_EQ(sum_gamma_pool(x), sum_gamma_pool(y));
  }
}

TEST(EmbedSk0, ReducesToFullPoolAtKEqualsN) {
  Rng rng(13);
  std::vector<double> x(5);
  for (double& v : x) v = rng.uniform01();
  EXPECT_EQ(embed_sk0(x, 5), sum_gamma_pool(x));
}

TEST(EmbedSk0, Examples) {
  // n=3, k=2, x=[0,0,0.7] -> [2,0,0,0, 0.7]
  EXPECT_EQ(embed_sk0({0, 0, 0.7}, 2), (std::vector<double>{2, 0, 0, 0, 0.7}));
  EXPECT_THROW(embed_sk0({0.1, 0.2}, 3), DimensionError);
  EXPECT_THROW(embed_sk0({0.1, 0.2}, 0), DimensionError);
}

TEST(EmbedSk0, ExactInvarianceOverAllHeadPermutations) {
  // bitwise equality across all k! arrangements of the first k coordinates
  Rng rng(17);
  for (int k = 2; k <= 6; ++k) {
    const int n = k + 2;
    SubgroupSpec head = SubgroupSpec::s_k_on([k] {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      return idx;
    }(), n);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(n);
      for (double& v : x) v = rng.uniform01();
      const auto base = embed_sk0(x, k);
      for_each_element(head, [&](const Permutation& g) {
        EXPECT_EQ(embed_sk0(g.apply(x), k), base);
      });
      if (HasFailure()) return;
    }
  }
}

TEST(EmbedSk0, DistinguishesDifferentHeadMultisets) {
  // power sums t + t^2 separate {0, 0.5} from {0.25, 0.25}
  const auto a = embed_sk0({0.0, 0.5, 0.3}, 2);
  const auto b = embed_sk0({0.25, 0.25, 0.3}, 2);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::fabs(a[i] - b[i]));
  EXPECT_GT(diff, 1e-3);
}

TEST(Injectivity, CertificatePassesSmallGrids) {
  const InjectivityReport full = injectivity_certificate(3, 3, 0.1);
  EXPECT_TRUE(full.passed);
  EXPECT_EQ(full.points, 1331u);
  EXPECT_FALSE(full.counterexample.has_value());

  const InjectivityReport partial = injectivity_certificate(3, 2, 0.25);
  EXPECT_TRUE(partial.passed);
}

TEST(Injectivity, GridCapEnforced) {
  EXPECT_THROW(injectivity_certificate(8, 8, 0.05), CapacityError);
}

TEST(Injectivity, EqualMultisetsEmbedEqually) {
  const auto a = embed_sk0({0.2, 0.8, 0.5}, 2);
  const auto b = embed_sk0({0.8, 0.2, 0.5}, 2);
  EXPECT_EQ(a, b);
}
