#include <gtest/gtest.h>

#include <set>

#include "subgroup_forge/linear_map.hpp"
#include "subgroup_forge/mask_head.hpp"
#include "subgroup_forge/rng.hpp"
#include "subgroup_forge/subgroup.hpp"

using namespace sforge;

namespace {

std::set<std::vector<int>> element_set(const SubgroupSpec& spec) {
  std::set<std::vector<int>> out;
  for_each_element(spec, [&out](const Permutation& p) { out.insert(p.mapping()); });
  return out;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(Permutation, ApplyExamples) {
  Permutation id3 = Permutation::identity(3);
  std::vector<double> x{0.1, 0.2, 0.3};
  EXPECT_EQ(id3.apply(x), x);

  // Z_3 generator sends [a,b,c] -> [b,c,a]
  Permutation shift = detail::cycle_generator({0, 1, 2}, 3);
  EXPECT_EQ(shift.apply(std::vector<double>{1, 2, 3}), (std::vector<double>{2, 3, 1}));

  Permutation swap01 = Permutation::swap_of(3, 0, 1);
  EXPECT_EQ(swap01.apply(std::vector<double>{5, 7, 9}), (std::vector<double>{7, 5, 9}));

  EXPECT_THROW(swap01.apply(std::vector<double>{1, 2}), DimensionError);
  EXPECT_THROW(Permutation({0, 0, 1}), DimensionError);
}

TEST(Permutation, ComposeInverseIdentity) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> m = iota_vec(8);
    rng.shuffle(m);
    Permutation p(m);
    EXPECT_TRUE(compose(p, p.inverse()).is_identity());
    EXPECT_TRUE(compose(p.inverse(), p).is_identity());
  }
}

TEST(Permutation, ActionCompatibility) {
  // apply(p o q, x) == apply(p, apply(q, x)) for 1000 random triples
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> mp = iota_vec(6), mq = iota_vec(6);
    rng.shuffle(mp);
    rng.shuffle(mq);
    Permutation p(mp), q(mq);
    std::vector<double> x(6);
    for (double& v : x) v = rng.uniform01();
    EXPECT_EQ(compose(p, q).apply(x), p.apply(q.apply(x)));
  }
}

TEST(Subgroup, EnumerationOrders) {
  EXPECT_EQ(enumerate(SubgroupSpec::z_k_on({0, 1, 2, 3}, 16)).size(), 4u);
  EXPECT_EQ(enumerate(SubgroupSpec::d_2k_on({0, 1, 2}, 3)).size(), 6u);
  EXPECT_EQ(enumerate(SubgroupSpec::s_k_on({0, 1, 2}, 5)).size(), 6u);
  EXPECT_EQ(enumerate(SubgroupSpec::a_k_on({0, 1, 2, 3}, 4)).size(), 12u);
  EXPECT_EQ(enumerate(SubgroupSpec::s_full(4)).size(), 24u);
  EXPECT_EQ(enumerate(SubgroupSpec::trivial(9)).size(), 1u);
}

TEST(Subgroup, GroupAxiomsHold) {
  const std::vector<SubgroupSpec> specs = {
      SubgroupSpec::s_full(4),
      SubgroupSpec::s_k_on({1, 3, 5, 6}, 7),
      SubgroupSpec::z_k_on({2, 0, 5}, 6),
      SubgroupSpec::z_k_on(iota_vec(16), 16),
      SubgroupSpec::d_2k_on({4, 1, 2, 3}, 5),
      SubgroupSpec::a_k_on({0, 2, 4, 6}, 7),
      SubgroupSpec::s_k_on(iota_vec(7), 7),  // order 5040, the audit bound
  };
  for (const auto& spec : specs) {
    const auto elems = enumerate(spec);
    EXPECT_EQ(elems.size(), spec.order()) << spec.label();
    EXPECT_TRUE(is_group(elems)) << spec.label();
  }
}

TEST(Subgroup, EnumerationCap) {
  EXPECT_THROW(enumerate(SubgroupSpec::s_full(11)), CapacityError);
  EXPECT_THROW(enumerate(SubgroupSpec::s_full(5), 10), CapacityError);
  EXPECT_NO_THROW(enumerate(SubgroupSpec::s_full(5), 120));
}

TEST(Subgroup, DihedralNeedsAtLeastThree) {
  EXPECT_THROW(SubgroupSpec::d_2k_on({0, 1}, 4), DimensionError);
}

TEST(Subgroup, ConjugationExamples) {
  // conjugate(S_2 on {0,1}, swap(1,2)) = S_2 on {0,2}
  SubgroupSpec s2 = SubgroupSpec::s_k_on({0, 1}, 3);
  Permutation g = Permutation::swap_of(3, 1, 2);
  EXPECT_EQ(element_set(conjugate_subgroup(s2, g)),
            element_set(SubgroupSpec::s_k_on({0, 2}, 3)));

  // identity conjugation preserves the element set
  SubgroupSpec d = SubgroupSpec::d_2k_on({0, 1, 2, 3}, 6);
  EXPECT_EQ(element_set(conjugate_subgroup(d, Permutation::identity(6))), element_set(d));

  // conjugation preserves order
  Rng rng(23);
  SubgroupSpec z3 = SubgroupSpec::z_k_on({0, 1, 2}, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> m = iota_vec(5);
    rng.shuffle(m);
    SubgroupSpec conj = conjugate_subgroup(z3, Permutation(m));
    EXPECT_EQ(conj.order(), 3u);
    EXPECT_TRUE(is_group(enumerate(conj)));
  }
}

TEST(Subgroup, ConjugationIsHomomorphism) {
  // (g h1 g^-1)(g h2 g^-1) = g (h1 h2) g^-1
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> mg = iota_vec(6), m1 = iota_vec(6), m2 = iota_vec(6);
    rng.shuffle(mg);
    rng.shuffle(m1);
    rng.shuffle(m2);
    Permutation g(mg), h1(m1), h2(m2);
    const Permutation gi = g.inverse();
    auto conj = [&](const Permutation& h) { return compose(compose(g, h), gi); };
    EXPECT_EQ(compose(conj(h1), conj(h2)), conj(compose(h1, h2)));
  }
}

TEST(Subgroup, JsonRoundTrip) {
  nlohmann::json j = {{"family", "Zk"}, {"cycle", {0, 1, 2, 3}}, {"n", 16}};
  SubgroupSpec spec = subgroup_from_json(j);
  EXPECT_EQ(spec.family(), SubgroupFamily::Zk);
  EXPECT_EQ(spec.degree(), 16);
  EXPECT_EQ(to_json(spec), j);

  SubgroupSpec conj = conjugate_subgroup(spec, Permutation::swap_of(16, 0, 9));
  SubgroupSpec back = subgroup_from_json(to_json(conj));
  EXPECT_EQ(element_set(back), element_set(conj));

  EXPECT_THROW(subgroup_from_json(nlohmann::json{{"family", "Zk"}, {"n", 4}}), ParseError);
  EXPECT_THROW(subgroup_from_json(nlohmann::json{{"family", "nope"}, {"n", 4}}), ParseError);
}

TEST(LinearMap, ApplyShapes) {
  LinearMap m = LinearMap::identity(3);
  std::vector<double> x{1, 2, 3};
  EXPECT_EQ(m.apply(x), x);
  EXPECT_THROW(m.apply(std::vector<double>{1, 2}), DimensionError);
}

TEST(Theorem45, IdealCyclicStackPasses) {
  // H = Z_4 on the first 4 of 16, G = Z_16, M = the stacked-selector map
  SubgroupSpec h = SubgroupSpec::z_k_on({0, 1, 2, 3}, 16);
  SubgroupSpec g = SubgroupSpec::z_k_on(iota_vec(16), 16);
  LinearMap m = ideal_zd_m(build_ideal(16, 4, MaskVariant::ZD, {0, 1, 2, 3}));
  // H acts on R^16 here, so the checker wants M as a 16x16 map
  Theorem45Report report = check_theorem45(h, g, m);
  EXPECT_TRUE(report.cond1);
  EXPECT_TRUE(report.cond2);
  EXPECT_FALSE(report.degenerate_mask);
}

TEST(Theorem45, IdealSkStackPasses) {
  // H = S_2 on the first 2 of 4, G = permutations of the pooled block of the
  // 2n-dimensional head output, M = [I-M; M] of the diagonal selector
  SubgroupSpec h = SubgroupSpec::s_k_on({0, 1}, 4);
  SubgroupSpec g = SubgroupSpec::s_k_on({4, 5, 6, 7}, 8);
  LinearMap mhat = ideal_sk_mhat(build_ideal(4, 2, MaskVariant::Sk, {0, 1}));
  Theorem45Report report = check_theorem45(h, g, mhat);
  EXPECT_TRUE(report.cond1);
  EXPECT_TRUE(report.cond2);
}

TEST(Theorem45, TrivialSubgroupAlwaysSatisfiesCond1) {
  SubgroupSpec h = SubgroupSpec::trivial(4);
  SubgroupSpec g = SubgroupSpec::z_k_on(iota_vec(16), 16);
  Rng rng(41);
  LinearMap m(16, 4);
  for (double& v : m.entries) v = rng.uniform01();
  EXPECT_TRUE(check_theorem45(h, g, m).cond1);
}

TEST(Theorem45, RandomDenseMaskFailsWithWitness) {
  SubgroupSpec h = SubgroupSpec::z_k_on({0, 1, 2, 3}, 16);
  SubgroupSpec g = SubgroupSpec::z_k_on(iota_vec(16), 16);
  Rng rng(43);
  LinearMap m(16, 16);
  for (double& v : m.entries) v = rng.uniform01();
  Theorem45Report report = check_theorem45(h, g, m);
  EXPECT_FALSE(report.cond1);
  ASSERT_TRUE(report.cond1_witness.has_value());
  EXPECT_FALSE(report.cond1_witness->is_identity());
}

TEST(Theorem45, AllZeroMaskFlagsWarning) {
  SubgroupSpec h = SubgroupSpec::z_k_on({0, 1}, 4);
  SubgroupSpec g = SubgroupSpec::z_k_on({0, 1, 2, 3}, 4);
  Theorem45Report report = check_theorem45(h, g, LinearMap(4, 4));
  EXPECT_TRUE(report.degenerate_mask);
}

TEST(Theorem45, DegreeMismatchThrows) {
  SubgroupSpec h = SubgroupSpec::z_k_on({0, 1}, 4);
  SubgroupSpec g = SubgroupSpec::z_k_on({0, 1, 2}, 3);
  EXPECT_THROW(check_theorem45(h, g, LinearMap(4, 4)), DimensionError);
}
