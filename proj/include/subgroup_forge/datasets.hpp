#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subgroup_forge/rng.hpp"
#include "subgroup_forge/subgroup.hpp"
#include "subgroup_forge/tensor.hpp"

namespace sforge {

struct SplitSizes {
  int train = 64;
  int val = 480;
  int test = 4800;
};

// Cyclic polynomial sum_j x_{c(j)} * x_{c(j+1)}^2 over an ordered k-cycle of
// the n coordinates; exactly Z_k-invariant on the cycle.
struct PolynomialTask {
  int n = 10;
  int k = 5;
  std::vector<int> cycle_indices;  // defaults to 0..k-1 when empty
  SplitSizes splits;

  std::vector<int> cycle() const {
    if (!cycle_indices.empty()) return cycle_indices;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    return c;
  }

  double eval(const std::vector<double>& x) const {
    const std::vector<int> c = cycle();
    double y = 0.0;
    for (int j = 0; j < k; ++j) {
      const double b = x[c[(j + 1) % k]];
      y += x[c[j]] * b * b;
    }
    return y;
  }

  SubgroupSpec subgroup() const { return SubgroupSpec::z_k_on(cycle(), n); }

  std::string label() const { return "Z" + std::to_string(k) + ":Z" + std::to_string(n); }
};

// Multiset digit-sum surrogate: each slot carries a digit glyph (one-hot of
// the digit into glyph_dim plus Gaussian noise); the target is the digit sum
// over true_indices, normalized to [0,1] by 9k.
struct DigitSumTask {
  int n = 10;
  int k = 5;
  std::vector<int> true_indices;  // defaults to 0..k-1 when empty
  int glyph_dim = 16;
  double noise_sigma = 0.1;
  SplitSizes splits{2048, 512, 2048};

  std::vector<int> indices() const {
    if (!true_indices.empty()) return true_indices;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    return c;
  }

  int feature_dim() const { return n * glyph_dim; }

  // the slot-level symmetry: S_k on the summed slots
  SubgroupSpec subgroup() const { return SubgroupSpec::s_k_on(indices(), n); }

  std::string label() const { return "S" + std::to_string(k) + ":n" + std::to_string(n); }
};

struct Dataset {
  Tensor features;  // [N x d]
  Tensor targets;   // [N x 1]

  int size() const { return static_cast<int>(features.rows()); }
};

struct SplitDatasets {
  Dataset train, val, test;
};

namespace detail {

inline Dataset gen_polynomial_split(const PolynomialTask& task, int count,
                                    std::uint64_t seed) {
  Rng rng(seed);
  Dataset ds;
  ds.features = Tensor({static_cast<std::size_t>(count), static_cast<std::size_t>(task.n)});
  ds.targets = Tensor({static_cast<std::size_t>(count), 1});
  std::vector<double> x(task.n);
  for (int s = 0; s < count; ++s) {
    for (int i = 0; i < task.n; ++i) {
      x[i] = rng.uniform01();
      ds.features.at(s, i) = x[i];
    }
    ds.targets.at(s, 0) = task.eval(x);
  }
  return ds;
}

inline Dataset gen_digitsum_split(const DigitSumTask& task, int count, std::uint64_t seed) {
  if (task.glyph_dim < 10) throw DimensionError("digitsum: glyph_dim must be >= 10");
  Rng rng(seed);
  const std::vector<int> idx = task.indices();
  Dataset ds;
  ds.features = Tensor({static_cast<std::size_t>(count),
                        static_cast<std::size_t>(task.feature_dim())});
  ds.targets = Tensor({static_cast<std::size_t>(count), 1});
  for (int s = 0; s < count; ++s) {
    int sum = 0;
    for (int slot = 0; slot < task.n; ++slot) {
      const int digit = static_cast<int>(rng.uniform_index(10));
      for (int j = 0; j < task.glyph_dim; ++j) {
        double v = (j == digit ? 1.0 : 0.0) + task.noise_sigma * rng.normal();
        ds.features.at(s, slot * task.glyph_dim + j) = v;
      }
      for (int t : idx) {
        if (t == slot) sum += digit;
      }
    }
    ds.targets.at(s, 0) = static_cast<double>(sum) / (9.0 * task.k);
  }
  return ds;
}

}  // namespace detail

// Separate RNG streams per split keep the splits disjoint by construction.
inline SplitDatasets gen_polynomial(const PolynomialTask& task, std::uint64_t seed) {
  SplitDatasets out;
  out.train = detail::gen_polynomial_split(task, task.splits.train, derive_seed(seed, 0));
  out.val = detail::gen_polynomial_split(task, task.splits.val, derive_seed(seed, 1));
  out.test = detail::gen_polynomial_split(task, task.splits.test, derive_seed(seed, 2));
  return out;
}

inline SplitDatasets gen_digitsum(const DigitSumTask& task, std::uint64_t seed) {
  SplitDatasets out;
  out.train = detail::gen_digitsum_split(task, task.splits.train, derive_seed(seed, 0));
  out.val = detail::gen_digitsum_split(task, task.splits.val, derive_seed(seed, 1));
  out.test = detail::gen_digitsum_split(task, task.splits.test, derive_seed(seed, 2));
  return out;
}

// Brute-force audit that every sample's target is invariant under the task's
// declared subgroup acting on the features. For digit-sum the group acts on
// whole slots (blocks of glyph_dim).
inline double invariance_audit_polynomial(const PolynomialTask& task, const Dataset& ds) {
  double worst = 0.0;
  const auto elems = enumerate(task.subgroup());
  std::vector<double> x(task.n);
  for (int s = 0; s < ds.size(); ++s) {
    for (int i = 0; i < task.n; ++i) x[i] = ds.features.at(s, i);
    for (const auto& g : elems) {
      const double y = task.eval(g.apply(x));
      worst = std::max(worst, std::fabs(y - ds.targets.at(s, 0)));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// CSV + JSON sidecar
// ---------------------------------------------------------------------------

inline void write_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot open for writing: " + path);
  for (int s = 0; s < ds.size(); ++s) {
    for (std::size_t j = 0; j < ds.features.cols(); ++j) {
      os << format_double(ds.features.at(s, j)) << ',';
    }
    os << format_double(ds.targets.at(s, 0)) << "\r\n";
  }
}

inline Dataset read_dataset_csv(const std::string& path) {
  Tensor all = read_tensor_csv_file(path);
  if (all.cols() < 2) throw ParseError("dataset csv: need features and a target column");
  Dataset ds;
  const std::size_t d = all.cols() - 1;
  ds.features = Tensor({all.rows(), d});
  ds.targets = Tensor({all.rows(), 1});
  for (std::size_t i = 0; i < all.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) ds.features.at(i, j) = all.at(i, j);
    ds.targets.at(i, 0) = all.at(i, d);
  }
  return ds;
}

inline nlohmann::json to_json(const PolynomialTask& t) {
  return {{"type", "polynomial"}, {"n", t.n},       {"k", t.k},
          {"cycle_indices", t.cycle()},             {"train_size", t.splits.train},
          {"val_size", t.splits.val},               {"test_size", t.splits.test}};
}

inline nlohmann::json to_json(const DigitSumTask& t) {
  return {{"type", "digitsum"},   {"n", t.n},
          {"k", t.k},             {"true_indices", t.indices()},
          {"glyph_dim", t.glyph_dim}, {"noise_sigma", t.noise_sigma},
          {"train_size", t.splits.train}, {"val_size", t.splits.val},
          {"test_size", t.splits.test}};
}

inline PolynomialTask polynomial_task_from_json(const nlohmann::json& j) {
  PolynomialTask t;
  if (!j.contains("n")) throw ParseError("task: missing field 'n'");
  if (!j.contains("k")) throw ParseError("task: missing field 'k'");
  t.n = j.at("n").get<int>();
  t.k = j.at("k").get<int>();
  if (j.contains("cycle_indices")) t.cycle_indices = j.at("cycle_indices").get<std::vector<int>>();
  if (j.contains("train_size")) t.splits.train = j.at("train_size").get<int>();
  if (j.contains("val_size")) t.splits.val = j.at("val_size").get<int>();
  if (j.contains("test_size")) t.splits.test = j.at("test_size").get<int>();
  if (t.k < 1 || t.k > t.n) throw ParseError("task: field 'k' out of range");
  return t;
}

inline DigitSumTask digitsum_task_from_json(const nlohmann::json& j) {
  DigitSumTask t;
  if (!j.contains("n")) throw ParseError("task: missing field 'n'");
  if (!j.contains("k")) throw ParseError("task: missing field 'k'");
  t.n = j.at("n").get<int>();
  t.k = j.at("k").get<int>();
  if (j.contains("true_indices")) t.true_indices = j.at("true_indices").get<std::vector<int>>();
  if (j.contains("glyph_dim")) t.glyph_dim = j.at("glyph_dim").get<int>();
  if (j.contains("noise_sigma")) t.noise_sigma = j.at("noise_sigma").get<double>();
  if (j.contains("train_size")) t.splits.train = j.at("train_size").get<int>();
  if (j.contains("val_size")) t.splits.val = j.at("val_size").get<int>();
  if (j.contains("test_size")) t.splits.test = j.at("test_size").get<int>();
  if (t.k < 1 || t.k > t.n) throw ParseError("task: field 'k' out of range");
  return t;
}

}  // namespace sforge
