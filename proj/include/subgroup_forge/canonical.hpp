#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "subgroup_forge/errors.hpp"

namespace sforge {

// power map [1, t, t^2, ..., t^n]
inline std::vector<double> gamma(double t, int n) {
  if (n < 1) throw DimensionError("gamma: n must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  for (int j = 1; j <= n; ++j) out[j] = out[j - 1] * t;
  return out;
}

// Sum of gamma over the multiset of coordinates. The coordinates are put in
// ascending order before the left-to-right summation, so any permutation of
// x produces a bitwise identical result.
inline std::vector<double> sum_gamma_pool(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> acc(static_cast<std::size_t>(n) + 1, 0.0);
  for (double v : sorted) {
    const std::vector<double> g = gamma(v, n);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += g[j];
  }
  return acc;
}

// [sum_{i<k} gamma(x_i), x_k, ..., x_{n-1}]: invariant under permutations of
// the first k coordinates, length (n+1) + (n-k).
inline std::vector<double> embed_sk0(const std::vector<double>& x, int k) {
  const int n = static_cast<int>(x.size());
  if (k < 1 || k > n) throw DimensionError("embed_sk0: k out of range");
  std::vector<double> head(x.begin(), x.begin() + k);
  std::sort(head.begin(), head.end());
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  for (double v : head) {
    const std::vector<double> g = gamma(v, n);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += g[j];
  }
  out.insert(out.end(), x.begin() + k, x.end());
  return out;
}

struct InjectivityReport {
  bool passed = false;
  std::size_t points = 0;
  std::uint64_t pairs = 0;
  // (x, y) with embed-equality disagreeing with multiset/tail equality
  std::optional<std::pair<std::vector<double>, std::vector<double>>> counterexample;
};

// Brute-force certificate over the grid {0, step, 2*step, ...}^n: embeddings
// agree (within tol) exactly when the first-k multisets agree and the tails
// agree. This is the computable stand-in for the homeomorphism claim.
inline InjectivityReport injectivity_certificate(int n, int k, double grid_step,
                                                 double tol = 1e-12,
                                                 std::size_t max_points = 1000000) {
  if (k < 1 || k > n) throw DimensionError("injectivity_certificate: k out of range");
  if (grid_step <= 0.0 || grid_step > 1.0) {
    throw DimensionError("injectivity_certificate: grid_step must be in (0, 1]");
  }
  const int per_axis = static_cast<int>(std::floor(1.0 / grid_step + 1e-9)) + 1;
  double total = 1.0;
  for (int i = 0; i < n; ++i) total *= per_axis;
  if (total > static_cast<double>(max_points)) {
    throw CapacityError("injectivity_certificate: grid too large");
  }

  const std::size_t count = static_cast<std::size_t>(total);
  std::vector<std::vector<double>> points(count);
  std::vector<std::vector<double>> embeds(count);
  std::vector<std::vector<double>> keys(count);  // sorted head + exact tail
  std::vector<int> digits(n, 0);
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = digits[i] * grid_step;
    embeds[p] = embed_sk0(x, k);
    std::vector<double> key(x.begin(), x.begin() + k);
    std::sort(key.begin(), key.end());
    key.insert(key.end(), x.begin() + k, x.end());
    keys[p] = std::move(key);
    points[p] = std::move(x);
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[i] < per_axis) break;
      digits[i] = 0;
    }
  }

  InjectivityReport report;
  report.points = count;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      ++report.pairs;
      double d = 0.0;
      for (std::size_t j = 0; j < embeds[a].size(); ++j) {
        d = std::max(d, std::fabs(embeds[a][j] - embeds[b][j]));
      }
      const bool embed_equal = d <= tol;
      const bool key_equal = keys[a] == keys[b];
      if (embed_equal != key_equal) {
        report.counterexample = {points[a], points[b]};
        report.passed = false;
        return report;
      }
    }
  }
  report.passed = true;
  return report;
}

}  // namespace sforge
