#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "subgroup_forge/rng.hpp"
#include "subgroup_forge/subgroup.hpp"
#include "subgroup_forge/tensor.hpp"

namespace sforge {

// Exact (non-learnable) linear transformation, row-major.
struct LinearMap {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;

  LinearMap() = default;
  LinearMap(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c, 0.0) {}
  LinearMap(int r, int c, std::vector<double> e) : rows(r), cols(c), entries(std::move(e)) {
    if (entries.size() != static_cast<std::size_t>(r) * c) {
      throw DimensionError("linear map: entry count != rows*cols");
    }
  }

  static LinearMap identity(int n) {
    LinearMap m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  static LinearMap from_tensor(const Tensor& t) {
    return LinearMap(static_cast<int>(t.rows()), static_cast<int>(t.cols()),
                     std::vector<double>(t.data(), t.data() + t.numel()));
  }

  double& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }

  std::vector<double> apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols) {
      throw DimensionError("linear map apply: length mismatch");
    }
    std::vector<double> out(rows, 0.0);
    for (int i = 0; i < rows; ++i) {
      double s = 0.0;
      const double* row = entries.data() + static_cast<std::size_t>(i) * cols;
      for (int j = 0; j < cols; ++j) s += row[j] * x[j];
      out[i] = s;
    }
    return out;
  }

  bool all_zero() const {
    for (double v : entries)
      if (v != 0.0) return false;
    return true;
  }
};

namespace detail {

// Orthonormal basis of the column space via modified Gram-Schmidt; columns
// with negligible residual norm are dropped.
inline std::vector<std::vector<double>> range_basis(const LinearMap& m) {
  std::vector<std::vector<double>> basis;
  double max_norm = 0.0;
  for (int j = 0; j < m.cols; ++j) {
    double norm = 0.0;
    for (int i = 0; i < m.rows; ++i) norm += m.at(i, j) * m.at(i, j);
    max_norm = std::max(max_norm, std::sqrt(norm));
  }
  const double drop = 1e-12 * (1.0 + max_norm);
  for (int j = 0; j < m.cols; ++j) {
    std::vector<double> v(m.rows);
    for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
    for (const auto& q : basis) {
      double dot = 0.0;
      for (int i = 0; i < m.rows; ++i) dot += q[i] * v[i];
      for (int i = 0; i < m.rows; ++i) v[i] -= dot * q[i];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > drop) {
      for (double& x : v) x /= norm;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

// infinity-norm of the least-squares residual of b against the basis
inline double range_residual(const std::vector<std::vector<double>>& basis,
                             const std::vector<double>& b) {
  std::vector<double> r = b;
  for (const auto& q : basis) {
    double dot = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) dot += q[i] * b[i];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= dot * q[i];
  }
  double inf = 0.0;
  for (double x : r) inf = std::max(inf, std::fabs(x));
  return inf;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

}  // namespace detail

struct Theorem45Report {
  bool cond1 = false;
  bool cond2 = false;
  std::optional<Permutation> cond1_witness;  // h in H with no matching g
  std::optional<Permutation> cond2_witness;  // g in G (range-compatible) with no matching h
  bool degenerate_mask = false;              // all-zero M; result is vacuous
  int probes = 0;
  double tol = 0.0;

  bool both() const { return cond1 && cond2; }
};

// Numerically certifies the two intertwining conditions between the H-action
// on the mask's domain and the G-action on its range:
//   cond1: every h in H has a g in G with M(h.x) = g.(Mx) on all probes
//          (one shared g across probes);
//   cond2: every g in G that keeps all g.(Mx_j) inside range(M) has such an h.
// Agreement of linear maps on generic probes implies agreement everywhere;
// probe count defaults well above the dimension for slack.
inline Theorem45Report check_theorem45(const SubgroupSpec& H, const SubgroupSpec& G,
                                       const LinearMap& M, int probes = 32,
                                       double tol = 1e-9,
                                       std::uint64_t seed = 0x7f4a7c15,
                                       std::uint64_t cap = kDefaultEnumerationCap) {
  if (M.cols != H.degree()) throw DimensionError("check_theorem45: M.cols != degree(H)");
  if (M.rows != G.degree()) throw DimensionError("check_theorem45: M.rows != degree(G)");

  Theorem45Report report;
  report.probes = probes;
  report.tol = tol;
  report.degenerate_mask = M.all_zero();

  Rng rng(seed);
  std::vector<std::vector<double>> xs(probes);
  for (auto& x : xs) {
    x.resize(M.cols);
    for (double& v : x) v = rng.uniform01();
  }
  std::vector<std::vector<double>> mxs(probes);
  for (int j = 0; j < probes; ++j) mxs[j] = M.apply(xs[j]);

  const std::vector<Permutation> h_elems = enumerate(H, cap);
  const std::vector<Permutation> g_elems = enumerate(G, cap);

  // g.(Mx_j) for every g, reused by both conditions
  std::vector<std::vector<std::vector<double>>> g_mx(g_elems.size());
  for (std::size_t gi = 0; gi < g_elems.size(); ++gi) {
    g_mx[gi].resize(probes);
    for (int j = 0; j < probes; ++j) g_mx[gi][j] = g_elems[gi].apply(mxs[j]);
  }

  auto matches = [&](const std::vector<std::vector<double>>& mhx, std::size_t gi) {
    for (int j = 0; j < probes; ++j) {
      if (detail::max_abs_diff(mhx[j], g_mx[gi][j]) > tol) return false;
    }
    return true;
  };

  report.cond1 = true;
  std::vector<std::vector<double>> mhx(probes);
  for (const auto& h : h_elems) {
    for (int j = 0; j < probes; ++j) mhx[j] = M.apply(h.apply(xs[j]));
    bool found = false;
    for (std::size_t gi = 0; gi < g_elems.size() && !found; ++gi) found = matches(mhx, gi);
    if (!found) {
      report.cond1 = false;
      report.cond1_witness = h;
      break;
    }
  }

  const auto basis = detail::range_basis(M);
  report.cond2 = true;
  for (std::size_t gi = 0; gi < g_elems.size(); ++gi) {
    bool in_range = true;
    for (int j = 0; j < probes && in_range; ++j) {
      in_range = detail::range_residual(basis, g_mx[gi][j]) <= tol;
    }
    if (!in_range) continue;
    bool found = false;
    for (const auto& h : h_elems) {
      for (int j = 0; j < probes; ++j) mhx[j] = M.apply(h.apply(xs[j]));
      if (matches(mhx, gi)) {
        found = true;
        break;
      }
    }
    if (!found) {
      report.cond2 = false;
      report.cond2_witness = g_elems[gi];
      break;
    }
  }
  return report;
}

}  // namespace sforge
