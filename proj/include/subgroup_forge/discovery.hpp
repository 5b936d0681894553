#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <json.hpp>

#include "subgroup_forge/tensor.hpp"

namespace sforge {

// Column-L1 scoring of a trained M against the mean threshold. Strict ">"
// at the threshold: ties are excluded (and flagged), so an all-zero M
// estimates the empty set.
struct IndexEstimate {
  std::vector<double> column_l1;
  double threshold = 0.0;
  std::vector<int> estimated_indices;
  std::vector<int> true_indices;
  bool success = false;
  bool tie_warning = false;
  std::vector<double> complement_column_l1;  // |(I-M)| columns, Sk heads only
};

inline IndexEstimate estimate_indices(const Tensor& m, std::vector<int> true_indices) {
  if (m.rank() != 2) throw DimensionError("estimate_indices: matrix required");
  if (!m.all_finite()) throw DimensionError("estimate_indices: M must be finite-valued");
  const std::size_t rows = m.rows(), cols = m.cols();
  IndexEstimate est;
  est.column_l1.assign(cols, 0.0);
  std::vector<double> column(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) column[i] = std::fabs(m.at(i, j));
    // canonical summation order: the norm is bitwise row-permutation-invariant
    std::sort(column.begin(), column.end());
    for (double v : column) est.column_l1[j] += v;
  }
  double sum = 0.0;
  for (double v : est.column_l1) sum += v;
  est.threshold = sum / static_cast<double>(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    if (est.column_l1[j] > est.threshold) est.estimated_indices.push_back(static_cast<int>(j));
    if (est.column_l1[j] == est.threshold) est.tie_warning = true;
  }
  std::sort(true_indices.begin(), true_indices.end());
  est.true_indices = std::move(true_indices);
  est.success = est.estimated_indices == est.true_indices;
  return est;
}

// percentage of exact-match estimates
inline double estimation_accuracy(const std::vector<IndexEstimate>& estimates) {
  if (estimates.empty()) throw DimensionError("estimation_accuracy: no estimates");
  std::size_t ok = 0;
  for (const auto& e : estimates)
    if (e.success) ++ok;
  return 100.0 * static_cast<double>(ok) / static_cast<double>(estimates.size());
}

inline nlohmann::json to_json(const IndexEstimate& e) {
  nlohmann::json j{{"column_l1", e.column_l1},
                   {"threshold", e.threshold},
                   {"estimated_indices", e.estimated_indices},
                   {"true_indices", e.true_indices},
                   {"success", e.success},
                   {"tie_warning", e.tie_warning}};
  if (!e.complement_column_l1.empty()) j["complement_column_l1"] = e.complement_column_l1;
  return j;
}

inline IndexEstimate index_estimate_from_json(const nlohmann::json& j) {
  IndexEstimate e;
  e.column_l1 = j.at("column_l1").get<std::vector<double>>();
  e.threshold = j.at("threshold").get<double>();
  e.estimated_indices = j.at("estimated_indices").get<std::vector<int>>();
  e.true_indices = j.at("true_indices").get<std::vector<int>>();
  e.success = j.at("success").get<bool>();
  e.tie_warning = j.at("tie_warning").get<bool>();
  if (j.contains("complement_column_l1")) {
    e.complement_column_l1 = j.at("complement_column_l1").get<std::vector<double>>();
  }
  return e;
}

}  // namespace sforge
