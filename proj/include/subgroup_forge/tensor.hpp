#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "subgroup_forge/errors.hpp"

namespace sforge {

// Dense row-major tensor of 64-bit reals. Rank 1 and 2 are the only ranks
// the rest of the library produces.
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<std::size_t> shape)
      : shape_(std::move(shape)), data_(count(shape_), 0.0) {}

  Tensor(std::vector<std::size_t> shape, std::vector<double> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != count(shape_)) {
      throw DimensionError("tensor data size does not match shape");
    }
  }

  static Tensor scalar(double v) { return Tensor({1, 1}, {v}); }

  static Tensor row(std::vector<double> v) {
    const std::size_t n = v.size();
    return Tensor({1, n}, std::move(v));
  }

  static Tensor column(std::vector<double> v) {
    const std::size_t n = v.size();
    return Tensor({n, 1}, std::move(v));
  }

  static Tensor zeros(std::size_t rows, std::size_t cols) { return Tensor({rows, cols}); }

  static Tensor ones(std::size_t rows, std::size_t cols) {
    Tensor t({rows, cols});
    std::fill(t.data_.begin(), t.data_.end(), 1.0);
    return t;
  }

  static Tensor identity(std::size_t n) {
    Tensor t({n, n});
    for (std::size_t i = 0; i < n; ++i) t.data_[i * n + i] = 1.0;
    return t;
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t numel() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t rows() const { return rank() == 2 ? shape_[0] : (rank() == 1 ? 1 : 0); }
  std::size_t cols() const { return rank() == 2 ? shape_[1] : (rank() == 1 ? shape_[0] : 0); }

  bool is_scalar() const { return numel() == 1; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& vec() { return data_; }
  const std::vector<double>& vec() const { return data_; }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  void add_inplace(const Tensor& o) {
    if (!same_shape(o)) throw DimensionError("tensor add: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  }

  void scale_inplace(double c) {
    for (double& v : data_) v *= c;
  }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  bool operator==(const Tensor& o) const { return shape_ == o.shape_ && data_ == o.data_; }

 private:
  static std::size_t count(const std::vector<std::size_t>& s) {
    std::size_t n = 1;
    for (std::size_t d : s) n *= d;
    return s.empty() ? 0 : n;
  }

  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

inline Tensor matmul_values(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.cols() != b.rows()) {
    throw DimensionError("matmul: incompatible shapes");
  }
  const std::size_t m = a.rows(), k = a.cols(), p = b.cols();
  Tensor out({m, p});
  const double* ad = a.data();
  const double* bd = b.data();
  double* od = out.data();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t kk = 0; kk < k; ++kk) {
      const double aik = ad[i * k + kk];
      if (aik == 0.0) continue;
      const double* brow = bd + kk * p;
      double* orow = od + i * p;
      for (std::size_t j = 0; j < p; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

// a * b^T
inline Tensor matmul_nt_values(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.cols() != b.cols()) {
    throw DimensionError("matmul_nt: incompatible shapes");
  }
  const std::size_t m = a.rows(), k = a.cols(), p = b.rows();
  Tensor out({m, p});
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a.data() + i * k;
    double* orow = out.data() + i * p;
    for (std::size_t j = 0; j < p; ++j) {
      const double* brow = b.data() + j * k;
      double s = 0.0;
      for (std::size_t kk = 0; kk < k; ++kk) s += arow[kk] * brow[kk];
      orow[j] = s;
    }
  }
  return out;
}

// a^T * b
inline Tensor matmul_tn_values(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.rows() != b.rows()) {
    throw DimensionError("matmul_tn: incompatible shapes");
  }
  const std::size_t m = a.cols(), k = a.rows(), p = b.cols();
  Tensor out({m, p});
  for (std::size_t kk = 0; kk < k; ++kk) {
    const double* arow = a.data() + kk * m;
    const double* brow = b.data() + kk * p;
    for (std::size_t i = 0; i < m; ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      double* orow = out.data() + i * p;
      for (std::size_t j = 0; j < p; ++j) orow[j] += aki * brow[j];
    }
  }
  return out;
}

inline Tensor transposed(const Tensor& a) {
  if (a.rank() != 2) throw DimensionError("transpose: rank-2 tensor required");
  Tensor out({a.cols(), a.rows()});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

// Shortest decimal form that round-trips a double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_tensor_csv(const Tensor& t, std::ostream& os) {
  const std::size_t r = t.rows(), c = t.cols();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (j) os << ',';
      os << format_double(t.at(i, j));
    }
    os << "\r\n";
  }
}

inline void write_tensor_csv(const Tensor& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot open for writing: " + path);
  write_tensor_csv(t, os);
}

inline Tensor read_tensor_csv(std::istream& is) {
  std::vector<double> data;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      data.push_back(std::strtod(cell.c_str(), nullptr));
      ++c;
    }
    if (rows == 0) {
      cols = c;
    } else if (c != cols) {
      throw ParseError("csv: ragged row " + std::to_string(rows));
    }
    ++rows;
  }
  return Tensor({rows, cols}, std::move(data));
}

inline Tensor read_tensor_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open: " + path);
  return read_tensor_csv(is);
}

// Binary checkpoint format: "SFTB1" magic, u64 rank, u64 dims, f64 payload,
// all little-endian.
inline void write_tensor_binary(const Tensor& t, std::ostream& os) {
  os.write("SFTB1", 5);
  auto put_u64 = [&os](std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
  };
  put_u64(t.rank());
  for (std::size_t d : t.shape()) put_u64(d);
  for (std::size_t i = 0; i < t.numel(); ++i) {
    std::uint64_t bits;
    double v = t[i];
    std::memcpy(&bits, &v, 8);
    put_u64(bits);
  }
}

inline void write_tensor_binary(const Tensor& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot open for writing: " + path);
  write_tensor_binary(t, os);
}

inline Tensor read_tensor_binary(std::istream& is) {
  char magic[5];
  is.read(magic, 5);
  if (!is || std::memcmp(magic, "SFTB1", 5) != 0) throw ParseError("tensor binary: bad magic");
  auto get_u64 = [&is]() {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw ParseError("tensor binary: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  };
  const std::uint64_t rank = get_u64();
  if (rank > 8) throw ParseError("tensor binary: implausible rank");
  std::vector<std::size_t> shape(rank);
  std::size_t n = 1;
  for (auto& d : shape) {
    d = static_cast<std::size_t>(get_u64());
    n *= d;
  }
  std::vector<double> data(n);
  for (auto& v : data) {
    std::uint64_t bits = get_u64();
    std::memcpy(&v, &bits, 8);
  }
  return Tensor(std::move(shape), std::move(data));
}

inline Tensor read_tensor_binary_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open: " + path);
  return read_tensor_binary(is);
}

}  // namespace sforge
