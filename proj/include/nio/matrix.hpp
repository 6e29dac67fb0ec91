#ifndef NIO_MATRIX_HPP
#define NIO_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nio {

/// Dense row-stochastic matrix in row-major storage, acting on row vectors
/// from the left: (f M)[j] = sum_i f[i] M[i][j].
class StochasticMatrix {
public:
  StochasticMatrix() = default;
  explicit StochasticMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static StochasticMatrix identity(std::size_t n);

  std::size_t n() const { return n_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const double* row(std::size_t i) const { return data_.data() + i * n_; }

  /// Row-vector product f * M.
  std::vector<double> apply(const std::vector<double>& f) const;

  /// this * other.
  StochasticMatrix multiply(const StochasticMatrix& other) const;

  double dobrushin() const;
  void renormalize_rows();

  /// max_i |sum_j M[i][j] - 1|.
  double max_row_sum_error() const;

  double min_entry() const;

  /// Raw dump: 16-byte header (magic "ULAM", u32 order, u32 reserved, zero
  /// padding), then n*n doubles, row-major, little-endian.
  void write_binary(const std::string& path) const;
  static StochasticMatrix read_binary(const std::string& path);

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Support pattern of a nonnegative matrix as row bitsets; boolean products
/// track the support of matrix powers without forming them.
class SupportMatrix {
public:
  static SupportMatrix from(const StochasticMatrix& m);

  std::size_t n() const { return n_; }

  SupportMatrix multiply(const SupportMatrix& other) const;

  bool rows_intersect(std::size_t i, std::size_t j) const;

  /// True when every pair of rows shares a positive atom, which is exactly
  /// the Dobrushin coefficient being below one for a nonnegative matrix.
  bool all_rows_intersect() const;

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Ulam matrix of the annealed operator kept in factored form
/// M_det * M_noise; applying the factors in sequence avoids the dense
/// product, which is only materialized for small orders.
class AnnealedOperator {
public:
  AnnealedOperator(StochasticMatrix det, StochasticMatrix noise);

  std::size_t n() const { return det_.n(); }
  const StochasticMatrix& det() const { return det_; }
  const StochasticMatrix& noise() const { return noise_; }

  std::vector<double> apply(const std::vector<double>& f) const;

  /// Dense product M_det * M_noise. Guarded: throws DomainError above
  /// order 2048 to keep the factored representation authoritative.
  StochasticMatrix materialize() const;

  SupportMatrix support() const;

  static constexpr std::size_t kMaterializeLimit = 2048;

private:
  StochasticMatrix det_;
  StochasticMatrix noise_;
};

}  // namespace nio

#endif  // NIO_MATRIX_HPP
