#ifndef NIO_TESTS_EIGEN_ORACLE_HPP
#define NIO_TESTS_EIGEN_ORACLE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "nio/matrix.hpp"
#include "nio/partition.hpp"

namespace testsupport {

/// Stationary density of a row-stochastic matrix by a dense non-symmetric
/// eigensolve: the left eigenvector for the eigenvalue closest to 1,
/// sign-fixed and normalized to unit mass. Independent of power iteration.
inline nio::Density eigen_stationary(const nio::StochasticMatrix& m) {
  using Eigen::Dynamic;
  using Eigen::Matrix;
  using Eigen::RowMajor;
  const std::size_t n = m.n();
  Eigen::Map<const Matrix<double, Dynamic, Dynamic, RowMajor>> a(m.data(), n, n);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a.transpose());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed");
  }
  int best = 0;
  double best_dist = 1e300;
  for (int k = 0; k < static_cast<int>(n); ++k) {
    double dist = std::abs(solver.eigenvalues()[k] - std::complex<double>(1.0, 0.0));
    if (dist < best_dist) {
      best_dist = dist;
      best = k;
    }
  }
  if (best_dist > 1e-8) {
    throw std::runtime_error("no eigenvalue near 1");
  }
  Eigen::VectorXcd v = solver.eigenvectors().col(best);
  nio::Density f;
  f.values.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += v[i].real();
  double delta = 2.0 / static_cast<double>(n);
  double scale = 1.0 / (delta * total);
  for (std::size_t i = 0; i < n; ++i) f.values[i] = v[i].real() * scale;
  return f;
}

}  // namespace testsupport

#endif  // NIO_TESTS_EIGEN_ORACLE_HPP
