#ifndef NIO_PARTITION_HPP
#define NIO_PARTITION_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace nio {

/// Uniform partition of [-1,1] into n cells of width delta = 2/n.
/// n must be even so that x = 0 is a cell boundary.
class Partition {
public:
  explicit Partition(std::size_t n);

  std::size_t n() const { return n_; }
  double delta() const { return delta_; }
  double left(std::size_t i) const { return -1.0 + static_cast<double>(i) * delta_; }
  double right(std::size_t i) const { return -1.0 + static_cast<double>(i + 1) * delta_; }
  double center(std::size_t i) const { return -1.0 + (static_cast<double>(i) + 0.5) * delta_; }

  /// Index of the cell containing x in [-1,1]; x = 1 maps to the last cell.
  std::size_t cell_index(double x) const;

private:
  std::size_t n_;
  double delta_;
};

/// Piecewise-constant probability density on a uniform partition:
/// delta * sum(values) = 1 when normalized.
struct Density {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
  double delta() const { return 2.0 / static_cast<double>(values.size()); }

  /// delta * sum(values).
  double mass() const;

  /// L1 distance delta * sum |values - other.values|.
  double l1_distance(const Density& other) const;

  static Density uniform(std::size_t n);

  /// Density with cell masses given by a probability vector p (values = p/delta).
  static Density from_masses(const std::vector<double>& p);

  /// Cell masses values[i] * delta.
  std::vector<double> masses() const;
};

/// Conditional expectation of f onto the partition:
/// values[i] = (1/delta) * integral of f over cell i, by adaptive quadrature.
/// Throws QuadratureError if the per-cell tolerance cannot be met.
Density project(const Partition& partition, const std::function<double(double)>& f,
                double tol = 1e-12);

/// Adaptive Simpson integral of f over [a,b]; shared by project and the
/// test oracles. Throws QuadratureError when the refinement limit is hit.
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double tol);

}  // namespace nio

#endif  // NIO_PARTITION_HPP
