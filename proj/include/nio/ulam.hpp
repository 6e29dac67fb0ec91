#ifndef NIO_ULAM_HPP
#define NIO_ULAM_HPP

#include "nio/map.hpp"
#include "nio/matrix.hpp"
#include "nio/noise.hpp"
#include "nio/partition.hpp"

namespace nio {

/// Ulam matrix of the deterministic transfer operator:
/// M[i][j] = m(I_i intersect T^{-1}(I_j)) / m(I_i), assembled exactly from
/// the monotone-branch inverses. Branch endpoints must lie on partition
/// points (CellStraddlingError otherwise).
StochasticMatrix deterministic_matrix(const PiecewiseMap& map, const Partition& p);
StochasticMatrix deterministic_matrix(const MapSpec& map, const Partition& p);

enum class NoiseMatrixMethod {
  /// Entries from the antiderivative of the noise CDF, exact for the
  /// uniform kernel.
  ClosedForm,
  /// Entries from Gauss-Legendre integration of CDF differences, split at
  /// the kink points; the path extension kernels use, kept for the uniform
  /// kernel as a cross-check.
  Quadrature,
};

/// Ulam matrix of the noise step: N[i][j] is the probability that a point
/// drawn uniformly in cell i, perturbed by the kernel and folded by the
/// boundary condition, lands in cell j. Entries outside the geometric
/// support are exact zeros. With normalize, rows are rescaled to sum to 1
/// (raw sums are already 1 up to roundoff; tests inspect the raw matrix).
StochasticMatrix noise_matrix(const NoiseKernel& kernel, BoundaryCondition bc,
                              const Partition& p, bool normalize = true,
                              NoiseMatrixMethod method = NoiseMatrixMethod::ClosedForm);

/// Annealed operator in factored form deterministic * noise.
AnnealedOperator annealed_operator(const MapSpec& map, const NoiseKernel& kernel,
                                   BoundaryCondition bc, const Partition& p);
AnnealedOperator annealed_operator(const PiecewiseMap& map, const NoiseKernel& kernel,
                                   BoundaryCondition bc, const Partition& p);

/// Reuses a cached deterministic factor; the noise factor is rebuilt.
AnnealedOperator annealed_operator(StochasticMatrix det, const NoiseKernel& kernel,
                                   BoundaryCondition bc, const Partition& p);

/// Dense annealed matrix; materialization is guarded above order 2048.
StochasticMatrix annealed_matrix(const MapSpec& map, const NoiseKernel& kernel,
                                 BoundaryCondition bc, const Partition& p);

}  // namespace nio

#endif  // NIO_ULAM_HPP
