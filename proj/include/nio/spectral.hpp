#ifndef NIO_SPECTRAL_HPP
#define NIO_SPECTRAL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "nio/map.hpp"
#include "nio/matrix.hpp"
#include "nio/noise.hpp"
#include "nio/partition.hpp"

namespace nio {

struct PowerOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  /// Optional start density; defaults to uniform.
  std::optional<Density> start;
};

struct StationarySolve {
  Density density;
  double residual;
  int iterations;
};

/// Power iteration f <- f M with the L1 residual checked every step and the
/// iterate renormalized to unit mass. Throws NonConvergence when max_iter
/// is exhausted above tolerance.
StationarySolve stationary_density(const StochasticMatrix& m, PowerOptions opt = {});
StationarySolve stationary_density(const AnnealedOperator& op, PowerOptions opt = {});

/// Dobrushin coefficient of M^k: the exact L1 operator norm of M^k on
/// zero-sum row vectors. M^k is formed by repeated squaring when k is a
/// power of two and sequentially otherwise, with rows renormalized after
/// each product.
double v0_contraction_norm(const StochasticMatrix& m, int k);

/// Smallest k <= k_max at which every pair of rows of M^k shares a positive
/// atom; none if never reached. Computed on support bitsets, so large
/// factored operators need not be materialized.
std::optional<int> coupling_time(const StochasticMatrix& m, int k_max);
std::optional<int> coupling_time(const AnnealedOperator& op, int k_max);

struct ContractionReport {
  int k;
  double l1_norm;
  bool coupled;
};

ContractionReport contraction_report(const StochasticMatrix& m, int k);

struct CoarseFineCertificate {
  double delta;
  double xi;
  int i;
  /// C_0..C_i with C_k the Dobrushin coefficient of the annealed matrix
  /// power M^k.
  std::vector<double> discrete_norms;
  /// C_i + (2i+1) delta / xi, an upper bound on the contraction of the
  /// abstract annealed operator at power i+1.
  double bound;
  bool valid;
};

CoarseFineCertificate coarse_fine_certificate(const MapSpec& map,
                                              const NoiseKernel& kernel,
                                              BoundaryCondition bc, std::size_t n,
                                              int i);

/// Sum of |jumps| at interior cell boundaries.
double variation(const Density& f);

/// variation + L1 norm.
double bv_norm(const Density& f);

/// bv_norm of the (signed) difference f - g.
double bv_distance(const Density& f, const Density& g);

/// True when some cell carrying f-mass above 1e-12 contains a point with
/// |T(x) - x| < xi/2, checked on a 100-point subgrid per cell.
bool fixed_point_proximity(const MapSpec& map, const Density& f, double xi);

/// Kantorovich-Rubinstein distance for Lipschitz-1 test functions: the
/// exact integral of |F - G| over [-1,1] for the piecewise-linear CDFs.
double wasserstein1(const Density& f, const Density& g);

/// ||f_xi_hat - f_xi||_BV from two stationary solves; a diagnostic that
/// should shrink as xi_hat decreases toward xi.
double stationary_continuity_modulus(const MapSpec& map, NoiseKernel::Mother mother,
                                     BoundaryCondition bc, std::size_t n, double xi,
                                     double xi_hat);

}  // namespace nio

#endif  // NIO_SPECTRAL_HPP
