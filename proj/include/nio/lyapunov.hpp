#ifndef NIO_LYAPUNOV_HPP
#define NIO_LYAPUNOV_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nio/map.hpp"
#include "nio/noise.hpp"
#include "nio/partition.hpp"
#include "nio/spectral.hpp"

namespace nio {

/// Integral of log|T'| against a piecewise-constant density, with the cell
/// integrals of ln(2 a b) + (a-1) ln|x| in closed form via the
/// antiderivative x ln|x| - x; the log singularity at 0 is integrable and
/// handled exactly.
double lyapunov_from_density(const MapSpec& map, const Density& f);

/// Large-noise limit ln 2 + ln alpha + 1 - alpha + ln beta: the integral of
/// log|T'| against the uniform probability density.
double tilde_lambda(double alpha, double beta);

struct AlphaInterval {
  double lo;
  double hi;
};

/// Bisection enclosure of the root of alpha -> tilde_lambda(alpha, 1).
/// Requires tilde_lambda(lo,1) > 0 > tilde_lambda(hi,1).
AlphaInterval find_alpha_tilde(double lo, double hi, double tol);

struct CurveSample {
  double xi = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
  double variation = 0.0;
  std::optional<int> coupling_k;
  int iterations = 0;
  std::optional<double> cf_bound;
  /// Nonempty when the stationary solve failed; lambda is NaN then.
  std::string error;
};

struct LyapunovCurve {
  std::vector<CurveSample> samples;
};

struct CurveOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  bool compute_coupling = true;
  int coupling_k_max = 64;
};

/// lambda(xi) samples over a strictly increasing grid: per point, assemble
/// the annealed operator, solve the stationary density, and record the
/// exponent with solver diagnostics. A NonConvergence at one point is
/// recorded in that sample and does not abort the sweep.
LyapunovCurve lyapunov_curve(const MapSpec& map, NoiseKernel::Mother mother,
                             BoundaryCondition bc, std::size_t n,
                             const std::vector<double>& xi_grid,
                             CurveOptions opt = {});

/// Same sweep with a precomputed deterministic factor (for example from a
/// cache); only the noise factor is rebuilt per grid point.
LyapunovCurve lyapunov_curve(const StochasticMatrix& det, const MapSpec& map,
                             NoiseKernel::Mother mother, BoundaryCondition bc,
                             const std::vector<double>& xi_grid,
                             CurveOptions opt = {});

/// count points logarithmically spaced over [lo, hi].
std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count);

struct NioCertificate {
  CurveSample positive;
  CurveSample negative;
  double margin = 0.0;
};

/// First sample with lambda > margin paired with the first later sample
/// with lambda < -margin; none when the curve has no such pair.
std::optional<NioCertificate> detect_nio(const LyapunovCurve& curve, double margin);

/// Grid positions (xi_i, xi_i+1) where consecutive converged samples change
/// sign.
std::vector<std::pair<double, double>> sign_changes(const LyapunovCurve& curve);

/// Bound on the L1 distance of the two stationary densities:
/// k/(1 - l1_norm) * sup-distance of the maps * Var(rho_xi), telescoping
/// the one-step perturbation through the measured contraction.
double parameter_continuity_bound(const MapSpec& map1, const MapSpec& map2,
                                  const NoiseKernel& kernel,
                                  const ContractionReport& contraction);

}  // namespace nio

#endif  // NIO_LYAPUNOV_HPP
