#ifndef NIO_MONTECARLO_HPP
#define NIO_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nio/map.hpp"
#include "nio/noise.hpp"
#include "nio/rng.hpp"

namespace nio {

struct McConfig {
  int orbits = 200;
  int length = 10000;
  std::uint64_t seed = 0;
  int burn_in = 0;
  /// Regression hook: iterate the bare map with no noise term.
  bool zero_noise = false;
  /// Regression hook: start every orbit here instead of a random point.
  std::optional<double> fixed_x0;
};

struct OrbitSummary {
  /// Average of log|T'(X_n)| over the counted steps.
  double log_mean = 0.0;
  int steps_counted = 0;
  double final_state = 0.0;
  /// Set when some X_n hit the critical point exactly; log_mean is then
  /// meaningless and the orbit is excluded from estimates.
  bool rejected = false;
};

/// Iterates X_{n+1} = fold(T(X_n) + noise) for `steps` steps, accumulating
/// log|T'(X_n)| after the burn-in. Noise is drawn by inverse CDF from the
/// kernel; no kernel means the deterministic map.
OrbitSummary simulate_orbit(const MapSpec& map,
                            const std::optional<NoiseKernel>& kernel,
                            BoundaryCondition bc, double x0, int steps, int burn_in,
                            SplitMix64 stream);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  int rejected = 0;
  int orbits = 0;
};

/// Finite-time Lyapunov average over config.orbits independent orbits, each
/// on its own RNG stream derived from (seed, orbit index); the reduction
/// runs in fixed orbit order, so results do not depend on thread count.
/// Throws AllOrbitsRejected when no orbit survives.
McEstimate finite_time_lyapunov(const MapSpec& map,
                                const std::optional<NoiseKernel>& kernel,
                                BoundaryCondition bc, const McConfig& config);

struct McCell {
  McEstimate estimate;
  /// Nonempty when this cell failed (for example all orbits rejected).
  std::string error;
};

struct McGrid {
  std::vector<double> alphas;
  std::vector<double> xis;
  /// Row-major over (alpha, xi).
  std::vector<McCell> cells;

  const McCell& cell(std::size_t ai, std::size_t xi_index) const {
    return cells[ai * xis.size() + xi_index];
  }
};

/// finite_time_lyapunov at every (alpha, xi) pair.
McGrid heatmap_sweep(const std::vector<double>& alpha_grid,
                     const std::vector<double>& xi_grid, double beta,
                     NoiseKernel::Mother mother, BoundaryCondition bc,
                     const McConfig& config);

}  // namespace nio

#endif  // NIO_MONTECARLO_HPP
