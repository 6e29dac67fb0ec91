#include "nio/montecarlo.hpp"

#include <cmath>
#include <utility>

#include "nio/errors.hpp"
#include "nio/kernels.hpp"

namespace nio {

namespace {

void validate(const McConfig& config) {
  if (config.orbits < 1) throw DomainError("need at least one orbit");
  if (config.length < 1) throw DomainError("need at least one step");
  if (config.burn_in < 0 || config.burn_in >= config.length) {
    throw DomainError("burn_in must lie in [0, length)");
  }
  if (config.fixed_x0 && std::abs(*config.fixed_x0) > 1.0) {
    throw DomainError("start point outside [-1,1]");
  }
}

}  // namespace

OrbitSummary simulate_orbit(const MapSpec& map,
                            const std::optional<NoiseKernel>& kernel,
                            BoundaryCondition bc, double x0, int steps, int burn_in,
                            SplitMix64 stream) {
  if (std::abs(x0) > 1.0) throw DomainError("start point outside [-1,1]");
  OrbitSummary summary;
  double x = x0;
  double acc = 0.0;
  for (int n = 0; n < steps; ++n) {
    if (x == 0.0) {
      summary.rejected = true;
      break;
    }
    if (n >= burn_in) {
      acc += map.log_abs_derivative(x);
      ++summary.steps_counted;
    }
    double y = map.evaluate(x);
    if (kernel) y += kernel->quantile(stream.uniform());
    x = fold(bc, y);
  }
  summary.final_state = x;
  if (!summary.rejected && summary.steps_counted > 0) {
    summary.log_mean = acc / static_cast<double>(summary.steps_counted);
  }
  return summary;
}

McEstimate finite_time_lyapunov(const MapSpec& map,
                                const std::optional<NoiseKernel>& kernel,
                                BoundaryCondition bc, const McConfig& config) {
  validate(config);
  std::optional<NoiseKernel> effective = kernel;
  if (config.zero_noise) effective.reset();
  std::vector<OrbitSummary> slots(static_cast<std::size_t>(config.orbits));
  int nt = kernels::max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int o = 0; o < config.orbits; ++o) {
    SplitMix64 stream = SplitMix64::stream(config.seed, static_cast<std::uint64_t>(o));
    double x0 = config.fixed_x0 ? *config.fixed_x0 : stream.uniform_symmetric();
    slots[static_cast<std::size_t>(o)] =
        simulate_orbit(map, effective, bc, x0, config.length, config.burn_in, stream);
  }
  McEstimate estimate;
  double sum = 0.0;
  int kept = 0;
  for (const OrbitSummary& s : slots) {
    if (s.rejected) {
      ++estimate.rejected;
    } else {
      sum += s.log_mean;
      ++kept;
    }
  }
  if (kept == 0) throw AllOrbitsRejected("every orbit hit the critical point");
  estimate.orbits = kept;
  estimate.mean = sum / static_cast<double>(kept);
  if (kept > 1) {
    double ss = 0.0;
    for (const OrbitSummary& s : slots) {
      if (s.rejected) continue;
      double d = s.log_mean - estimate.mean;
      ss += d * d;
    }
    double sample_var = ss / static_cast<double>(kept - 1);
    estimate.stderr_ = std::sqrt(sample_var / static_cast<double>(kept));
  }
  return estimate;
}

McGrid heatmap_sweep(const std::vector<double>& alpha_grid,
                     const std::vector<double>& xi_grid, double beta,
                     NoiseKernel::Mother mother, BoundaryCondition bc,
                     const McConfig& config) {
  if (alpha_grid.empty() || xi_grid.empty()) throw DomainError("empty grid");
  validate(config);
  McGrid grid;
  grid.alphas = alpha_grid;
  grid.xis = xi_grid;
  grid.cells.resize(alpha_grid.size() * xi_grid.size());
  for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
    for (std::size_t x = 0; x < xi_grid.size(); ++x) {
      McCell& cell = grid.cells[a * xi_grid.size() + x];
      try {
        MapSpec map(alpha_grid[a], beta);
        NoiseKernel kernel(mother, xi_grid[x]);
        cell.estimate = finite_time_lyapunov(map, kernel, bc, config);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  }
  return grid;
}

}  // namespace nio
