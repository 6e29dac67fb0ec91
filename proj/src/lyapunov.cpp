#include "nio/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "nio/errors.hpp"
#include "nio/matrix.hpp"
#include "nio/ulam.hpp"

namespace nio {

namespace {

// Antiderivative of ln|x|, odd, continuous at 0.
double log_primitive(double x) {
  if (x == 0.0) return 0.0;
  return x * std::log(std::abs(x)) - x;
}

}  // namespace

double lyapunov_from_density(const MapSpec& map, const Density& f) {
  std::size_t n = f.n();
  Partition p(n);
  double log_slope = std::log(2.0 * map.alpha() * map.beta());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = p.left(i);
    double b = p.right(i);
    double cell = (b - a) * log_slope +
                  (map.alpha() - 1.0) * (log_primitive(b) - log_primitive(a));
    total += f.values[i] * cell;
  }
  return total;
}

double tilde_lambda(double alpha, double beta) {
  if (!(alpha > 1.0) || !(beta > 0.0) || beta > 1.0) {
    throw DomainError("require alpha > 1 and beta in (0,1]");
  }
  return std::log(2.0) + std::log(alpha) + 1.0 - alpha + std::log(beta);
}

AlphaInterval find_alpha_tilde(double lo, double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) throw DomainError("need lo < hi and tol > 0");
  double flo = tilde_lambda(lo, 1.0);
  double fhi = tilde_lambda(hi, 1.0);
  if (!(flo > 0.0) || !(fhi < 0.0)) {
    throw BracketError("endpoints do not straddle the root");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (tilde_lambda(mid, 1.0) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return AlphaInterval{lo, hi};
}

LyapunovCurve lyapunov_curve(const MapSpec& map, NoiseKernel::Mother mother,
                             BoundaryCondition bc, std::size_t n,
                             const std::vector<double>& xi_grid, CurveOptions opt) {
  Partition p(n);
  return lyapunov_curve(deterministic_matrix(map, p), map, mother, bc, xi_grid, opt);
}

LyapunovCurve lyapunov_curve(const StochasticMatrix& det, const MapSpec& map,
                             NoiseKernel::Mother mother, BoundaryCondition bc,
                             const std::vector<double>& xi_grid, CurveOptions opt) {
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    if (!(xi_grid[i] > 0.0)) throw AmplitudeError("grid amplitudes must be positive");
    if (i > 0 && !(xi_grid[i] > xi_grid[i - 1])) {
      throw DomainError("grid must be strictly increasing");
    }
  }
  Partition p(det.n());
  LyapunovCurve curve;
  curve.samples.reserve(xi_grid.size());
  for (double xi : xi_grid) {
    CurveSample sample;
    sample.xi = xi;
    NoiseKernel kernel(mother, xi);
    AnnealedOperator op = annealed_operator(det, kernel, bc, p);
    PowerOptions popt;
    popt.tol = opt.tol;
    popt.max_iter = opt.max_iter;
    try {
      StationarySolve solve = stationary_density(op, popt);
      sample.lambda = lyapunov_from_density(map, solve.density);
      sample.residual = solve.residual;
      sample.variation = variation(solve.density);
      sample.iterations = solve.iterations;
    } catch (const NonConvergence& e) {
      sample.lambda = std::numeric_limits<double>::quiet_NaN();
      sample.residual = e.residual;
      sample.variation = std::numeric_limits<double>::quiet_NaN();
      sample.iterations = e.max_iter;
      sample.error = e.what();
    }
    if (opt.compute_coupling) {
      sample.coupling_k = coupling_time(op, opt.coupling_k_max);
    }
    curve.samples.push_back(std::move(sample));
  }
  return curve;
}

std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw DomainError("need 0 < lo < hi and at least 2 points");
  }
  std::vector<double> grid(count);
  double llo = std::log(lo);
  double lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = std::exp(llo + t * (lhi - llo));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::optional<NioCertificate> detect_nio(const LyapunovCurve& curve, double margin) {
  if (!(margin >= 0.0)) throw DomainError("margin must be nonnegative");
  const CurveSample* positive = nullptr;
  for (const CurveSample& s : curve.samples) {
    if (positive == nullptr) {
      if (s.lambda > margin) positive = &s;
    } else if (s.lambda < -margin) {
      NioCertificate cert;
      cert.positive = *positive;
      cert.negative = s;
      cert.margin = margin;
      return cert;
    }
  }
  return std::nullopt;
}

std::vector<std::pair<double, double>> sign_changes(const LyapunovCurve& curve) {
  std::vector<std::pair<double, double>> out;
  const CurveSample* prev = nullptr;
  for (const CurveSample& s : curve.samples) {
    if (!s.error.empty() || std::isnan(s.lambda) || s.lambda == 0.0) continue;
    if (prev != nullptr && std::signbit(prev->lambda) != std::signbit(s.lambda)) {
      out.emplace_back(prev->xi, s.xi);
    }
    prev = &s;
  }
  return out;
}

double parameter_continuity_bound(const MapSpec& map1, const MapSpec& map2,
                                  const NoiseKernel& kernel,
                                  const ContractionReport& contraction) {
  if (!(contraction.l1_norm < 1.0)) {
    throw ContractionError("contraction norm must be below 1");
  }
  double c = static_cast<double>(contraction.k) / (1.0 - contraction.l1_norm);
  return c * map_sup_distance(map1, map2) * kernel.variation();
}

}  // namespace nio
