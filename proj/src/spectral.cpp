#include "nio/spectral.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "nio/errors.hpp"
#include "nio/ulam.hpp"

namespace nio {

namespace {

using ApplyFn = std::function<std::vector<double>(const std::vector<double>&)>;

StationarySolve power_iterate(const ApplyFn& apply, std::size_t n,
                              const PowerOptions& opt) {
  Density start = opt.start ? *opt.start : Density::uniform(n);
  if (start.n() != n) throw DomainError("start density size mismatch");
  double delta = 2.0 / static_cast<double>(n);
  std::vector<double> cur = start.values;
  double residual = 0.0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    std::vector<double> next = apply(cur);
    double diff = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diff += std::abs(next[i] - cur[i]);
      mass += next[i];
    }
    residual = delta * diff;
    double scale = 1.0 / (delta * mass);
    for (double& v : next) v *= scale;
    cur = std::move(next);
    if (residual <= opt.tol) {
      return StationarySolve{Density{std::move(cur)}, residual, it};
    }
  }
  throw NonConvergence(opt.max_iter, residual);
}

}  // namespace

StationarySolve stationary_density(const StochasticMatrix& m, PowerOptions opt) {
  return power_iterate([&m](const std::vector<double>& f) { return m.apply(f); },
                       m.n(), opt);
}

StationarySolve stationary_density(const AnnealedOperator& op, PowerOptions opt) {
  return power_iterate([&op](const std::vector<double>& f) { return op.apply(f); },
                       op.n(), opt);
}

double v0_contraction_norm(const StochasticMatrix& m, int k) {
  if (k < 1) throw DomainError("power must be at least 1");
  StochasticMatrix p = m;
  bool power_of_two = (k & (k - 1)) == 0;
  if (power_of_two) {
    for (int s = 1; s < k; s <<= 1) {
      p = p.multiply(p);
      p.renormalize_rows();
    }
  } else {
    for (int j = 2; j <= k; ++j) {
      p = p.multiply(m);
      p.renormalize_rows();
    }
  }
  return p.dobrushin();
}

namespace {

std::optional<int> coupling_time_of(SupportMatrix step, int k_max) {
  SupportMatrix current = step;
  for (int k = 1; k <= k_max; ++k) {
    if (current.all_rows_intersect()) return k;
    if (k < k_max) current = current.multiply(step);
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> coupling_time(const StochasticMatrix& m, int k_max) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  return coupling_time_of(SupportMatrix::from(m), k_max);
}

std::optional<int> coupling_time(const AnnealedOperator& op, int k_max) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  return coupling_time_of(op.support(), k_max);
}

ContractionReport contraction_report(const StochasticMatrix& m, int k) {
  ContractionReport report;
  report.k = k;
  report.l1_norm = v0_contraction_norm(m, k);
  auto coupled_at = coupling_time(m, k);
  report.coupled = coupled_at.has_value();
  return report;
}

CoarseFineCertificate coarse_fine_certificate(const MapSpec& map,
                                              const NoiseKernel& kernel,
                                              BoundaryCondition bc, std::size_t n,
                                              int i) {
  if (i < 1) throw DomainError("certificate depth must be at least 1");
  Partition p(n);
  StochasticMatrix m = annealed_matrix(map, kernel, bc, p);
  CoarseFineCertificate cert;
  cert.delta = p.delta();
  cert.xi = kernel.xi();
  cert.i = i;
  cert.discrete_norms.push_back(1.0);
  StochasticMatrix power = m;
  for (int k = 1; k <= i; ++k) {
    cert.discrete_norms.push_back(power.dobrushin());
    if (k < i) {
      power = power.multiply(m);
      power.renormalize_rows();
    }
  }
  cert.bound = cert.discrete_norms.back() +
               (2.0 * i + 1.0) * cert.delta / cert.xi;
  cert.valid = cert.bound < 1.0;
  return cert;
}

double variation(const Density& f) {
  double v = 0.0;
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    v += std::abs(f.values[i] - f.values[i - 1]);
  }
  return v;
}

double bv_norm(const Density& f) {
  double l1 = 0.0;
  for (double v : f.values) l1 += std::abs(v);
  return variation(f) + f.delta() * l1;
}

double bv_distance(const Density& f, const Density& g) {
  if (f.n() != g.n()) throw DomainError("density size mismatch");
  Density diff;
  diff.values.resize(f.n());
  for (std::size_t i = 0; i < f.n(); ++i) {
    diff.values[i] = f.values[i] - g.values[i];
  }
  return bv_norm(diff);
}

bool fixed_point_proximity(const MapSpec& map, const Density& f, double xi) {
  std::size_t n = f.n();
  Partition p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.values[i] <= 1e-12) continue;
    double left = p.left(i);
    for (int t = 0; t < 100; ++t) {
      double x = left + p.delta() * static_cast<double>(t) / 99.0;
      if (std::abs(map.evaluate(x) - x) < 0.5 * xi) return true;
    }
  }
  return false;
}

double wasserstein1(const Density& f, const Density& g) {
  if (f.n() != g.n()) throw DomainError("density size mismatch");
  double delta = f.delta();
  double h = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < f.n(); ++i) {
    double a = h;
    double b = h + delta * (f.values[i] - g.values[i]);
    if (a * b >= 0.0) {
      total += 0.5 * delta * (std::abs(a) + std::abs(b));
    } else {
      total += 0.5 * delta * (a * a + b * b) / std::abs(a - b);
    }
    h = b;
  }
  return total;
}

double stationary_continuity_modulus(const MapSpec& map, NoiseKernel::Mother mother,
                                     BoundaryCondition bc, std::size_t n, double xi,
                                     double xi_hat) {
  if (!(xi > 0.0) || xi_hat < xi) {
    throw DomainError("amplitudes must satisfy 0 < xi <= xi_hat");
  }
  Partition p(n);
  auto solve_at = [&](double amplitude) {
    NoiseKernel kernel(mother, amplitude);
    return stationary_density(annealed_operator(map, kernel, bc, p)).density;
  };
  return bv_distance(solve_at(xi_hat), solve_at(xi));
}

}  // namespace nio
