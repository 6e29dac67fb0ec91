#include "nio/ulam.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "nio/errors.hpp"
#include "nio/kernels.hpp"

namespace nio {

namespace {

constexpr double kGridTol = 1e-12;

bool on_partition_point(const Partition& p, double x) {
  double steps = (x + 1.0) / p.delta();
  return std::abs(steps - std::round(steps)) * p.delta() <= kGridTol;
}

}  // namespace

StochasticMatrix deterministic_matrix(const PiecewiseMap& map, const Partition& p) {
  for (const auto& b : map.branches) {
    if (!on_partition_point(p, b.x_lo) || !on_partition_point(p, b.x_hi)) {
      throw CellStraddlingError("branch endpoints must lie on partition points");
    }
  }
  std::size_t n = p.n();
  StochasticMatrix m(n);
  for (const auto& b : map.branches) {
    double ya = b.forward(b.x_lo);
    double yb = b.forward(b.x_hi);
    double ylo = std::min(ya, yb);
    double yhi = std::max(ya, yb);
    for (std::size_t j = 0; j < n; ++j) {
      double c = std::max(p.left(j), ylo);
      double d = std::min(p.right(j), yhi);
      if (!(d > c)) continue;
      auto pc = b.inverse(c);
      auto pd = b.inverse(d);
      if (!pc || !pd) continue;
      double plo = std::clamp(std::min(*pc, *pd), b.x_lo, b.x_hi);
      double phi = std::clamp(std::max(*pc, *pd), b.x_lo, b.x_hi);
      if (!(phi > plo)) continue;
      std::size_t ilo = p.cell_index(plo);
      std::size_t ihi = p.cell_index(phi);
      for (std::size_t i = ilo; i <= ihi; ++i) {
        double ov = std::min(phi, p.right(i)) - std::max(plo, p.left(i));
        if (ov > 0.0) m.at(i, j) += ov / p.delta();
      }
    }
  }
  return m;
}

StochasticMatrix deterministic_matrix(const MapSpec& map, const Partition& p) {
  return deterministic_matrix(as_piecewise(map), p);
}

namespace {

struct Window {
  double lo, hi;
};

// Unfolded real-line intervals that the boundary condition maps onto the
// target cell [c,d], restricted to those genuinely overlapping the support
// interval (lo,hi). Restricting up front keeps entries outside the
// geometric support at exact zero instead of roundoff residue.
std::vector<Window> unfolded_windows(BoundaryCondition bc, double c, double d,
                                     double lo, double hi) {
  std::vector<Window> out;
  auto add = [&](double u, double v) {
    if (v > lo && u < hi) out.push_back({u, v});
  };
  if (bc == BoundaryCondition::Periodic) {
    long kmin = static_cast<long>(std::floor((lo - d) / 2.0)) - 1;
    long kmax = static_cast<long>(std::ceil((hi - c) / 2.0)) + 1;
    for (long k = kmin; k <= kmax; ++k) {
      add(c + 2.0 * static_cast<double>(k), d + 2.0 * static_cast<double>(k));
    }
  } else {
    long kmin = static_cast<long>(std::floor((lo - d) / 4.0)) - 1;
    long kmax = static_cast<long>(std::ceil((hi + d) / 4.0)) + 2;
    for (long k = kmin; k <= kmax; ++k) {
      double shift = 4.0 * static_cast<double>(k);
      add(c + shift, d + shift);
      add(shift - 2.0 - d, shift - 2.0 - c);
    }
  }
  return out;
}

// Probability that y + noise lands in [u,v] for y uniform on [l,r], via the
// antiderivative of the noise CDF.
double window_mass_closed(const NoiseKernel& kernel, double l, double r, double u,
                          double v) {
  return kernel.cdf_antiderivative(v - l) - kernel.cdf_antiderivative(v - r) -
         kernel.cdf_antiderivative(u - l) + kernel.cdf_antiderivative(u - r);
}

// Same mass as the integral of CDF differences, split at the kink points so
// Gauss-Legendre is exact on each piece.
double window_mass_quadrature(const NoiseKernel& kernel, double l, double r, double u,
                              double v) {
  double xi = kernel.xi();
  std::array<double, 6> pts = {u, v, l - xi, l + xi, r - xi, r + xi};
  std::sort(pts.begin(), pts.end());
  using gauss = boost::math::quadrature::gauss<double, 16>;
  auto integrand = [&](double z) { return kernel.cdf(z - l) - kernel.cdf(z - r); };
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    double a = std::max(pts[s], u);
    double b = std::min(pts[s + 1], v);
    if (b > a) total += gauss::integrate(integrand, a, b);
  }
  return total;
}

}  // namespace

StochasticMatrix noise_matrix(const NoiseKernel& kernel, BoundaryCondition bc,
                              const Partition& p, bool normalize,
                              NoiseMatrixMethod method) {
  std::size_t n = p.n();
  double xi = kernel.xi();
  StochasticMatrix m(n);
  int nt = kernels::max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    auto i = static_cast<std::size_t>(ii);
    double l = p.left(i);
    double r = p.right(i);
    double lo = l - xi;
    double hi = r + xi;
    for (std::size_t j = 0; j < n; ++j) {
      double c = p.left(j);
      double d = p.right(j);
      double mass = 0.0;
      for (const Window& w : unfolded_windows(bc, c, d, lo, hi)) {
        if (method == NoiseMatrixMethod::ClosedForm) {
          mass += window_mass_closed(kernel, l, r, w.lo, w.hi);
        } else {
          mass += window_mass_quadrature(kernel, l, r, w.lo, w.hi);
        }
      }
      m.at(i, j) = std::max(mass / p.delta(), 0.0);
    }
  }
  if (normalize) m.renormalize_rows();
  return m;
}

AnnealedOperator annealed_operator(const MapSpec& map, const NoiseKernel& kernel,
                                   BoundaryCondition bc, const Partition& p) {
  return AnnealedOperator(deterministic_matrix(map, p), noise_matrix(kernel, bc, p));
}

AnnealedOperator annealed_operator(const PiecewiseMap& map, const NoiseKernel& kernel,
                                   BoundaryCondition bc, const Partition& p) {
  return AnnealedOperator(deterministic_matrix(map, p), noise_matrix(kernel, bc, p));
}

AnnealedOperator annealed_operator(StochasticMatrix det, const NoiseKernel& kernel,
                                   BoundaryCondition bc, const Partition& p) {
  return AnnealedOperator(std::move(det), noise_matrix(kernel, bc, p));
}

StochasticMatrix annealed_matrix(const MapSpec& map, const NoiseKernel& kernel,
                                 BoundaryCondition bc, const Partition& p) {
  return annealed_operator(map, kernel, bc, p).materialize();
}

}  // namespace nio
