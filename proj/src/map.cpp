#include "nio/map.hpp"

#include <cmath>
#include <string>

#include "nio/errors.hpp"

namespace nio {

MapSpec::MapSpec(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 1.0))
    throw DomainError("alpha must be > 1, got " + std::to_string(alpha));
  if (!(beta > 0.0 && beta <= 1.0))
    throw DomainError("beta must be in (0,1], got " + std::to_string(beta));
}

double MapSpec::evaluate(double x) const {
  if (std::fabs(x) > 1.0)
    throw DomainError("map argument outside [-1,1]: " + std::to_string(x));
  return 2.0 * beta_ * std::pow(std::fabs(x), alpha_) - 1.0;
}

double MapSpec::log_abs_derivative(double x) const {
  if (std::fabs(x) > 1.0)
    throw DomainError("map argument outside [-1,1]: " + std::to_string(x));
  // (alpha-1) > 0, so log|0| = -inf propagates to -inf, never NaN.
  return std::log(2.0 * alpha_ * beta_) + (alpha_ - 1.0) * std::log(std::fabs(x));
}

std::optional<double> MapSpec::branch_inverse(double y, Branch branch) const {
  if (y < image_lo() || y > image_hi()) return std::nullopt;
  const double r = std::pow((y + 1.0) / (2.0 * beta_), 1.0 / alpha_);
  return branch == Branch::Right ? r : -r;
}

double fold(BoundaryCondition bc, double x) {
  if (bc == BoundaryCondition::Periodic) {
    double r = std::fmod(x + 1.0, 2.0);
    if (r < 0.0) r += 2.0;
    return r - 1.0;
  }
  // Reflecting: min over integers i of |(x+1) - 4i|, minus 1.
  const double t = x + 1.0;
  const double r = std::fabs(t - 4.0 * std::round(t / 4.0));
  return r - 1.0;
}

PiecewiseMap as_piecewise(const MapSpec& map) {
  PiecewiseMap pm;
  pm.evaluate = [map](double x) { return map.evaluate(x); };
  pm.log_abs_derivative = [map](double x) { return map.log_abs_derivative(x); };
  pm.branches.push_back(MonotoneBranch{
      -1.0, 0.0, [map](double x) { return map.evaluate(x); },
      [map](double y) { return map.branch_inverse(y, Branch::Left); }});
  pm.branches.push_back(MonotoneBranch{
      0.0, 1.0, [map](double x) { return map.evaluate(x); },
      [map](double y) { return map.branch_inverse(y, Branch::Right); }});
  return pm;
}

PiecewiseMap identity_map() {
  PiecewiseMap pm;
  pm.evaluate = [](double x) { return x; };
  pm.log_abs_derivative = [](double) { return 0.0; };
  pm.branches.push_back(MonotoneBranch{
      -1.0, 1.0, [](double x) { return x; },
      [](double y) -> std::optional<double> {
        if (y < -1.0 || y > 1.0) return std::nullopt;
        return y;
      }});
  return pm;
}

namespace {

// Maximize a unimodal function on [a,b] by golden-section search.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace

double map_sup_distance(const MapSpec& map1, const MapSpec& map2) {
  const double a = std::min(map1.alpha(), map2.alpha());
  const double k = std::fabs(map1.alpha() - map2.alpha());
  const double h = std::fabs(map1.beta() - map2.beta());
  if (h == 0.0 && k == 0.0) return 0.0;
  // Pointwise bound 2h x^a + 2 x^a (1 - x^k) on [0,1]; its derivative changes
  // sign at most once, so golden-section is exact up to the tolerance.
  auto bound = [a, k, h](double x) {
    const double xa = std::pow(x, a);
    return 2.0 * h * xa + 2.0 * xa * (1.0 - std::pow(x, k));
  };
  // The endpoint x=1 carries the exact value 2h when k=0; golden-section
  // alone would return it a few ulp short of the true maximum.
  return std::max({golden_max(bound, 0.0, 1.0, 1e-10), bound(0.0), bound(1.0)});
}

}  // namespace nio
