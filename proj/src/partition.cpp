#include "nio/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "nio/errors.hpp"

namespace nio {

Partition::Partition(std::size_t n) : n_(n), delta_(2.0 / static_cast<double>(n)) {
  if (n < 2 || n % 2 != 0) {
    throw DomainError("partition size must be even and at least 2");
  }
}

std::size_t Partition::cell_index(double x) const {
  if (x < -1.0 || x > 1.0) {
    throw DomainError("point outside [-1,1]");
  }
  auto i = static_cast<std::size_t>((x + 1.0) / delta_);
  return std::min(i, n_ - 1);
}

double Density::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return delta() * s;
}

double Density::l1_distance(const Density& other) const {
  if (values.size() != other.values.size()) {
    throw DomainError("density size mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s += std::abs(values[i] - other.values[i]);
  }
  return delta() * s;
}

Density Density::uniform(std::size_t n) {
  Density f;
  f.values.assign(n, 0.5);
  return f;
}

Density Density::from_masses(const std::vector<double>& p) {
  Density f;
  f.values.resize(p.size());
  double delta = 2.0 / static_cast<double>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) f.values[i] = p[i] / delta;
  return f;
}

std::vector<double> Density::masses() const {
  std::vector<double> p(values.size());
  double d = delta();
  for (std::size_t i = 0; i < values.size(); ++i) p[i] = values[i] * d;
  return p;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  if (depth <= 0) {
    throw QuadratureError("adaptive quadrature failed to converge");
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double tol) {
  if (!(b > a)) return 0.0;
  double fa = f(a);
  double m = 0.5 * (a + b);
  double fm = f(m);
  double fb = f(b);
  double whole = simpson(fa, fm, fb, b - a);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

Density project(const Partition& partition, const std::function<double(double)>& f,
                double tol) {
  Density out;
  out.values.resize(partition.n());
  for (std::size_t i = 0; i < partition.n(); ++i) {
    double integral = adaptive_integral(f, partition.left(i), partition.right(i), tol);
    out.values[i] = integral / partition.delta();
  }
  return out;
}

}  // namespace nio
