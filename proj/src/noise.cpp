#include "nio/noise.hpp"

#include <cmath>
#include <string>

#include "nio/errors.hpp"

namespace nio {

NoiseKernel::NoiseKernel(Mother mother, double xi) : mother_(mother), xi_(xi) {
  if (!(xi > 0.0))
    throw AmplitudeError("noise amplitude must be > 0, got " + std::to_string(xi));
}

double NoiseKernel::density(double x) const {
  if (x < -xi_ || x > xi_) return 0.0;
  return 0.5 / xi_;
}

double NoiseKernel::cdf(double x) const {
  if (x <= -xi_) return 0.0;
  if (x >= xi_) return 1.0;
  return (x + xi_) / (2.0 * xi_);
}

double NoiseKernel::cdf_antiderivative(double y) const {
  if (y <= -xi_) return 0.0;
  if (y >= xi_) return y;
  const double t = y + xi_;
  return t * t / (4.0 * xi_);
}

double NoiseKernel::variation() const {
  // Two jumps of height 1/(2 xi).
  return 1.0 / xi_;
}

double NoiseKernel::quantile(double u) const { return xi_ * (2.0 * u - 1.0); }

}  // namespace nio
