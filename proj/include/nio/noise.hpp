#ifndef NIO_NOISE_HPP
#define NIO_NOISE_HPP

namespace nio {

/// A mother noise density on [-1,1] rescaled by an amplitude xi > 0:
/// rho_xi(x) = rho(x/xi)/xi, supported on [-xi, xi].
///
/// Only the Uniform mother (rho = (1/2) 1_[-1,1]) ships concretely. Adding a
/// mother kernel means extending the enumeration and providing density, CDF,
/// CDF antiderivative and total variation in closed form (the Ulam entries
/// and the inverse-CDF sampler consume them).
class NoiseKernel {
public:
  enum class Mother { Uniform };

  NoiseKernel(Mother mother, double xi);

  Mother mother() const { return mother_; }
  double xi() const { return xi_; }

  /// rho_xi(x); zero outside [-xi, xi].
  double density(double x) const;

  /// CDF of rho_xi: 0 at -xi, 1 at +xi.
  double cdf(double x) const;

  /// Antiderivative of the CDF with value 0 on (-inf, -xi] (equals y beyond
  /// +xi). Closed form, used for exact box-convolution masses.
  double cdf_antiderivative(double y) const;

  /// Total variation of rho_xi over the real line (1/xi for Uniform).
  double variation() const;

  /// Inverse CDF; maps u in [0,1) to a sample in [-xi, xi).
  double quantile(double u) const;

private:
  Mother mother_;
  double xi_;
};

}  // namespace nio

#endif  // NIO_NOISE_HPP
