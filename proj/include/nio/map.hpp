#ifndef NIO_MAP_HPP
#define NIO_MAP_HPP

#include <functional>
#include <optional>
#include <vector>

namespace nio {

enum class Branch { Left, Right };

enum class BoundaryCondition { Periodic, Reflecting };

/// The symmetric unimodal family T(x) = 2*beta*|x|^alpha - 1 on [-1,1].
///
/// alpha > 1 and 0 < beta <= 1 are enforced at construction; the image is
/// [-1, 2*beta-1] which stays inside the domain.
class MapSpec {
public:
  MapSpec(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// T(x). Throws DomainError if |x| > 1.
  double evaluate(double x) const;

  /// log|T'(x)| = log(2*alpha*beta) + (alpha-1)*log|x|.
  /// Returns -infinity at the critical point x = 0 (never NaN).
  double log_abs_derivative(double x) const;

  /// Preimage of y on the chosen branch: -+((y+1)/(2*beta))^(1/alpha).
  /// Empty when y lies outside the image [-1, 2*beta-1].
  std::optional<double> branch_inverse(double y, Branch branch) const;

  /// Critical value T(0) = -1 and top of the image 2*beta - 1.
  double image_lo() const { return -1.0; }
  double image_hi() const { return 2.0 * beta_ - 1.0; }

private:
  double alpha_;
  double beta_;
};

/// Fold a real number back into [-1,1] under the chosen boundary condition.
/// Periodic reduces x+1 mod 2; Reflecting is min_i |(x+1)-4i| - 1.
double fold(BoundaryCondition bc, double x);

/// One monotone branch of a piecewise-monotone interval map.
///
/// `forward` must be continuous and strictly monotone on [x_lo, x_hi];
/// `inverse` returns the preimage of y on this branch, or empty when y is
/// outside the branch image. Branch endpoints must land on partition points
/// when the branch set is fed to the Ulam constructor.
struct MonotoneBranch {
  double x_lo;
  double x_hi;
  std::function<double(double)> forward;
  std::function<std::optional<double>(double)> inverse;
};

/// Minimal evaluation contract the Ulam module needs from any map:
/// pointwise evaluation, the log-derivative integrand, and the monotone
/// branch decomposition.
struct PiecewiseMap {
  std::function<double(double)> evaluate;
  std::function<double(double)> log_abs_derivative;
  std::vector<MonotoneBranch> branches;
};

/// The two-branch decomposition of a MapSpec ([-1,0] decreasing, [0,1] increasing).
PiecewiseMap as_piecewise(const MapSpec& map);

/// The identity map as a single monotone branch; used to exercise the
/// general-map contract.
PiecewiseMap identity_map();

/// Upper bound on sup_x |T_{a2,b2}(x) - T_{a1,b1}(x)| from the pointwise
/// parameter-perturbation bound 2h|x|^a + 2|x|^a(1-|x|^k), maximized over
/// [0,1] by golden-section search. Signed perturbations are handled by
/// taking the componentwise smaller parameters as the base map.
double map_sup_distance(const MapSpec& map1, const MapSpec& map2);

}  // namespace nio

#endif  // NIO_MAP_HPP
