#ifndef NIO_ERRORS_HPP
#define NIO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nio {

/// Argument outside the model's domain ([-1,1] points, (alpha,beta) region, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Noise amplitude xi <= 0.
class AmplitudeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A monotone-branch endpoint does not coincide with a partition point.
class CellStraddlingError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Bisection bracket endpoints do not straddle a sign change.
class BracketError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A contraction factor >= 1 where < 1 is required.
class ContractionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Power iteration did not reach tolerance; the chain may not be mixing.
class NonConvergence : public std::runtime_error {
public:
  NonConvergence(int max_iter, double residual)
      : std::runtime_error("power iteration did not converge after " +
                           std::to_string(max_iter) +
                           " iterations (residual " + std::to_string(residual) + ")"),
        max_iter(max_iter),
        residual(residual) {}
  int max_iter;
  double residual;
};

/// Every Monte Carlo orbit hit the critical point exactly.
class AllOrbitsRejected : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Matrix file could not be read or written, or has a malformed header.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace nio

#endif  // NIO_ERRORS_HPP
