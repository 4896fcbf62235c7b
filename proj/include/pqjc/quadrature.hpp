#ifndef PQJC_QUADRATURE_HPP
#define PQJC_QUADRATURE_HPP

#include <functional>

#include "pqjc/errors.hpp"

namespace pqjc {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // accumulated panel estimates plus the tail bound
  double upper_cutoff = 0.0;
  long evaluations = 0;
};

// Integral of a nonnegative integrand with super-polynomially decaying tail
// over [0, inf): adaptive panels [0,1], [1,2], [2,4], ... are integrated
// until the analytic tail bound 2 f(U) U (valid once f halves at least
// quadratically per doubling) drops below the requested tolerance.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double rel_tol, double abs_floor = 1e-300);

}  // namespace pqjc

#endif  // PQJC_QUADRATURE_HPP
