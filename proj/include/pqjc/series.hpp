#ifndef PQJC_SERIES_HPP
#define PQJC_SERIES_HPP

#include "pqjc/errors.hpp"

namespace pqjc {

// Truncation policy shared by every series/product evaluation.
struct SeriesControl {
  double rel_tol = 1e-13;
  double abs_tol = 1e-16;
  int max_terms = 10000;

  void validate() const {
    if (!(rel_tol > 0.0)) throw InvalidParameter("SeriesControl: rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw InvalidParameter("SeriesControl: abs_tol must be > 0");
    if (max_terms < 1) throw InvalidParameter("SeriesControl: max_terms must be >= 1");
  }
};

// Stops a series once |term| < rel_tol*|sum| + abs_tol held for three
// consecutive terms. Deformed series can have non-monotone terms; a single
// small term is not evidence of convergence.
class TruncationGuard {
 public:
  explicit TruncationGuard(const SeriesControl& ctl) : ctl_(ctl) {}

  bool converged(double term_mag, double sum_mag) {
    if (term_mag < ctl_.rel_tol * sum_mag + ctl_.abs_tol) {
      ++streak_;
    } else {
      streak_ = 0;
    }
    return streak_ >= 3;
  }

 private:
  SeriesControl ctl_;
  int streak_ = 0;
};

}  // namespace pqjc

#endif  // PQJC_SERIES_HPP
