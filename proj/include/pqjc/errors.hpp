#ifndef PQJC_ERRORS_HPP
#define PQJC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pqjc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid construction of a domain type (bad parameter regime, negative
// tolerance, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Configuration file / flag errors; carries the offending field name.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& msg)
      : Error("config field '" + field + "': " + msg), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Argument lies outside the domain of definition of a special function.
class OutsideDomain : public Error {
 public:
  using Error::Error;
};

// Series has zero radius of convergence for the requested parameters.
class DivergentSeries : public Error {
 public:
  using Error::Error;
};

// Infinite product cannot converge (|q| >= 1 style preconditions).
class NonconvergentProduct : public Error {
 public:
  using Error::Error;
};

// Series or product failed to meet tolerance within max_terms.
class TruncationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Two truncated objects with incompatible cutoffs or basis tags.
class CutoffMismatch : public Error {
 public:
  using Error::Error;
};

// Action-identity ladder scheme requires E_n > E_0 up to the cutoff.
class SpectrumNotBoundedBelow : public Error {
 public:
  using Error::Error;
};

// Closed-form result disagrees with its independent oracle.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

// sign(E([n+1])) requested at a level crossing.
class AmbiguousSign : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// resolution_check invoked without verified moments.
class MomentPrereqFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace pqjc

#endif  // PQJC_ERRORS_HPP
