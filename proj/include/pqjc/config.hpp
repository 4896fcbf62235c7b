#ifndef PQJC_CONFIG_HPP
#define PQJC_CONFIG_HPP

#include <complex>
#include <string>

#include <json.hpp>

#include "pqjc/ladder.hpp"
#include "pqjc/moments.hpp"
#include "pqjc/series.hpp"
#include "pqjc/spectrum.hpp"
#include "pqjc/vcs.hpp"

namespace pqjc {

// Canonical run configuration. File values override the defaults below;
// command-line flags override file values.
struct RunConfig {
  struct Model {
    double p = 1.2;
    double q = 0.5;
    double epsilon = 0.05;
    double lambda = 0.3;
    double omega0 = 1.0;
    double h_constant = 1.0;
    double mu = 0.5;
    double nu = 0.0;
  } model;

  struct Scheme {
    std::string kind = "algebra";  // algebra | action_identity
    double p0 = 1.2;
    double q0 = 0.5;
    double alpha = 1.0;
    double tau_plus = 0.0;
    double tau_minus = 0.0;
  } scheme;

  struct Vcs {
    double z_re = 0.4;
    double z_im = 0.0;
    double theta = 0.78539816339744831;  // pi/4
    double phi = 0.0;
  } vcs;

  struct Numeric {
    int n_max = 64;
    double rel_tol = 1e-13;
    double abs_tol = 1e-16;
    int max_terms = 10000;
    double quad_tol = 1e-8;
  } numeric;

  struct Output {
    std::string format = "csv";  // csv | json
    std::string path = "-";      // "-" = stdout
  } output;

  // Typed views; all invariants are enforced here with field-attributed
  // ConfigError.
  JCModelParams make_model() const;
  LadderScheme make_scheme() const;
  VCSParams make_vcs_params() const;
  SeriesControl make_series_control() const;
  // Weight family induced by the scheme block: (1,1) -> Fock, (p,q) ->
  // PQExplicit, (p^alpha, q^alpha) -> AlphaFamily(alpha).
  WeightChoice make_weight_choice() const;
};

// Parse/merge a JSON document onto the defaults; unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

nlohmann::json to_json(const RunConfig& cfg);

// Canonical single-line serialization (sorted keys, round-trip doubles).
std::string canonical_config(const RunConfig& cfg);

// 17-significant-digit decimal form used for all CSV payload numbers.
std::string format_double(double x);

}  // namespace pqjc

#endif  // PQJC_CONFIG_HPP
