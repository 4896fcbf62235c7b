#ifndef PQJC_VCS_HPP
#define PQJC_VCS_HPP

#include <complex>
#include <memory>
#include <vector>

#include "pqjc/ladder.hpp"
#include "pqjc/spectrum.hpp"

namespace pqjc {

// Parameters of a vector coherent state: complex amplitude z, sphere
// coordinates (theta, phi), time offsets tau_+- and the bound scheme/model.
// The state's tau_+- take precedence over the scheme's own offsets.
struct VCSParams {
  std::complex<double> z{0.0, 0.0};
  double theta = 0.0;
  double phi = 0.0;
  double tau_plus = 0.0;
  double tau_minus = 0.0;
  LadderScheme scheme;
  JCModelParams model;

  void validate() const;
};

struct RadiusPair {
  ConvergenceRadius plus;
  ConvergenceRadius minus;

  bool admits(double abs_z) const { return plus.admits(abs_z) && minus.admits(abs_z); }
  // Smallest finite radius, or +inf when both branches are entire.
  double min_value() const;
};

struct TruncationReport {
  bool converged_plus = false;
  bool converged_minus = false;
  double last_term_plus = 0.0;
  double last_term_minus = 0.0;
};

// Convergence radius of one branch's normalization series: closed form for
// Algebra schemes, ratio-test estimate (safety factor 0.9 over the last ten
// moduli) otherwise.
ConvergenceRadius scheme_radius(const LadderScheme& scheme, const JCModelParams& model,
                                const SpectrumTable& table, Sign branch);

struct NormalizationResult {
  double N = 1.0;  // N^+-(|z|), positive
  ConvergenceRadius radius;
};

// N^+-(|z|) = [sum (q^mu/p^nu)^{n(n-1)} |z|^{2n} / (K0([n])!)^2]^{-1/2}.
NormalizationResult normalization(double abs_z, Sign branch, const LadderScheme& scheme,
                                  const JCModelParams& model, int n_max,
                                  const SeriesControl& ctl);

// A truncated (p,q)-vector coherent state over the eigenbasis towers.
class VCSState {
 public:
  const VCSParams& params() const { return params_; }
  const SpectrumTable& table() const { return *table_; }
  std::shared_ptr<const SpectrumTable> table_ptr() const { return table_; }
  const LadderPair& ladder() const { return ladder_; }
  int n_max() const { return static_cast<int>(coeff_plus_.size()) - 1; }
  const std::vector<std::complex<double>>& coeff(Sign s) const {
    return s == Sign::Plus ? coeff_plus_ : coeff_minus_;
  }
  double norm_factor(Sign s) const { return s == Sign::Plus ? norm_plus_ : norm_minus_; }
  const RadiusPair& radius() const { return radius_; }
  const TruncationReport& truncation() const { return truncation_; }
  const SeriesControl& control() const { return ctl_; }

  // Squared norm of the stored coefficient vectors (should be 1).
  double norm_squared() const;

  // Eigenbasis view of the coefficients (singleton slot zero).
  TruncatedState as_truncated_state() const;

 private:
  friend VCSState build_vcs(const VCSParams&, int, const SeriesControl&);

  VCSParams params_;
  std::shared_ptr<const SpectrumTable> table_;
  LadderPair ladder_;
  std::vector<std::complex<double>> coeff_plus_;
  std::vector<std::complex<double>> coeff_minus_;
  double norm_plus_ = 1.0;
  double norm_minus_ = 1.0;
  RadiusPair radius_;
  TruncationReport truncation_;
  SeriesControl ctl_;
};

VCSState build_vcs(const VCSParams& params, int n_max, const SeriesControl& ctl);

// || A^- |state> - z Q_V |state> || over components 0..n_max-1.
double annihilation_residual(const VCSState& state);

// Temporal stability: rebuild with tau_+- -> t + tau_+-.
VCSState evolve(const VCSState& state, double t);

// <H^red> = sum |c_n^+-|^2 E_n^+-.
double expectation_H(const VCSState& state);

// <A^+ A^-> = |z|^2 sum (q^mu/p^nu)^{2n} |c_n^+-|^2.
double expectation_number(const VCSState& state);

// <sigma_3(t)>; the lambda = 0 cross term vanishes identically.
double atomic_inversion(const VCSState& state, double t);

struct ActionVariables {
  double J_plus = 0.0;
  double J_minus = 0.0;
};

// Action variables of the temporal-stability flow; J_+ + J_- = <H^red>.
ActionVariables action_variables(const VCSState& state);

}  // namespace pqjc

#endif  // PQJC_VCS_HPP
