#ifndef PQJC_MOMENTS_HPP
#define PQJC_MOMENTS_HPP

#include <vector>

#include "pqjc/quadrature.hpp"
#include "pqjc/spectrum.hpp"

namespace pqjc {

// Weight families with exact closed-form moments:
//   PQExplicit : mu = 1/2, nu = 0, (p0,q0) = (p,q)
//   FockExplicit : mu = nu = 0, (p0,q0) = (1,1), h(u) = exp(-u)
//   AlphaFamily(alpha) : mu = alpha/2, nu = 0, (p0,q0) = (p^alpha, q^alpha);
//   alpha = 1 recovers PQExplicit, alpha -> 0 the Fock weight.
struct WeightChoice {
  enum class Kind { PQExplicit, FockExplicit, AlphaFamily };

  Kind kind = Kind::FockExplicit;
  double alpha = 1.0;

  static WeightChoice pq_explicit() { return {Kind::PQExplicit, 1.0}; }
  static WeightChoice fock() { return {Kind::FockExplicit, 1.0}; }
  static WeightChoice alpha_family(double a) { return {Kind::AlphaFamily, a}; }

  double mu() const;
  double nu() const { return 0.0; }
  double p0(const JCModelParams& model) const;
  double q0(const JCModelParams& model) const;
  void validate(const JCModelParams& model) const;
};

// h^+-(u) of the chosen family; positive, decaying, unit zeroth moment.
double weight_h(double u, const WeightChoice& choice, const JCModelParams& model,
                const SeriesControl& ctl);

// Measure weights W^+(|z|) = 3/(4 pi^2) |N^+|^{-2} h^+(|z|^2) and
// W^-(|z|) = 3/(8 pi^2) |N^-|^{-2} h^-(|z|^2).
double weight_W(double abs_z, Sign branch, const WeightChoice& choice,
                const JCModelParams& model, const SeriesControl& ctl);

struct MomentEntry {
  int n = 0;
  double lhs = 0.0;      // quadrature of int u^n h(u) du
  double rhs = 0.0;      // (q^mu/p^nu)^{-n(n-1)} (K0([n])!)^2
  double rel_err = 0.0;
  double quad_error = 0.0;
  long evaluations = 0;
};

struct MomentReport {
  std::vector<MomentEntry> entries;
  double max_rel_err = 0.0;
  double quad_tol = 0.0;

  bool pass() const { return max_rel_err <= quad_tol; }
};

// Stieltjes moment verification: quadrature lhs against the closed-form rhs
// for n = 0..n_check.
MomentReport verify_moments(const WeightChoice& choice, const JCModelParams& model,
                            int n_check, double quad_tol);

struct RamanujanResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

// int_0^inf t^n e_q(-t) dt  =  -(q;q)_n q^{-n(n+1)/2} log q.
RamanujanResult ramanujan_classical(int n, double q, double quad_tol);

// int_0^inf t^n e_{(p,q)}(-lambda0 p^{-1/2} t) dt
//   = [p,q;p,q]_n / (lambda0^{n+1} q^{n(n+1)/2}) log(1/(pq)).
RamanujanResult ramanujan_pq(int n, double lambda0, const JCModelParams& model,
                             double quad_tol);

struct ResolutionReport {
  int n_pairs = 0;
  double max_diag_dev = 0.0;  // max |<E_n^s| I |E_n^s> - 1|
  double max_offdiag = 0.0;   // max off-diagonal magnitude (phase integrals)
  double singleton_row = 0.0; // identically zero: identity resolves on the towers only
};

// Assembles <E_m^s| I |E_n^s'> from the verified radial moments and the
// angular integrals; requires verify_moments to pass at quad_tol first.
ResolutionReport resolution_check(const WeightChoice& choice, const JCModelParams& model,
                                  int n_pairs, double quad_tol);

// Moment targets prod_{k=1}^n (E_k^+- - E_0^+-) of the action-identity
// scheme on its finite disk. No closed-form weight is constructed for them;
// they are exposed for external moment-problem studies, together with the
// radius estimate from scheme_radius.
std::vector<double> action_identity_moment_targets(const SpectrumTable& table, Sign branch,
                                                   int n_max);

}  // namespace pqjc

#endif  // PQJC_MOMENTS_HPP
