#ifndef PQJC_PQMATH_HPP
#define PQJC_PQMATH_HPP

#include <complex>
#include <optional>

#include "pqjc/errors.hpp"
#include "pqjc/series.hpp"

namespace pqjc {

using Complex = std::complex<double>;

enum class Regime {
  StrictlyDeformed,  // p > 1, 0 < q < 1, pq < 1
  ArikCoon,          // p = 1, 0 < q < 1
  Classical,         // p = 1, q = 1
};

// The deformation pair (p, q). The regime is inferred at construction and
// invalid combinations (p > 1 with pq >= 1, q outside (0,1], p < 1) are
// rejected.
class DeformationParams {
 public:
  DeformationParams(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }
  Regime regime() const { return regime_; }
  bool classical() const { return regime_ == Regime::Classical; }

  static DeformationParams classical_limit() { return DeformationParams(1.0, 1.0); }

 private:
  double p_;
  double q_;
  Regime regime_;
};

// ---------------------------------------------------------------------------
// (p,q)-arithmetic
// ---------------------------------------------------------------------------

// [n] = (p^{-n} - q^n)/(p^{-1} - q); exactly n in the classical regime.
double basic_number(int n, const DeformationParams& d);

// [n]! = prod_{k=1}^n [k], with [0]! = 1.
double basic_factorial(int n, const DeformationParams& d);

// First n0 with [n0+1] < [n0]; nullopt when the sequence never turns around
// within n_limit (always the case for p = 1).
std::optional<int> turnaround_index(const DeformationParams& d, int n_limit);

// ---------------------------------------------------------------------------
// q-shifted and (p,q)-shifted factorials
// ---------------------------------------------------------------------------

// (x; q)_n = prod_{k=0}^{n-1} (1 - x q^k).
Complex q_pochhammer(Complex x, double q, int order);
double q_pochhammer(double x, double q, int order);

// (x; q)_inf, truncated once the factor deviates from 1 by less than rel_tol.
Complex q_pochhammer_inf(Complex x, double q, const SeriesControl& ctl);
double q_pochhammer_inf(double x, double q, const SeriesControl& ctl);

// [a,b; p,q]_n = prod_{k=0}^{n-1} (1/(a p^k) - b q^k), a != 0.
double pq_shifted_factorial(double a, double b, const DeformationParams& d, int order);

// [a,b; p,q]_inf. Requires pq < 1; identically 0 for p > 1 (the 1/(a p^k)
// prefactors contract to zero), and (b; q)_inf at p = 1, a = 1.
double pq_shifted_factorial_inf(double a, double b, const DeformationParams& d,
                                const SeriesControl& ctl);

// ---------------------------------------------------------------------------
// Deformed exponential functions
// ---------------------------------------------------------------------------

// E_q^{(mu)}(z) = sum q^{mu n^2} z^n/(q;q)_n. Entire for mu > 0, unit disk
// for mu = 0, rejected for mu < 0.
Complex exp_mu_q(Complex z, double mu, double q, const SeriesControl& ctl);

// Jackson exponential E_q(z) = sum q^{n(n-1)/2} z^n/(q;q)_n, entire.
Complex jackson_eq(Complex z, double q, const SeriesControl& ctl);

// calE_{(p,q)}^{(mu,nu)}(z) = sum (q^mu/p^nu)^{n^2} z^n/[p,q;p,q]_n.
Complex cal_e_pq(Complex z, double mu, double nu, const DeformationParams& d,
                 const SeriesControl& ctl);

// e_{(p,q)}(z) = sum p^{-n^2/2} z^n/[p,q;p,q]_n, |z| < p^{-1/2}.
Complex e_pq(Complex z, const DeformationParams& d, const SeriesControl& ctl);

// e_{(p,q)}(z) evaluated through its product form 1/(p^{1/2} z; pq)_inf,
// valid beyond the series disk (monotone decaying for z <= 0). This is the
// representation used for semi-infinite weight integrands.
double e_pq_product_form(double z, const DeformationParams& d, const SeriesControl& ctl);

// frak e_{(p,q)}^{(mu,nu)}(z) = sum (q^mu/p^nu)^{n^2} z^n/n!.
Complex frak_e_pq(Complex z, double mu, double nu, const DeformationParams& d,
                  const SeriesControl& ctl);

// ---------------------------------------------------------------------------
// Rescaled evaluations (argument premultiplied by p^{-1} - q, resp. 1 - q).
// These carry the basic-factorial denominators and remain finite in the
// classical regime, where each reduces to exp(z).
// ---------------------------------------------------------------------------

Complex cal_e_pq_scaled(Complex z, double mu, double nu, const DeformationParams& d,
                        const SeriesControl& ctl);
Complex e_pq_scaled(Complex z, const DeformationParams& d, const SeriesControl& ctl);
Complex exp_mu_q_scaled(Complex z, double mu, double q, const SeriesControl& ctl);
Complex jackson_eq_scaled(Complex z, double q, const SeriesControl& ctl);

// ---------------------------------------------------------------------------
// Convergence radius classification
// ---------------------------------------------------------------------------

struct ConvergenceRadius {
  enum class Kind { Infinite, Finite, Zero };

  Kind kind = Kind::Infinite;
  double value = 0.0;  // meaningful only for Kind::Finite (then > 0)

  static ConvergenceRadius infinite() { return {Kind::Infinite, 0.0}; }
  static ConvergenceRadius finite(double r);
  static ConvergenceRadius zero() { return {Kind::Zero, 0.0}; }

  bool admits(double abs_z) const {
    switch (kind) {
      case Kind::Infinite: return true;
      case Kind::Finite: return abs_z < value;
      case Kind::Zero: return abs_z == 0.0;
    }
    return false;
  }
};

enum class RadiusFamily { CalE, FrakE };

// CalE: infinite iff q^{2mu} p^{1-2nu} < 1, finite p^{nu-1} q^{-mu} on the
// boundary, zero above. FrakE: infinite iff q^mu p^{-nu} <= 1, else zero.
ConvergenceRadius classify_radius(RadiusFamily family, double mu, double nu,
                                  const DeformationParams& d);

namespace detail {
// [n] for raw (p0, q0) without regime validation; exact geometric-sum form.
double basic_number_raw(int n, double p0, double q0);
}  // namespace detail

}  // namespace pqjc

#endif  // PQJC_PQMATH_HPP
