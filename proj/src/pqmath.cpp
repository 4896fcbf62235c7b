#include "pqjc/pqmath.hpp"

#include <cmath>
#include <string>

namespace pqjc {

namespace {

// Boundary detection for radius classification works on the log of the
// growth factor; grid parameters hit the boundary exactly.
constexpr double kBoundaryTol = 1e-12;

std::string fmt(double x) { return std::to_string(x); }

}  // namespace

DeformationParams::DeformationParams(double p, double q) : p_(p), q_(q) {
  if (!(p >= 1.0)) throw InvalidParameter("DeformationParams: p must be >= 1, got " + fmt(p));
  if (!(q > 0.0 && q <= 1.0))
    throw InvalidParameter("DeformationParams: q must lie in (0, 1], got " + fmt(q));
  if (p == 1.0) {
    regime_ = (q == 1.0) ? Regime::Classical : Regime::ArikCoon;
  } else {
    if (q == 1.0)
      throw InvalidParameter("DeformationParams: q = 1 requires p = 1 (pq < 1 otherwise)");
    if (!(p * q < 1.0))
      throw InvalidParameter("DeformationParams: pq < 1 required for p > 1, got pq = " +
                             fmt(p * q));
    regime_ = Regime::StrictlyDeformed;
  }
}

namespace detail {

double basic_number_raw(int n, double p0, double q0) {
  if (n < 0) throw InvalidParameter("basic_number: n must be >= 0");
  if (n == 0) return 0.0;
  // Geometric-sum form of (p^{-n} - q^n)/(p^{-1} - q):
  //   [n] = sum_{k=0}^{n-1} p^{-(n-1-k)} q^k.
  // All terms are positive, so there is no cancellation; the ratio form
  // loses all precision as pq -> 1.
  const double pinv = 1.0 / p0;
  double term = std::pow(pinv, n - 1);
  double sum = term;
  const double step = p0 * q0;
  for (int k = 1; k < n; ++k) {
    term *= step;
    sum += term;
  }
  return sum;
}

}  // namespace detail

double basic_number(int n, const DeformationParams& d) {
  if (n < 0) throw InvalidParameter("basic_number: n must be >= 0");
  if (d.classical()) return static_cast<double>(n);
  return detail::basic_number_raw(n, d.p(), d.q());
}

double basic_factorial(int n, const DeformationParams& d) {
  if (n < 0) throw InvalidParameter("basic_factorial: n must be >= 0");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= basic_number(k, d);
  return prod;
}

std::optional<int> turnaround_index(const DeformationParams& d, int n_limit) {
  if (d.regime() != Regime::StrictlyDeformed) return std::nullopt;
  double prev = basic_number(1, d);
  for (int n = 1; n < n_limit; ++n) {
    const double next = basic_number(n + 1, d);
    if (next < prev) return n;
    prev = next;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// shifted factorials
// ---------------------------------------------------------------------------

Complex q_pochhammer(Complex x, double q, int order) {
  if (order < 0) throw InvalidParameter("q_pochhammer: order must be >= 0");
  Complex prod = 1.0;
  Complex xq = x;
  for (int k = 0; k < order; ++k) {
    prod *= (1.0 - xq);
    xq *= q;
  }
  return prod;
}

double q_pochhammer(double x, double q, int order) {
  return q_pochhammer(Complex(x, 0.0), q, order).real();
}

Complex q_pochhammer_inf(Complex x, double q, const SeriesControl& ctl) {
  ctl.validate();
  if (!(std::abs(q) < 1.0))
    throw NonconvergentProduct("q_pochhammer_inf: |q| < 1 required, got q = " + fmt(q));
  Complex prod = 1.0;
  Complex xq = x;
  for (int k = 0; k < ctl.max_terms; ++k) {
    prod *= (1.0 - xq);
    xq *= q;
    // multiplicative update: the next factor deviates from 1 by |x q^{k+1}|
    if (std::abs(xq) < ctl.rel_tol) return prod;
  }
  throw TruncationBudgetExceeded("q_pochhammer_inf: no convergence within max_terms");
}

double q_pochhammer_inf(double x, double q, const SeriesControl& ctl) {
  return q_pochhammer_inf(Complex(x, 0.0), q, ctl).real();
}

double pq_shifted_factorial(double a, double b, const DeformationParams& d, int order) {
  if (a == 0.0) throw InvalidParameter("pq_shifted_factorial: a must be nonzero");
  if (order < 0) throw InvalidParameter("pq_shifted_factorial: order must be >= 0");
  double prod = 1.0;
  double pk = 1.0, qk = 1.0;
  for (int k = 0; k < order; ++k) {
    prod *= (1.0 / (a * pk) - b * qk);
    pk *= d.p();
    qk *= d.q();
  }
  return prod;
}

double pq_shifted_factorial_inf(double a, double b, const DeformationParams& d,
                                const SeriesControl& ctl) {
  if (a == 0.0) throw InvalidParameter("pq_shifted_factorial_inf: a must be nonzero");
  const double pq = d.p() * d.q();
  if (!(pq < 1.0))
    throw NonconvergentProduct("pq_shifted_factorial_inf: pq < 1 required");
  // Factor out 1/(a p^k): [a,b;p,q]_inf = (ab; pq)_inf * prod_k 1/(a p^k).
  if (d.p() > 1.0) return 0.0;  // the prefactor product contracts to zero
  if (a == 1.0) return q_pochhammer_inf(b, pq, ctl);
  throw NonconvergentProduct(
      "pq_shifted_factorial_inf: diverges for p = 1 unless a = 1");
}

// ---------------------------------------------------------------------------
// exponential families
// ---------------------------------------------------------------------------

Complex exp_mu_q(Complex z, double mu, double q, const SeriesControl& ctl) {
  ctl.validate();
  if (!(q > 0.0 && q < 1.0)) throw OutsideDomain("exp_mu_q: requires 0 < q < 1");
  if (mu < 0.0) throw DivergentSeries("exp_mu_q: nowhere convergent for mu < 0");
  if (mu == 0.0 && std::abs(z) >= 1.0)
    throw OutsideDomain("exp_mu_q: mu = 0 is defined on |z| < 1 only");
  Complex term = 1.0, sum = 1.0;
  double qmu = std::pow(q, mu);          // q^{mu(2n+1)} accumulator
  const double qmu2 = qmu * qmu;
  double qn1 = q;                        // q^{n+1}
  TruncationGuard guard(ctl);
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= qmu * z / (1.0 - qn1);
    sum += term;
    qmu *= qmu2;
    qn1 *= q;
    if (guard.converged(std::abs(term), std::abs(sum))) return sum;
  }
  throw TruncationBudgetExceeded("exp_mu_q: no convergence within max_terms");
}

Complex jackson_eq(Complex z, double q, const SeriesControl& ctl) {
  ctl.validate();
  if (!(q > 0.0 && q < 1.0)) throw OutsideDomain("jackson_eq: requires 0 < q < 1");
  Complex term = 1.0, sum = 1.0;
  double qn = 1.0;   // q^n
  double qn1 = q;    // q^{n+1}
  TruncationGuard guard(ctl);
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= qn * z / (1.0 - qn1);
    sum += term;
    qn *= q;
    qn1 *= q;
    if (guard.converged(std::abs(term), std::abs(sum))) return sum;
  }
  throw TruncationBudgetExceeded("jackson_eq: no convergence within max_terms");
}

Complex cal_e_pq(Complex z, double mu, double nu, const DeformationParams& d,
                 const SeriesControl& ctl) {
  ctl.validate();
  if (d.classical())
    throw OutsideDomain(
        "cal_e_pq: degenerate at p = q = 1; use cal_e_pq_scaled for the classical limit");
  const ConvergenceRadius radius = classify_radius(RadiusFamily::CalE, mu, nu, d);
  if (radius.kind == ConvergenceRadius::Kind::Zero)
    throw DivergentSeries("cal_e_pq: zero radius of convergence (q^{2mu} p^{1-2nu} > 1)");
  if (!radius.admits(std::abs(z)))
    throw OutsideDomain("cal_e_pq: |z| outside the convergence disk");
  // term ratio: (q^mu/p^nu)^{2n+1} z p^{n+1} / (1 - (pq)^{n+1}), with the
  // p^{n+1} factor coming from 1/(p^{-(n+1)} - q^{n+1}).
  const double p = d.p(), q = d.q();
  const double a = std::pow(q, mu) / std::pow(p, nu);
  double apow = a;           // a^{2n+1}
  const double a2 = a * a;
  double ppow = p;           // p^{n+1}
  double pqpow = p * q;      // (pq)^{n+1}
  Complex term = 1.0, sum = 1.0;
  TruncationGuard guard(ctl);
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= apow * z * ppow / (1.0 - pqpow);
    sum += term;
    apow *= a2;
    ppow *= p;
    pqpow *= p * q;
    if (guard.converged(std::abs(term), std::abs(sum))) return sum;
  }
  throw TruncationBudgetExceeded("cal_e_pq: no convergence within max_terms");
}

Complex e_pq(Complex z, const DeformationParams& d, const SeriesControl& ctl) {
  ctl.validate();
  if (d.classical())
    throw OutsideDomain(
        "e_pq: degenerate at p = q = 1; use e_pq_scaled for the classical limit");
  const double p = d.p(), q = d.q();
  const double sqrt_p = std::sqrt(p);
  if (!(std::abs(z) < 1.0 / sqrt_p))
    throw OutsideDomain("e_pq: requires |z| < p^{-1/2}");
  double pqpow = p * q;  // (pq)^{n+1}
  Complex term = 1.0, sum = 1.0;
  TruncationGuard guard(ctl);
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= sqrt_p * z / (1.0 - pqpow);
    sum += term;
    pqpow *= p * q;
    if (guard.converged(std::abs(term), std::abs(sum))) return sum;
  }
  throw TruncationBudgetExceeded("e_pq: no convergence within max_terms");
}

double e_pq_product_form(double z, const DeformationParams& d, const SeriesControl& ctl) {
  // e_{(p,q)}(z) = e_{pq}(p^{1/2} z) = 1/(p^{1/2} z; pq)_inf
  const double prod = q_pochhammer_inf(std::sqrt(d.p()) * z, d.p() * d.q(), ctl);
  if (prod == 0.0 || !std::isfinite(prod))
    throw OutsideDomain("e_pq_product_form: evaluation at a pole of the product form");
  return 1.0 / prod;
}

Complex frak_e_pq(Complex z, double mu, double nu, const DeformationParams& d,
                  const SeriesControl& ctl) {
  ctl.validate();
  const ConvergenceRadius radius = classify_radius(RadiusFamily::FrakE, mu, nu, d);
  if (radius.kind == ConvergenceRadius::Kind::Zero)
    throw DivergentSeries("frak_e_pq: zero radius of convergence (q^mu p^{-nu} > 1)");
  const double a = std::pow(d.q(), mu) / std::pow(d.p(), nu);
  double apow = a;
  const double a2 = a * a;
  Complex term = 1.0, sum = 1.0;
  TruncationGuard guard(ctl);
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= apow * z / static_cast<double>(n + 1);
    sum += term;
    apow *= a2;
    if (guard.converged(std::abs(term), std::abs(sum))) return sum;
  }
  throw TruncationBudgetExceeded("frak_e_pq: no convergence within max_terms");
}

// ---------------------------------------------------------------------------
// rescaled evaluations: denominators carried as basic factorials
// ---------------------------------------------------------------------------

namespace {

// sum A^{... } z^n / D! where the per-step denominator is supplied as [n+1];
// shared kernel for the scaled variants.
template <typename StepFactor, typename DenomStep>
Complex scaled_series(Complex z, StepFactor step_numerator, DenomStep denom_step,
                      const SeriesControl& ctl, const char* what) {
  Complex term = 1.0, sum = 1.0;
  TruncationGuard guard(ctl);
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= step_numerator(n) * z / denom_step(n + 1);
    sum += term;
    if (guard.converged(std::abs(term), std::abs(sum))) return sum;
  }
  throw TruncationBudgetExceeded(std::string(what) + ": no convergence within max_terms");
}

}  // namespace

Complex cal_e_pq_scaled(Complex z, double mu, double nu, const DeformationParams& d,
                        const SeriesControl& ctl) {
  ctl.validate();
  const double a = std::pow(d.q(), mu) / std::pow(d.p(), nu);
  double apow = a;
  const double a2 = a * a;
  return scaled_series(
      z,
      [&](int) {
        const double f = apow;
        apow *= a2;
        return f;
      },
      [&](int k) { return basic_number(k, d); }, ctl, "cal_e_pq_scaled");
}

Complex e_pq_scaled(Complex z, const DeformationParams& d, const SeriesControl& ctl) {
  ctl.validate();
  const double rs = 1.0 / std::sqrt(d.p());  // p^{-(2n+1)/2} accumulator
  double f = rs;
  const double f2 = rs * rs;
  return scaled_series(
      z,
      [&](int) {
        const double v = f;
        f *= f2;
        return v;
      },
      [&](int k) { return basic_number(k, d); }, ctl, "e_pq_scaled");
}

Complex exp_mu_q_scaled(Complex z, double mu, double q, const SeriesControl& ctl) {
  ctl.validate();
  if (!(q > 0.0 && q <= 1.0)) throw OutsideDomain("exp_mu_q_scaled: requires 0 < q <= 1");
  if (mu < 0.0) throw DivergentSeries("exp_mu_q_scaled: nowhere convergent for mu < 0");
  const DeformationParams dq(1.0, q);
  double qmu = std::pow(q, mu);
  const double qmu2 = qmu * qmu;
  return scaled_series(
      z,
      [&](int) {
        const double f = qmu;
        qmu *= qmu2;
        return f;
      },
      [&](int k) { return basic_number(k, dq); }, ctl, "exp_mu_q_scaled");
}

Complex jackson_eq_scaled(Complex z, double q, const SeriesControl& ctl) {
  ctl.validate();
  if (!(q > 0.0 && q <= 1.0)) throw OutsideDomain("jackson_eq_scaled: requires 0 < q <= 1");
  const DeformationParams dq(1.0, q);
  double qn = 1.0;
  return scaled_series(
      z,
      [&](int) {
        const double f = qn;
        qn *= q;
        return f;
      },
      [&](int k) { return basic_number(k, dq); }, ctl, "jackson_eq_scaled");
}

// ---------------------------------------------------------------------------
// radius classification
// ---------------------------------------------------------------------------

ConvergenceRadius ConvergenceRadius::finite(double r) {
  if (!(r > 0.0)) throw InvalidParameter("ConvergenceRadius: finite radius must be > 0");
  return {Kind::Finite, r};
}

ConvergenceRadius classify_radius(RadiusFamily family, double mu, double nu,
                                  const DeformationParams& d) {
  const double lp = std::log(d.p());
  const double lq = std::log(d.q());
  if (family == RadiusFamily::CalE) {
    const double s = 2.0 * mu * lq + (1.0 - 2.0 * nu) * lp;  // log(q^{2mu} p^{1-2nu})
    if (s < -kBoundaryTol) return ConvergenceRadius::infinite();
    if (s > kBoundaryTol) return ConvergenceRadius::zero();
    return ConvergenceRadius::finite(std::exp((nu - 1.0) * lp - mu * lq));
  }
  const double s = mu * lq - nu * lp;  // log(q^mu p^{-nu})
  return (s <= kBoundaryTol) ? ConvergenceRadius::infinite() : ConvergenceRadius::zero();
}

}  // namespace pqjc
