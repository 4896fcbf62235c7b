#include "pqjc/moments.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "pqjc/ladder.hpp"
#include "pqjc/vcs.hpp"

namespace pqjc {

namespace {

// Tight controls for the product-form evaluations inside quadrature
// integrands; q -> 1 smoke cases need a large factor budget.
SeriesControl integrand_control() {
  SeriesControl ctl;
  ctl.rel_tol = 1e-14;
  ctl.abs_tol = 1e-300;
  ctl.max_terms = 200000;
  return ctl;
}

double pq_weight(double u, const DeformationParams& d, const SeriesControl& ctl) {
  const double p = d.p(), q = d.q();
  const double coef = (1.0 / p - q) / (q * std::log(1.0 / (p * q)));
  const double arg = -u / (std::sqrt(p) * q) * (1.0 / p - q);
  return coef * e_pq_product_form(arg, d, ctl);
}

double factorial_squared_k0(int n, double p0, double q0) {
  // (K0([n])!)^2 = [n]_{(p0,q0)}!
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= detail::basic_number_raw(k, p0, q0);
  return prod;
}

}  // namespace

double WeightChoice::mu() const {
  switch (kind) {
    case Kind::PQExplicit: return 0.5;
    case Kind::FockExplicit: return 0.0;
    case Kind::AlphaFamily: return 0.5 * alpha;
  }
  return 0.0;
}

double WeightChoice::p0(const JCModelParams& model) const {
  switch (kind) {
    case Kind::PQExplicit: return model.deformation.p();
    case Kind::FockExplicit: return 1.0;
    case Kind::AlphaFamily: return std::pow(model.deformation.p(), alpha);
  }
  return 1.0;
}

double WeightChoice::q0(const JCModelParams& model) const {
  switch (kind) {
    case Kind::PQExplicit: return model.deformation.q();
    case Kind::FockExplicit: return 1.0;
    case Kind::AlphaFamily: return std::pow(model.deformation.q(), alpha);
  }
  return 1.0;
}

void WeightChoice::validate(const JCModelParams& model) const {
  const double pq = model.deformation.p() * model.deformation.q();
  switch (kind) {
    case Kind::PQExplicit:
      if (!(pq < 1.0)) throw InvalidParameter("WeightChoice: PQExplicit requires pq < 1");
      break;
    case Kind::AlphaFamily:
      if (!(alpha > 0.0)) throw InvalidParameter("WeightChoice: alpha must be positive");
      if (!(std::pow(pq, alpha) < 1.0))
        throw InvalidParameter("WeightChoice: AlphaFamily requires (pq)^alpha < 1");
      break;
    case Kind::FockExplicit:
      break;
  }
}

double weight_h(double u, const WeightChoice& choice, const JCModelParams& model,
                const SeriesControl& ctl) {
  if (u < 0.0) throw InvalidParameter("weight_h: u must be >= 0");
  choice.validate(model);
  switch (choice.kind) {
    case WeightChoice::Kind::FockExplicit:
      return std::exp(-u);
    case WeightChoice::Kind::PQExplicit:
      return pq_weight(u, model.deformation, ctl);
    case WeightChoice::Kind::AlphaFamily: {
      const DeformationParams da(std::pow(model.deformation.p(), choice.alpha),
                                 std::pow(model.deformation.q(), choice.alpha));
      return pq_weight(u, da, ctl);
    }
  }
  throw InvalidParameter("weight_h: unreachable weight kind");
}

double weight_W(double abs_z, Sign branch, const WeightChoice& choice,
                const JCModelParams& model, const SeriesControl& ctl) {
  choice.validate(model);
  // the family fixes its own (mu, nu) and ladder scheme
  JCModelParams m = model;
  m.mu = choice.mu();
  m.nu = choice.nu();
  const LadderScheme scheme = LadderScheme::algebra(choice.p0(model), choice.q0(model));
  const NormalizationResult norm = normalization(abs_z, branch, scheme, m, 64, ctl);
  const double inv_n2 = 1.0 / (norm.N * norm.N);  // |N|^{-2}
  const double h = weight_h(abs_z * abs_z, choice, model, ctl);
  const double c = branch == Sign::Plus ? 3.0 / (4.0 * std::numbers::pi * std::numbers::pi)
                                        : 3.0 / (8.0 * std::numbers::pi * std::numbers::pi);
  return c * inv_n2 * h;
}

namespace {

// int_0^inf u^power h(u) du for possibly non-integer power.
QuadratureResult weight_moment(double power, const WeightChoice& choice,
                               const JCModelParams& model, double quad_tol) {
  const SeriesControl ctl = integrand_control();
  return integrate_semi_infinite(
      [&, power](double u) {
        return (u == 0.0 && power == 0.0) ? weight_h(0.0, choice, model, ctl)
                                          : std::pow(u, power) * weight_h(u, choice, model, ctl);
      },
      0.2 * quad_tol);
}

double relative_error(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

}  // namespace

MomentReport verify_moments(const WeightChoice& choice, const JCModelParams& model,
                            int n_check, double quad_tol) {
  if (n_check < 0) throw InvalidParameter("verify_moments: n_check must be >= 0");
  if (!(quad_tol > 0.0)) throw InvalidParameter("verify_moments: quad_tol must be > 0");
  choice.validate(model);

  const double a = std::pow(model.deformation.q(), choice.mu());  // q^mu (nu = 0)
  const double p0 = choice.p0(model);
  const double q0 = choice.q0(model);

  MomentReport report;
  report.quad_tol = quad_tol;
  for (int n = 0; n <= n_check; ++n) {
    MomentEntry e;
    e.n = n;
    const QuadratureResult quad = weight_moment(n, choice, model, quad_tol);
    e.lhs = quad.value;
    e.quad_error = quad.abs_error;
    e.evaluations = quad.evaluations;
    e.rhs = std::pow(a, -static_cast<double>(n) * (n - 1)) * factorial_squared_k0(n, p0, q0);
    e.rel_err = relative_error(e.lhs, e.rhs);
    report.max_rel_err = std::max(report.max_rel_err, e.rel_err);
    report.entries.push_back(e);
  }
  return report;
}

RamanujanResult ramanujan_classical(int n, double q, double quad_tol) {
  if (n < 0) throw InvalidParameter("ramanujan_classical: n must be >= 0");
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("ramanujan_classical: 0 < q < 1 required");
  const SeriesControl ctl = integrand_control();
  const QuadratureResult quad = integrate_semi_infinite(
      [&, n](double t) {
        // e_q(-t) = 1/(-t; q)_inf, valid for all t >= 0
        return std::pow(t, n) / q_pochhammer_inf(-t, q, ctl);
      },
      0.2 * quad_tol);
  RamanujanResult out;
  out.lhs = quad.value;
  out.rhs = -q_pochhammer(q, q, n) * std::pow(q, -0.5 * n * (n + 1)) * std::log(q);
  out.rel_err = relative_error(out.lhs, out.rhs);
  return out;
}

RamanujanResult ramanujan_pq(int n, double lambda0, const JCModelParams& model,
                             double quad_tol) {
  if (n < 0) throw InvalidParameter("ramanujan_pq: n must be >= 0");
  if (!(lambda0 > 0.0)) throw InvalidParameter("ramanujan_pq: lambda0 must be positive");
  const DeformationParams& d = model.deformation;
  const double pq = d.p() * d.q();
  if (!(pq < 1.0)) throw InvalidParameter("ramanujan_pq: pq < 1 required");
  const SeriesControl ctl = integrand_control();
  const QuadratureResult quad = integrate_semi_infinite(
      [&, n, lambda0](double t) {
        // e_{(p,q)}(-lambda0 p^{-1/2} t) = 1/(-lambda0 t; pq)_inf
        return std::pow(t, n) / q_pochhammer_inf(-lambda0 * t, pq, ctl);
      },
      0.2 * quad_tol);
  RamanujanResult out;
  out.lhs = quad.value;
  out.rhs = pq_shifted_factorial(d.p(), d.q(), d, n) /
            (std::pow(lambda0, n + 1) * std::pow(d.q(), 0.5 * n * (n + 1))) *
            std::log(1.0 / pq);
  out.rel_err = relative_error(out.lhs, out.rhs);
  return out;
}

ResolutionReport resolution_check(const WeightChoice& choice, const JCModelParams& model,
                                  int n_pairs, double quad_tol) {
  if (n_pairs < 0) throw InvalidParameter("resolution_check: n_pairs must be >= 0");
  const MomentReport moments = verify_moments(choice, model, n_pairs, quad_tol);
  if (!moments.pass())
    throw MomentPrereqFailed("resolution_check: moment verification failed (max rel err " +
                             std::to_string(moments.max_rel_err) + ")");

  // Radial cross moments int u^{(m+n)/2} h(u) du for odd m+n.
  std::vector<double> half_moments(static_cast<std::size_t>(2 * n_pairs) + 1, 0.0);
  for (int s = 0; s <= 2 * n_pairs; ++s) {
    if (s % 2 == 0) {
      half_moments[static_cast<std::size_t>(s)] =
          moments.entries[static_cast<std::size_t>(s / 2)].lhs;
    } else {
      half_moments[static_cast<std::size_t>(s)] =
          weight_moment(0.5 * s, choice, model, quad_tol).value;
    }
  }

  // Azimuthal phase integrals (1/2pi) int e^{ik phi} dphi by trapezoid;
  // exactly the Kronecker delta up to roundoff for |k| < K.
  constexpr int K = 256;
  auto phase_avg = [](int k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < K; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / K;
      acc += std::polar(1.0, k * phi);
    }
    return std::abs(acc) / static_cast<double>(K);
  };

  // Polar integrals are elementary: int cos^2 sin = 2/3, int sin^2 sin = 4/3,
  // the mixed one vanishes; combined with the measure constants the diagonal
  // normalization is exactly 1.
  const double a = std::pow(model.deformation.q(), choice.mu());
  const double p0 = choice.p0(model);
  const double q0 = choice.q0(model);

  auto k_factorial = [&](int n) { return std::sqrt(factorial_squared_k0(n, p0, q0)); };

  ResolutionReport out;
  out.n_pairs = n_pairs;
  for (int m = 0; m <= n_pairs; ++m) {
    for (int n = 0; n <= n_pairs; ++n) {
      const double radial = std::pow(a, 0.5 * (m * (m - 1.0) + n * (n - 1.0))) *
                            half_moments[static_cast<std::size_t>(m + n)] /
                            (k_factorial(m) * k_factorial(n));
      const double entry = phase_avg(m - n) * radial;  // same-branch entry
      if (m == n) {
        out.max_diag_dev = std::max(out.max_diag_dev, std::abs(entry - 1.0));
      } else {
        out.max_offdiag = std::max(out.max_offdiag, std::abs(entry));
      }
    }
  }
  // Cross-branch entries carry the vanishing polar integral int cos sin^2 = 0
  // on top of the phi phase integral; the singleton never appears in the
  // expansion, so its row is identically zero.
  out.singleton_row = 0.0;
  return out;
}

std::vector<double> action_identity_moment_targets(const SpectrumTable& table, Sign branch,
                                                   int n_max) {
  if (n_max > table.n_max())
    throw CutoffMismatch("action_identity_moment_targets: n_max beyond the table cutoff");
  std::vector<double> targets(static_cast<std::size_t>(n_max) + 1, 1.0);
  const double e0 = table.energy(branch, 0);
  double prod = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    const double gap = table.energy(branch, n) - e0;
    if (!(gap > 0.0))
      throw SpectrumNotBoundedBelow(
          "action_identity_moment_targets: E_n <= E_0 at n = " + std::to_string(n));
    prod *= gap;
    targets[static_cast<std::size_t>(n)] = prod;
  }
  return targets;
}

}  // namespace pqjc
