#include "pqjc/vcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pqjc {

namespace {

constexpr double kBoundaryTol = 1e-12;

struct SeriesSum {
  double value = 0.0;
  double last_term = 0.0;
  bool converged = false;
};

// sum_{n<=n_max} (q^mu/p^nu)^{n(n-1)} x^n / (K0([n])!)^2 with x = |z|^2;
// shared by normalization and the expectation series (extra per-term weights
// are applied by the caller through `weight`).
template <typename WeightFn>
SeriesSum weighted_norm_series(double x, const LadderCoefficients& coeffs, double ratio,
                               int n_max, const SeriesControl& ctl, WeightFn weight) {
  SeriesSum out;
  double term = 1.0;           // (q^mu/p^nu)^{n(n-1)} x^n / (K0!)^2 at n
  double apow = 1.0;           // ratio^{2n}
  const double a2 = ratio * ratio;
  double sum = weight(0) * term;
  TruncationGuard guard(ctl);
  out.last_term = term;
  for (int n = 0; n < n_max; ++n) {
    const double k0 = coeffs.k0(n + 1);
    term *= apow * x / (k0 * k0);
    apow *= a2;
    sum += weight(n + 1) * term;
    out.last_term = term;
    if (guard.converged(std::abs(term), std::abs(sum))) {
      out.converged = true;
      break;
    }
  }
  out.value = sum;
  return out;
}

SeriesSum norm_series(double x, const LadderCoefficients& coeffs, double ratio, int n_max,
                      const SeriesControl& ctl) {
  return weighted_norm_series(x, coeffs, ratio, n_max, ctl, [](int) { return 1.0; });
}

}  // namespace

void VCSParams::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw InvalidParameter("VCSParams: theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
    throw InvalidParameter("VCSParams: phi must lie in [0, 2*pi)");
  model.validate();
  scheme.validate();
}

double RadiusPair::min_value() const {
  double r = std::numeric_limits<double>::infinity();
  for (const ConvergenceRadius* c : {&plus, &minus}) {
    if (c->kind == ConvergenceRadius::Kind::Zero) return 0.0;
    if (c->kind == ConvergenceRadius::Kind::Finite) r = std::min(r, c->value);
  }
  return r;
}

ConvergenceRadius scheme_radius(const LadderScheme& scheme, const JCModelParams& model,
                                const SpectrumTable& table, Sign branch) {
  if (scheme.kind == LadderScheme::Kind::Algebra) {
    const double lp = std::log(model.deformation.p());
    const double lq = std::log(model.deformation.q());
    if (scheme.p0 == 1.0 && scheme.q0 == 1.0) {
      // Fock moduli sqrt(n): entire iff q^mu p^-nu <= 1 (boundary included,
      // the moduli grow without bound).
      const double s = model.mu * lq - model.nu * lp;
      return s <= kBoundaryTol ? ConvergenceRadius::infinite() : ConvergenceRadius::zero();
    }
    // growth factor p0 p^{-2nu} q^{2mu}
    const double s = std::log(scheme.p0) - 2.0 * model.nu * lp + 2.0 * model.mu * lq;
    if (s < -kBoundaryTol) return ConvergenceRadius::infinite();
    if (s > kBoundaryTol) return ConvergenceRadius::zero();
    return ConvergenceRadius::finite(1.0 / std::sqrt(1.0 - scheme.p0 * scheme.q0));
  }

  // Ratio-test estimate over the last ten moduli, safety factor 0.9.
  // Turn-around sequences make a naive single-point ratio unstable.
  const LadderPair pair = bind_scheme(scheme, table);
  const LadderCoefficients& c = pair.branch(branch);
  const int n_max = pair.n_max;
  const double ratio = model.charge_ratio();
  const int lo = std::max(1, n_max - 9);
  double est = std::numeric_limits<double>::infinity();
  for (int n = lo; n <= n_max; ++n)
    est = std::min(est, std::pow(ratio, -(n - 1)) * c.k0(n));
  if (!(est > 0.0) || !std::isfinite(est))
    return ConvergenceRadius::zero();
  return ConvergenceRadius::finite(0.9 * est);
}

NormalizationResult normalization(double abs_z, Sign branch, const LadderScheme& scheme,
                                  const JCModelParams& model, int n_max,
                                  const SeriesControl& ctl) {
  ctl.validate();
  if (abs_z < 0.0) throw InvalidParameter("normalization: |z| must be >= 0");
  const SpectrumTable table(model, n_max);
  const ConvergenceRadius radius = scheme_radius(scheme, model, table, branch);
  if (radius.kind == ConvergenceRadius::Kind::Zero)
    throw DivergentSeries("normalization: zero radius of convergence");
  if (!radius.admits(abs_z))
    throw OutsideDomain("normalization: |z| outside the convergence disk");
  const LadderPair pair = bind_scheme(scheme, table);
  const SeriesSum s =
      norm_series(abs_z * abs_z, pair.branch(branch), model.charge_ratio(), n_max, ctl);
  if (!s.converged && !(std::abs(s.last_term) < ctl.abs_tol))
    throw TruncationBudgetExceeded("normalization: series tail above abs_tol at n_max");
  NormalizationResult out;
  out.N = 1.0 / std::sqrt(s.value);
  out.radius = radius;
  return out;
}

double VCSState::norm_squared() const {
  double acc = 0.0;
  for (const auto& c : coeff_plus_) acc += std::norm(c);
  for (const auto& c : coeff_minus_) acc += std::norm(c);
  return acc;
}

TruncatedState VCSState::as_truncated_state() const {
  TruncatedState s = TruncatedState::eigen(n_max());
  for (int n = 0; n <= n_max(); ++n) {
    s.coeffs[TruncatedState::eigen_index(n, Sign::Plus)] = coeff_plus_[n];
    s.coeffs[TruncatedState::eigen_index(n, Sign::Minus)] = coeff_minus_[n];
  }
  return s;
}

VCSState build_vcs(const VCSParams& params, int n_max, const SeriesControl& ctl) {
  params.validate();
  ctl.validate();
  if (n_max < 1) throw InvalidParameter("build_vcs: n_max must be >= 1");

  VCSState state;
  state.params_ = params;
  state.ctl_ = ctl;
  state.table_ = std::make_shared<SpectrumTable>(params.model, n_max);
  const SpectrumTable& table = *state.table_;

  // the state's tau parameters fix the temporal-stability phases
  const LadderScheme bound_scheme = params.scheme.with_tau(params.tau_plus, params.tau_minus);
  state.ladder_ = bind_scheme(bound_scheme, table);

  state.radius_.plus = scheme_radius(bound_scheme, params.model, table, Sign::Plus);
  state.radius_.minus = scheme_radius(bound_scheme, params.model, table, Sign::Minus);
  const double abs_z = std::abs(params.z);
  if (state.radius_.plus.kind == ConvergenceRadius::Kind::Zero ||
      state.radius_.minus.kind == ConvergenceRadius::Kind::Zero)
    throw DivergentSeries("build_vcs: zero radius of convergence for the bound scheme");
  if (!state.radius_.admits(abs_z))
    throw OutsideDomain("build_vcs: |z| outside the convergence disk");

  const double ratio = params.model.charge_ratio();
  const double x = abs_z * abs_z;
  const SeriesSum sp = norm_series(x, state.ladder_.plus, ratio, n_max, ctl);
  const SeriesSum sm = norm_series(x, state.ladder_.minus, ratio, n_max, ctl);
  state.truncation_ = {sp.converged, sm.converged, sp.last_term, sm.last_term};
  if ((!sp.converged && !(std::abs(sp.last_term) < ctl.abs_tol)) ||
      (!sm.converged && !(std::abs(sm.last_term) < ctl.abs_tol)))
    throw TruncationBudgetExceeded("build_vcs: normalization tail above abs_tol at n_max");
  state.norm_plus_ = 1.0 / std::sqrt(sp.value);
  state.norm_minus_ = 1.0 / std::sqrt(sm.value);

  const double omega0 = params.model.omega0;
  const std::complex<double> pref_plus = state.norm_plus_ * std::cos(params.theta);
  const std::complex<double> pref_minus =
      state.norm_minus_ * std::sin(params.theta) * std::polar(1.0, params.phi);

  state.coeff_plus_.assign(static_cast<std::size_t>(n_max) + 1, {0.0, 0.0});
  state.coeff_minus_.assign(static_cast<std::size_t>(n_max) + 1, {0.0, 0.0});
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    auto& out = s == Sign::Plus ? state.coeff_plus_ : state.coeff_minus_;
    const auto& pref = s == Sign::Plus ? pref_plus : pref_minus;
    const double tau = s == Sign::Plus ? params.tau_plus : params.tau_minus;
    const LadderCoefficients& lc = state.ladder_.branch(s);
    // g_n = (q^mu/p^nu)^{n(n-1)/2} z^n / K0([n])!; g_{n+1} = g_n ratio^n z / K0([n+1])
    std::complex<double> g = 1.0;
    double apow = 1.0;  // ratio^n
    for (int n = 0; n <= n_max; ++n) {
      out[static_cast<std::size_t>(n)] =
          pref * g * std::polar(1.0, -omega0 * tau * table.energy(s, n));
      if (n < n_max) {
        g *= apow * params.z / lc.k0(n + 1);
        apow *= ratio;
      }
    }
  }
  return state;
}

double annihilation_residual(const VCSState& state) {
  const int n_max = state.n_max();
  const double ratio = state.params().model.charge_ratio();
  const std::complex<double> z = state.params().z;
  double acc = 0.0;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const auto& c = state.coeff(s);
    const LadderCoefficients& lc = state.ladder().branch(s);
    double apow = 1.0;  // ratio^n
    for (int n = 0; n < n_max; ++n) {
      // component n of A^-|state> minus z Q_V |state>
      const std::complex<double> r = lc.k(n + 1) * c[n + 1] - z * apow * c[n];
      acc += std::norm(r);
      apow *= ratio;
    }
  }
  return std::sqrt(acc);
}

VCSState evolve(const VCSState& state, double t) {
  VCSParams p = state.params();
  p.tau_plus += t;
  p.tau_minus += t;
  return build_vcs(p, state.n_max(), state.control());
}

double expectation_H(const VCSState& state) {
  double acc = 0.0;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const auto& c = state.coeff(s);
    for (int n = 0; n <= state.n_max(); ++n)
      acc += std::norm(c[n]) * state.table().energy(s, n);
  }
  return acc;
}

double expectation_number(const VCSState& state) {
  const double ratio = state.params().model.charge_ratio();
  const double a2 = ratio * ratio;
  double acc = 0.0;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const auto& c = state.coeff(s);
    double apow = 1.0;  // ratio^{2n}
    for (int n = 0; n <= state.n_max(); ++n) {
      acc += apow * std::norm(c[n]);
      apow *= a2;
    }
  }
  return std::norm(state.params().z) * acc;
}

double atomic_inversion(const VCSState& state, double t) {
  const VCSParams& p = state.params();
  const SpectrumTable& table = state.table();
  const double omega0 = p.model.omega0;
  const double lam = p.model.lambda;
  const DeformationParams& d = p.model.deformation;
  const double ratio = p.model.charge_ratio();
  const double x = std::norm(p.z);

  const double np = state.norm_factor(Sign::Plus);
  const double nm = state.norm_factor(Sign::Minus);
  const double wp = np * np * std::pow(std::cos(p.theta), 2);
  const double wm = nm * nm * std::pow(std::sin(p.theta), 2);
  const double cross_pref = lam * np * nm * std::sin(2.0 * p.theta);

  // shared radial weight w_n = (q^mu/p^nu)^{n(n-1)} x^n
  double wp_term = 1.0, wm_term = 1.0, wx_term = 1.0;  // w_n/(K!)^2 resp. w_n/(K+! K-!)
  double apow = 1.0;                                   // ratio^{2n}
  const double a2 = ratio * ratio;

  double first = 0.0, second = 0.0;
  for (int n = 0; n <= state.n_max(); ++n) {
    const LevelData& lv = table.level(n);
    double ratio_EQ;
    if (lam == 0.0) {
      // Q = |E|/2 exactly; at an exact crossing fall back to sign(0) = +1
      ratio_EQ = 2.0 * sign_plus_convention(lv.script_E);
    } else {
      ratio_EQ = lv.script_E / lv.Q;
    }
    first += 0.5 * ratio_EQ * (-wp * wp_term + wm * wm_term);
    if (lam != 0.0) {
      const double psi = omega0 * lv.zeeman * t +
                         omega0 * (p.tau_plus * lv.E_plus - p.tau_minus * lv.E_minus) + p.phi;
      // cross matrix element <E_n^+|sigma_3|E_n^-> = sin 2 theta([n])
      //                      = lambda sqrt([n+1]) / Q([n+1])
      second += wx_term * std::sqrt(basic_number(n + 1, d)) / lv.Q * std::cos(psi);
    }
    if (n < state.n_max()) {
      const double kp = state.ladder().plus.k0(n + 1);
      const double km = state.ladder().minus.k0(n + 1);
      wp_term *= apow * x / (kp * kp);
      wm_term *= apow * x / (km * km);
      wx_term *= apow * x / (kp * km);
      apow *= a2;
    }
  }
  return first + cross_pref * second;
}

ActionVariables action_variables(const VCSState& state) {
  const VCSParams& p = state.params();
  const double ratio = p.model.charge_ratio();
  const double x = std::norm(p.z);
  const SeriesControl& ctl = state.control();

  ActionVariables out;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const double nf = state.norm_factor(s);
    const double w = s == Sign::Plus ? nf * nf * std::pow(std::cos(p.theta), 2)
                                     : nf * nf * std::pow(std::sin(p.theta), 2);
    const SeriesSum sum = weighted_norm_series(
        x, state.ladder().branch(s), ratio, state.n_max(), ctl,
        [&](int n) { return state.table().energy(s, n); });
    (s == Sign::Plus ? out.J_plus : out.J_minus) = w * sum.value;
  }
  return out;
}

}  // namespace pqjc
