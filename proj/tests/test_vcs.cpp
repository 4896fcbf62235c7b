#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "pqjc/vcs.hpp"

using namespace pqjc;

namespace {

SeriesControl tight() {
  SeriesControl ctl;
  ctl.rel_tol = 1e-14;
  ctl.abs_tol = 1e-300;
  ctl.max_terms = 100000;
  return ctl;
}

JCModelParams model(double p, double q, double eps, double lam, double mu, double nu) {
  JCModelParams m;
  m.deformation = DeformationParams(p, q);
  m.epsilon = eps;
  m.lambda = lam;
  m.mu = mu;
  m.nu = nu;
  return m;
}

VCSParams params_deformed(std::complex<double> z, double theta = 0.6, double phi = 0.3,
                          double tp = 0.1, double tm = 0.2) {
  VCSParams p;
  p.z = z;
  p.theta = theta;
  p.phi = phi;
  p.tau_plus = tp;
  p.tau_minus = tm;
  p.scheme = LadderScheme::algebra(1.2, 0.5);
  p.model = model(1.2, 0.5, 0.05, 0.3, 0.5, 0.0);
  return p;
}

double sigma3_oracle(const VCSState& state, double t) {
  const VCSState evolved = evolve(state, t);
  const auto comps = product_components(evolved.as_truncated_state(), evolved.table());
  double acc = 0.0;
  for (int n = 0; n * 2 + 1 < static_cast<int>(comps.size()); ++n) {
    acc += std::norm(comps[TruncatedState::product_index(n, Sign::Plus)]);
    acc -= std::norm(comps[TruncatedState::product_index(n, Sign::Minus)]);
  }
  return acc;
}

}  // namespace

TEST_CASE("normalization") {
  const SeriesControl ctl = tight();

  // z = 0 has the single n = 0 term
  const JCModelParams m = model(1.2, 0.5, 0.05, 0.3, 0.5, 0.0);
  CHECK(normalization(0.0, Sign::Plus, LadderScheme::algebra(1.2, 0.5), m, 64, ctl).N ==
        doctest::Approx(1.0).epsilon(1e-14));

  // Fock moduli, mu = nu = 0: N = exp(-|z|^2/2)
  const JCModelParams cl = model(1.0, 1.0, 0.05, 0.3, 0.0, 0.0);
  const double n13 =
      normalization(1.3, Sign::Plus, LadderScheme::algebra(1.0, 1.0), cl, 64, ctl).N;
  CHECK(std::abs(n13 - std::exp(-1.3 * 1.3 / 2.0)) < 1e-10);

  // Algebra(p,q), mu = 1/2, nu = 0: N^{-2} = calE^{(1/2,0)}(|z|^2 q^{-1/2}(p^{-1}-q))
  const double z = 0.8;
  const double n2 =
      normalization(z, Sign::Minus, LadderScheme::algebra(1.2, 0.5), m, 64, ctl).N;
  const Complex arg{z * z / std::sqrt(0.5) * (1.0 / 1.2 - 0.5), 0.0};
  const Complex cal = cal_e_pq(arg, 0.5, 0.0, m.deformation, ctl);
  CHECK(std::abs(1.0 / (n2 * n2) - cal.real()) < 1e-10 * cal.real());
}

TEST_CASE("scheme radii") {
  const SeriesControl ctl = tight();
  const JCModelParams m = model(1.2, 0.5, 0.05, 0.3, 0.5, 0.0);
  const SpectrumTable table(m, 64);

  // Algebra(p,q) at mu = 1/2: p0 q^{2mu} = pq < 1 -> infinite
  CHECK(scheme_radius(LadderScheme::algebra(1.2, 0.5), m, table, Sign::Plus).kind ==
        ConvergenceRadius::Kind::Infinite);

  // mu = nu = 0 with Algebra(p,q): growth factor p0 = p > 1 -> zero radius
  const JCModelParams m00 = model(1.2, 0.5, 0.05, 0.3, 0.0, 0.0);
  CHECK(scheme_radius(LadderScheme::algebra(1.2, 0.5), m00, table, Sign::Plus).kind ==
        ConvergenceRadius::Kind::Zero);
  VCSParams bad;
  bad.z = {0.1, 0.0};
  bad.scheme = LadderScheme::algebra(1.2, 0.5);
  bad.model = m00;
  CHECK_THROWS_AS(build_vcs(bad, 32, ctl), DivergentSeries);

  // boundary case p0 p^{-2nu} q^{2mu} = 1: finite radius (1 - p0 q0)^{-1/2}.
  // q = 0.25, mu = 1/2 gives q^{2mu} = 1/4, so p0 = 4 sits on the boundary.
  const JCModelParams mb = model(1.2, 0.25, 0.05, 0.3, 0.5, 0.0);
  const auto rb = scheme_radius(LadderScheme::algebra(4.0, 0.2), mb,
                                SpectrumTable(mb, 16), Sign::Plus);
  CHECK(rb.kind == ConvergenceRadius::Kind::Finite);
  CHECK(rb.value == doctest::Approx(1.0 / std::sqrt(1.0 - 0.8)).epsilon(1e-12));

  // action identity at the Arik-Coon point: finite ratio-test estimate
  const JCModelParams ac = model(1.0, 0.5, 0.05, 0.3, 0.5, 0.0);
  const SpectrumTable t2(ac, 64);
  const auto rai = scheme_radius(LadderScheme::action_identity(), ac, t2, Sign::Minus);
  CHECK(rai.kind == ConvergenceRadius::Kind::Finite);
  CHECK(rai.value > 0.5);
  CHECK(rai.value < 2.0);
}

TEST_CASE("build_vcs basics") {
  const SeriesControl ctl = tight();

  // theta = 0 kills the minus branch
  VCSParams p = params_deformed({0.4, 0.0}, 0.0);
  const VCSState plus_only = build_vcs(p, 48, ctl);
  for (const auto& c : plus_only.coeff(Sign::Minus)) CHECK(std::abs(c) == 0.0);
  CHECK(std::abs(plus_only.norm_squared() - 1.0) < 1e-10);

  // z = 0, theta = pi/4, phi = 0, tau = 0: amplitudes (1/sqrt2, 1/sqrt2)
  VCSParams p0 = params_deformed({0.0, 0.0}, std::numbers::pi / 4.0, 0.0, 0.0, 0.0);
  const VCSState at0 = build_vcs(p0, 16, ctl);
  CHECK(std::abs(at0.coeff(Sign::Plus)[0] - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(at0.coeff(Sign::Minus)[0] - 1.0 / std::sqrt(2.0)) < 1e-14);
  for (int n = 1; n <= at0.n_max(); ++n) {
    CHECK(std::abs(at0.coeff(Sign::Plus)[n]) == 0.0);
    CHECK(std::abs(at0.coeff(Sign::Minus)[n]) == 0.0);
  }

  // unit norm and the coefficient recursion at a complex z
  VCSParams pc = params_deformed({0.5, 0.3});
  const VCSState state = build_vcs(pc, 64, ctl);
  CHECK(std::abs(state.norm_squared() - 1.0) < 1e-10);
  const double ratio = pc.model.charge_ratio();
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const auto& c = state.coeff(s);
    double apow = 1.0;
    for (int n = 0; n < state.n_max(); ++n) {
      const auto lhs = state.ladder().branch(s).k(n + 1) * c[n + 1];
      const auto rhs = pc.z * apow * c[n];
      CHECK(std::abs(lhs - rhs) < 1e-10);
      apow *= ratio;
    }
  }
}

TEST_CASE("classical limit reproduces the non-deformed coherent coefficients") {
  const SeriesControl ctl = tight();
  VCSParams p;
  p.z = {1.3, 0.0};
  p.theta = std::numbers::pi / 3.0;
  p.phi = 0.7;
  p.tau_plus = 0.1;
  p.tau_minus = 0.2;
  p.scheme = LadderScheme::algebra(1.0, 1.0);
  p.model = model(1.0, 1.0, 0.05, 0.3, 0.0, 0.0);
  const VCSState state = build_vcs(p, 64, ctl);

  const double N = std::exp(-1.3 * 1.3 / 2.0);
  double fact = 1.0;
  for (int n = 0; n <= 40; ++n) {
    if (n > 0) fact *= n;
    const double Q = std::sqrt(0.05 * 0.05 / 4.0 + 0.09 * (n + 1.0));
    const double Ep = 1.05 * (n + 1.0) + Q;
    const double Em = 1.05 * (n + 1.0) - Q;
    const auto expected_p = N * std::cos(p.theta) * std::pow(1.3, n) / std::sqrt(fact) *
                            std::polar(1.0, -p.tau_plus * Ep);
    const auto expected_m = N * std::sin(p.theta) * std::pow(1.3, n) / std::sqrt(fact) *
                            std::polar(1.0, p.phi - p.tau_minus * Em);
    CHECK(std::abs(state.coeff(Sign::Plus)[n] - expected_p) <=
          1e-10 * std::abs(expected_p) + 1e-30);
    CHECK(std::abs(state.coeff(Sign::Minus)[n] - expected_m) <=
          1e-10 * std::abs(expected_m) + 1e-30);
  }
}

TEST_CASE("annihilation residual") {
  const SeriesControl ctl = tight();

  // z = 0: both sides vanish
  const VCSState z0 = build_vcs(params_deformed({0.0, 0.0}), 32, ctl);
  CHECK(annihilation_residual(z0) == 0.0);

  // deformed grid point
  const VCSState st = build_vcs(params_deformed({0.7, 0.0}), 64, ctl);
  CHECK(annihilation_residual(st) < 1e-8);

  // mu = nu = 0 (plain eigenvalue relation); needs a scheme with nonzero
  // radius at mu = 0: Fock moduli work
  VCSParams p;
  p.z = {0.6, 0.2};
  p.theta = 0.8;
  p.scheme = LadderScheme::algebra(1.0, 1.0);
  p.model = model(1.2, 0.5, 0.05, 0.3, 0.0, 0.0);
  const VCSState plain = build_vcs(p, 64, ctl);
  CHECK(annihilation_residual(plain) < 1e-8);
}

TEST_CASE("temporal stability") {
  const SeriesControl ctl = tight();
  const VCSState state = build_vcs(params_deformed({0.6, 0.1}), 48, ctl);

  // t = 0 is the identity
  const VCSState same = evolve(state, 0.0);
  for (Sign s : {Sign::Plus, Sign::Minus})
    for (int n = 0; n <= state.n_max(); ++n)
      CHECK(std::abs(same.coeff(s)[n] - state.coeff(s)[n]) == 0.0);

  // evolve-by-rebuild equals evolve-by-phase
  const double t = 0.37;
  const VCSState evolved = evolve(state, t);
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    for (int n = 0; n <= state.n_max(); ++n) {
      const auto phase = std::polar(1.0, -state.table().model().omega0 * t *
                                             state.table().energy(s, n));
      CHECK(std::abs(evolved.coeff(s)[n] - phase * state.coeff(s)[n]) < 1e-12);
    }
  }

  // norm preserved over long times
  for (double tt : {1.0, 10.0, 100.0})
    CHECK(std::abs(evolve(state, tt).norm_squared() - 1.0) < 1e-10);
}

TEST_CASE("expectation values") {
  const SeriesControl ctl = tight();

  // z = 0: <H> = cos^2 E_0^+ + sin^2 E_0^-
  const double theta = 0.6;
  const VCSState z0 = build_vcs(params_deformed({0.0, 0.0}, theta), 16, ctl);
  const double expect0 = std::pow(std::cos(theta), 2) * z0.table().energy(Sign::Plus, 0) +
                         std::pow(std::sin(theta), 2) * z0.table().energy(Sign::Minus, 0);
  CHECK(std::abs(expectation_H(z0) - expect0) < 1e-12);

  const VCSState st = build_vcs(params_deformed({0.7, 0.2}), 64, ctl);

  // independent quadratic-form oracle through the full product-basis matrix
  {
    const auto comps = product_components(st.as_truncated_state(), st.table());
    const DenseMatrix H = build_hamiltonian_matrix(st.params().model, st.n_max() + 1);
    std::vector<double> re(comps.size()), im(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
      re[i] = comps[i].real();
      im[i] = comps[i].imag();
    }
    const auto hre = H.apply(re);
    const auto him = H.apply(im);
    double quad = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i)
      quad += re[i] * hre[i] + im[i] * him[i];
    CHECK(std::abs(expectation_H(st) - quad) < 1e-10);
  }

  // diagonal operator: time invariant
  CHECK(std::abs(expectation_H(evolve(st, 0.9)) - expectation_H(st)) < 1e-10);

  // number expectation: z = 0 gives 0; matches ||A^- state||^2
  CHECK(expectation_number(z0) == 0.0);
  const double viaop =
      std::pow(apply_lowering(st.as_truncated_state(), st.ladder()).norm(), 2);
  CHECK(std::abs(expectation_number(st) - viaop) < 1e-9);

  // ordinary coherent state: <A^+A^-> = |z|^2
  VCSParams p;
  p.z = {0.9, 0.0};
  p.theta = 0.4;
  p.scheme = LadderScheme::algebra(1.0, 1.0);
  p.model = model(1.0, 1.0, 0.05, 0.3, 0.0, 0.0);
  const VCSState coherent = build_vcs(p, 64, ctl);
  CHECK(std::abs(expectation_number(coherent) - 0.81) < 1e-10);
}

TEST_CASE("atomic inversion") {
  const SeriesControl ctl = tight();

  // lambda = 0: time independent
  VCSParams p0 = params_deformed({0.5, 0.0});
  p0.model.lambda = 0.0;
  const VCSState dec = build_vcs(p0, 48, ctl);
  const double v0 = atomic_inversion(dec, 0.0);
  for (double t : {0.5, 3.0, 40.0}) CHECK(std::abs(atomic_inversion(dec, t) - v0) < 1e-13);

  // theta = 0, eps = 0, classical: vanishes for all t
  VCSParams pr;
  pr.z = {0.8, 0.0};
  pr.theta = 0.0;
  pr.scheme = LadderScheme::algebra(1.0, 1.0);
  pr.model = model(1.0, 1.0, 0.0, 0.3, 0.0, 0.0);
  const VCSState res = build_vcs(pr, 64, ctl);
  for (double t : {0.0, 1.3, 7.7}) CHECK(std::abs(atomic_inversion(res, t)) < 1e-12);

  // generic deformed point: bounded and equal to the product-components oracle
  const VCSState st = build_vcs(params_deformed({0.7, 0.1}), 64, ctl);
  for (double t : {0.0, 0.4, 2.6, 9.1}) {
    const double s3 = atomic_inversion(st, t);
    CHECK(std::abs(s3) <= 1.0 + 1e-9);
    CHECK(std::abs(s3 - sigma3_oracle(st, t)) < 1e-9);
  }
}

TEST_CASE("action variables") {
  const SeriesControl ctl = tight();

  // z = 0 single-term series
  const double theta = 0.6;
  const VCSState z0 = build_vcs(params_deformed({0.0, 0.0}, theta), 16, ctl);
  const ActionVariables j0 = action_variables(z0);
  CHECK(std::abs(j0.J_plus -
                 std::pow(std::cos(theta), 2) * z0.table().energy(Sign::Plus, 0)) < 1e-12);
  CHECK(std::abs(j0.J_minus -
                 std::pow(std::sin(theta), 2) * z0.table().energy(Sign::Minus, 0)) < 1e-12);

  // J_+ + J_- = <H> on a deformed grid point
  const VCSState st = build_vcs(params_deformed({0.8, 0.3}), 64, ctl);
  const ActionVariables jv = action_variables(st);
  CHECK(std::abs(jv.J_plus + jv.J_minus - expectation_H(st)) < 1e-10);

  // the action identity holds for the ActionIdentity scheme
  VCSParams ai;
  ai.z = {0.5, 0.0};
  ai.theta = std::numbers::pi / 3.0;
  ai.phi = 0.2;
  ai.scheme = LadderScheme::action_identity();
  ai.model = model(1.0, 0.5, 0.05, 0.3, 0.5, 0.0);
  const VCSState ast = build_vcs(ai, 64, ctl);
  const ActionVariables ja = action_variables(ast);
  const double x = std::norm(ai.z);
  CHECK(std::abs(ja.J_plus - std::pow(std::cos(ai.theta), 2) *
                                 (x + ast.table().energy(Sign::Plus, 0))) < 1e-8);
  CHECK(std::abs(ja.J_minus - std::pow(std::sin(ai.theta), 2) *
                                  (x + ast.table().energy(Sign::Minus, 0))) < 1e-8);

  // ... and fails measurably for the algebra scheme at a deformed point
  const ActionVariables jalg = action_variables(st);
  const double xx = std::norm(st.params().z);
  const double res =
      std::abs(jalg.J_plus - std::pow(std::cos(st.params().theta), 2) *
                                 (xx + st.table().energy(Sign::Plus, 0)));
  CHECK(res > 1e-3);
}

TEST_CASE("domain rejection at a finite radius boundary") {
  const SeriesControl ctl = tight();
  // boundary family with finite radius (1 - p0 q0)^{-1/2} = sqrt(5)
  VCSParams p;
  p.scheme = LadderScheme::algebra(4.0, 0.2);
  p.model = model(1.2, 0.25, 0.05, 0.3, 0.5, 0.0);
  p.theta = 0.7;
  p.z = {1.0, 0.0};
  CHECK_NOTHROW(build_vcs(p, 64, ctl));
  const auto r = scheme_radius(p.scheme, p.model, SpectrumTable(p.model, 16), Sign::Plus);
  p.z = {r.value, 0.0};  // exactly on the boundary: rejected
  CHECK_THROWS_AS(build_vcs(p, 64, ctl), OutsideDomain);
  p.z = {3.0, 0.0};
  CHECK_THROWS_AS(build_vcs(p, 64, ctl), OutsideDomain);
}

TEST_CASE("params validation") {
  VCSParams p = params_deformed({0.1, 0.0});
  p.theta = -0.1;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = params_deformed({0.1, 0.0});
  p.phi = 7.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
}
