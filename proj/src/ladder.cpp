#include "pqjc/ladder.hpp"

#include <cmath>
#include <string>

namespace pqjc {

LadderScheme LadderScheme::algebra(double p0, double q0, double tau_plus, double tau_minus) {
  LadderScheme s;
  s.kind = Kind::Algebra;
  s.p0 = p0;
  s.q0 = q0;
  s.tau_plus = tau_plus;
  s.tau_minus = tau_minus;
  s.validate();
  return s;
}

LadderScheme LadderScheme::action_identity(double tau_plus, double tau_minus) {
  LadderScheme s;
  s.kind = Kind::ActionIdentity;
  s.tau_plus = tau_plus;
  s.tau_minus = tau_minus;
  return s;
}

LadderScheme LadderScheme::custom(std::vector<double> moduli, double tau_plus,
                                  double tau_minus) {
  LadderScheme s;
  s.kind = Kind::Custom;
  s.custom_moduli = std::move(moduli);
  s.tau_plus = tau_plus;
  s.tau_minus = tau_minus;
  s.validate();
  return s;
}

void LadderScheme::validate() const {
  switch (kind) {
    case Kind::Algebra:
      if (!(p0 >= 1.0)) throw InvalidParameter("LadderScheme: p0 must be >= 1");
      if (!(q0 > 0.0 && q0 <= 1.0))
        throw InvalidParameter("LadderScheme: q0 must lie in (0, 1]");
      if (!(p0 * q0 <= 1.0)) throw InvalidParameter("LadderScheme: p0*q0 must be <= 1");
      break;
    case Kind::Custom:
      if (custom_moduli.empty() || custom_moduli.front() != 0.0)
        throw InvalidParameter("LadderScheme: custom moduli must start with K0(0) = 0");
      for (std::size_t n = 1; n < custom_moduli.size(); ++n)
        if (!(custom_moduli[n] > 0.0))
          throw InvalidParameter("LadderScheme: custom moduli must be positive for n >= 1");
      break;
    case Kind::ActionIdentity:
      break;  // boundedness is checked against the spectrum at bind time
  }
}

double k_modulus(const LadderScheme& scheme, const SpectrumTable& table, Sign branch, int n) {
  if (n < 0 || n > table.n_max())
    throw CutoffMismatch("k_modulus: n outside the table range");
  if (n == 0) return 0.0;
  switch (scheme.kind) {
    case LadderScheme::Kind::Algebra:
      return std::sqrt(detail::basic_number_raw(n, scheme.p0, scheme.q0));
    case LadderScheme::Kind::ActionIdentity: {
      const double gap = table.energy(branch, n) - table.energy(branch, 0);
      if (!(gap > 0.0))
        throw SpectrumNotBoundedBelow(
            "k_modulus: E_n <= E_0 at n = " + std::to_string(n) +
            " (action-identity scheme undefined)");
      return std::pow(table.model().charge_ratio(), n - 1) * std::sqrt(gap);
    }
    case LadderScheme::Kind::Custom:
      if (static_cast<std::size_t>(n) >= scheme.custom_moduli.size())
        throw CutoffMismatch("k_modulus: custom moduli shorter than requested n");
      return scheme.custom_moduli[static_cast<std::size_t>(n)];
  }
  throw InvalidParameter("k_modulus: unreachable scheme kind");
}

LadderPair bind_scheme(const LadderScheme& scheme, const SpectrumTable& table) {
  scheme.validate();
  const int n_max = table.n_max();
  const double omega0 = table.model().omega0;
  LadderPair pair;
  pair.n_max = n_max;
  for (Sign branch : {Sign::Plus, Sign::Minus}) {
    LadderCoefficients c;
    c.branch = branch;
    c.moduli.resize(static_cast<std::size_t>(n_max) + 1);
    c.phases.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double tau = branch == Sign::Plus ? scheme.tau_plus : scheme.tau_minus;
    for (int n = 0; n <= n_max; ++n) {
      c.moduli[static_cast<std::size_t>(n)] = k_modulus(scheme, table, branch, n);
      if (n >= 1)
        c.phases[static_cast<std::size_t>(n)] =
            omega0 * tau * (table.energy(branch, n) - table.energy(branch, n - 1));
    }
    (branch == Sign::Plus ? pair.plus : pair.minus) = std::move(c);
  }
  return pair;
}

namespace {

void require_eigen_state(const TruncatedState& v, const LadderPair& pair, const char* who) {
  if (v.basis != Basis::Eigen)
    throw CutoffMismatch(std::string(who) + ": state must be in the eigen basis");
  if (v.cutoff != pair.n_max)
    throw CutoffMismatch(std::string(who) + ": state cutoff differs from ladder cutoff");
}

}  // namespace

TruncatedState apply_lowering(const TruncatedState& v, const LadderPair& pair) {
  require_eigen_state(v, pair, "apply_lowering");
  TruncatedState out = TruncatedState::eigen(v.cutoff);
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const LadderCoefficients& c = pair.branch(s);
    for (int n = 1; n <= v.cutoff; ++n)
      out.coeffs[TruncatedState::eigen_index(n - 1, s)] =
          c.k(n) * v.coeffs[TruncatedState::eigen_index(n, s)];
  }
  return out;  // singleton component annihilated
}

TruncatedState apply_raising(const TruncatedState& v, const LadderPair& pair) {
  require_eigen_state(v, pair, "apply_raising");
  TruncatedState out = TruncatedState::eigen(v.cutoff);
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const LadderCoefficients& c = pair.branch(s);
    for (int n = 0; n < v.cutoff; ++n)
      out.coeffs[TruncatedState::eigen_index(n + 1, s)] =
          std::conj(c.k(n + 1)) * v.coeffs[TruncatedState::eigen_index(n, s)];
    if (std::abs(v.coeffs[TruncatedState::eigen_index(v.cutoff, s)]) > 0.0)
      out.truncation_loss = true;  // component raised past the cutoff dropped
  }
  return out;
}

LoweringElements lowering_matrix_elements(int n, const SpectrumTable& table,
                                          const LadderPair& pair) {
  if (n < 0 || n > table.n_max() - 2)
    throw CutoffMismatch("lowering_matrix_elements: requires 0 <= n <= n_max - 2");
  const LevelData& ln = table.level(n);
  const LevelData& ln1 = table.level(n + 1);
  const auto kp = pair.plus.k(n + 1);
  const auto km = pair.minus.k(n + 1);

  LoweringElements out;
  out.pp = ln.sin_theta * ln1.sin_theta * kp + ln.cos_theta * ln1.cos_theta * km;
  out.pm = ln.sin_theta * ln1.cos_theta * kp - ln.cos_theta * ln1.sin_theta * km;
  if (n == 0) {
    // K_+-([0]) = 0, so both elements vanish without touching theta([-1])
    out.mp = 0.0;
    out.mm = 0.0;
  } else {
    const LevelData& lnm = table.level(n - 1);
    const auto kp0 = pair.plus.k(n);
    const auto km0 = pair.minus.k(n);
    out.mp = lnm.cos_theta * ln.sin_theta * kp0 - lnm.sin_theta * ln.cos_theta * km0;
    out.mm = lnm.cos_theta * ln.cos_theta * kp0 + lnm.sin_theta * ln.sin_theta * km0;
  }
  return out;
}

AlgebraResidual algebra_residual(const LadderPair& pair, double p0, double q0, int n_max) {
  if (n_max > pair.n_max) throw CutoffMismatch("algebra_residual: n_max beyond bound pair");
  AlgebraResidual out;
  for (const LadderCoefficients* c : {&pair.plus, &pair.minus}) {
    double p0n = 1.0;  // p0^{-n}
    double q0n = 1.0;  // q0^n
    for (int n = 0; n < n_max; ++n) {
      const double k2 = c->k0(n) * c->k0(n);
      const double k2next = c->k0(n + 1) * c->k0(n + 1);
      out.res1_max = std::max(out.res1_max, std::abs(k2next - q0 * k2 - p0n));
      out.res2_max = std::max(out.res2_max, std::abs(k2next - k2 / p0 - q0n));
      p0n /= p0;
      q0n *= q0;
    }
  }
  return out;
}

double factorization_residual(const SpectrumTable& table, const LadderScheme& scheme, int N) {
  if (scheme.kind != LadderScheme::Kind::ActionIdentity)
    throw InvalidParameter("factorization_residual: requires an ActionIdentity scheme");
  if (N > table.n_max())
    throw CutoffMismatch("factorization_residual: N beyond the table cutoff");
  const LadderPair pair = bind_scheme(scheme, table);
  const double ratio = table.model().charge_ratio();
  double res = 0.0;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const double e0 = table.energy(s, 0);
    for (int n = 0; n <= N; ++n) {
      const double k0 = pair.branch(s).k0(n);
      const double lhs =
          (n == 0) ? e0 : k0 * k0 * std::pow(ratio, -2.0 * (n - 1)) + e0;
      res = std::max(res, std::abs(lhs - table.energy(s, n)));
    }
  }
  return res;
}

}  // namespace pqjc
