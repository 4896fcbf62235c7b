#ifndef PQJC_LADDER_HPP
#define PQJC_LADDER_HPP

#include <complex>
#include <vector>

#include "pqjc/spectrum.hpp"

namespace pqjc {

// Rule producing the ladder moduli K0_+-([n]):
//   Algebra(p0, q0)  -> sqrt([n]_{(p0,q0)})   (the (p0,q0)-Fock constraint)
//   ActionIdentity   -> (q^mu/p^nu)^{n-1} sqrt(E_n^+- - E_0^+-)
//   Custom           -> caller-supplied moduli, K0(0) = 0 required
// The time offsets tau_+- fix the temporal-stability phases.
struct LadderScheme {
  enum class Kind { Algebra, ActionIdentity, Custom };

  Kind kind = Kind::Algebra;
  double p0 = 1.0;
  double q0 = 1.0;
  std::vector<double> custom_moduli;
  double tau_plus = 0.0;
  double tau_minus = 0.0;

  static LadderScheme algebra(double p0, double q0, double tau_plus = 0.0,
                              double tau_minus = 0.0);
  static LadderScheme action_identity(double tau_plus = 0.0, double tau_minus = 0.0);
  static LadderScheme custom(std::vector<double> moduli, double tau_plus = 0.0,
                             double tau_minus = 0.0);

  LadderScheme with_tau(double tp, double tm) const {
    LadderScheme s = *this;
    s.tau_plus = tp;
    s.tau_minus = tm;
    return s;
  }

  void validate() const;
};

// Moduli and phases of one branch, bound against a spectrum table.
// phases[n] = omega0 * tau_branch * (E_n - E_{n-1}) for n >= 1; phases[0] = 0.
struct LadderCoefficients {
  Sign branch = Sign::Plus;
  std::vector<double> moduli;
  std::vector<double> phases;

  double k0(int n) const { return moduli.at(static_cast<std::size_t>(n)); }
  std::complex<double> k(int n) const {
    return std::polar(moduli.at(static_cast<std::size_t>(n)),
                      phases.at(static_cast<std::size_t>(n)));
  }
};

struct LadderPair {
  LadderCoefficients plus;
  LadderCoefficients minus;
  int n_max = 0;

  const LadderCoefficients& branch(Sign s) const { return s == Sign::Plus ? plus : minus; }
};

// Single modulus without binding the whole table.
double k_modulus(const LadderScheme& scheme, const SpectrumTable& table, Sign branch, int n);

// Compute moduli + phases for both branches up to the table cutoff; validates
// the ActionIdentity boundedness precondition.
LadderPair bind_scheme(const LadderScheme& scheme, const SpectrumTable& table);

// A^- : |E_n^+-> -> K_+-([n]) |E_{n-1}^+->, singleton annihilated.
TruncatedState apply_lowering(const TruncatedState& v, const LadderPair& pair);

// A^+ : |E_n^+-> -> K*_+-([n+1]) |E_{n+1}^+->; the component raised past the
// cutoff is dropped and flagged.
TruncatedState apply_raising(const TruncatedState& v, const LadderPair& pair);

// Product-basis matrix elements of the lowering operator at level n:
// pp = <n,+|A^-|n+1,+>, pm = <n,+|A^-|n+2,->, mp = <n,-|A^-|n,+>,
// mm = <n,-|A^-|n+1,->.
struct LoweringElements {
  std::complex<double> pp, pm, mp, mm;
};

LoweringElements lowering_matrix_elements(int n, const SpectrumTable& table,
                                          const LadderPair& pair);

// Residuals of the (p0,q0)-Fock recursions
//   K0([n+1])^2 - q0 K0([n])^2 = p0^{-n},  K0([n+1])^2 - p0^{-1} K0([n])^2 = q0^n
// maximised over both branches and n < n_max.
struct AlgebraResidual {
  double res1_max = 0.0;
  double res2_max = 0.0;
};

AlgebraResidual algebra_residual(const LadderPair& pair, double p0, double q0, int n_max);

// Residual of the factorized Hamiltonian
//   A^+ (q^mu/p^nu)^{-2N} A^- + E_0  =  diag(E_n)
// for an ActionIdentity scheme; zero when the scheme is valid.
double factorization_residual(const SpectrumTable& table, const LadderScheme& scheme, int N);

}  // namespace pqjc

#endif  // PQJC_LADDER_HPP
