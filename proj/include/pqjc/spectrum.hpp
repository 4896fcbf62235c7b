#ifndef PQJC_SPECTRUM_HPP
#define PQJC_SPECTRUM_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pqjc/pqmath.hpp"

namespace pqjc {

// Branch of a tower / spin projection of a product state.
enum class Sign { Plus, Minus };

inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

// Deformation-dependent prefactor h(p,q) of the number term; must be
// positive and tend to 1 in the classical limit.
struct HChoice {
  enum class Kind { Constant, Custom };

  Kind kind = Kind::Constant;
  double value = 1.0;   // Constant
  std::string tag;      // Custom: name of a registered function

  static HChoice constant(double v) { return {Kind::Constant, v, {}}; }
  static HChoice custom(std::string t) { return {Kind::Custom, 1.0, std::move(t)}; }

  double evaluate(const DeformationParams& d) const;
};

// Physical inputs of the deformed model: detuning epsilon, coupling lambda,
// atomic frequency omega0, h(p,q) choice and the (mu, nu) exponents of the
// diagonal charge operator.
struct JCModelParams {
  DeformationParams deformation = DeformationParams::classical_limit();
  double epsilon = 0.0;
  double lambda = 0.0;
  double omega0 = 1.0;
  HChoice h = HChoice::constant(1.0);
  double mu = 0.0;
  double nu = 0.0;

  void validate() const;
  double h_value() const { return h.evaluate(deformation); }
  // q^mu / p^nu, the single-step eigenvalue ratio of the charge operator.
  double charge_ratio() const;
};

// sign convention used throughout: sign(0) = +1.
inline double sign_plus_convention(double x) { return x < 0.0 ? -1.0 : 1.0; }

// One level of the two towers.
struct LevelData {
  int n = 0;
  double script_E = 0.0;  // E([n+1])
  double Q = 0.0;         // Q([n+1]) = sqrt(script_E^2/4 + lambda^2 [n+1])
  double sin_theta = 0.0;
  double cos_theta = 1.0;
  double E_plus = 0.0;
  double E_minus = 0.0;
  double zeeman = 0.0;    // E_plus - E_minus = 2 Q

  double energy(Sign branch) const { return branch == Sign::Plus ? E_plus : E_minus; }
};

struct DegeneratePair {
  std::size_t i = 0;  // eigen-basis indices (0 = singleton)
  std::size_t j = 0;
  double gap = 0.0;
};

struct SpectrumDiagnostics {
  std::optional<int> turnaround_n0;
  std::vector<DegeneratePair> degenerate_pairs;
  double min_E_minus = 0.0;
};

// Exact eigenspectrum of the reduced Hamiltonian up to level cutoff n_max:
// the singleton plus the two towers with their mixing angles. Immutable
// after construction.
class SpectrumTable {
 public:
  SpectrumTable(JCModelParams model, int n_max);

  const JCModelParams& model() const { return model_; }
  double singleton_energy() const { return singleton_energy_; }
  int n_max() const { return static_cast<int>(levels_.size()) - 1; }
  const LevelData& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  const std::vector<LevelData>& levels() const { return levels_; }
  double energy(Sign branch, int n) const { return level(n).energy(branch); }
  const SpectrumDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  JCModelParams model_;
  double singleton_energy_;
  std::vector<LevelData> levels_;
  SpectrumDiagnostics diagnostics_;
};

inline SpectrumTable build_spectrum(const JCModelParams& model, int n_max) {
  return SpectrumTable(model, n_max);
}

// Dense real symmetric matrix, row-major.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {}

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  std::vector<double> apply(const std::vector<double>& v) const;
  double max_asymmetry() const;
  std::vector<double> diagonal() const;

 private:
  std::size_t dim_;
  std::vector<double> a_;
};

// Basis layouts for truncated states:
//   Product: |n,+>, |n,->, n = 0..N, interleaved; length 2(N+1).
//   Eigen:   |E_*>, |E_0^+>, |E_0^->, |E_1^+>, ...; length 2N+3.
enum class Basis { Product, Eigen };

struct TruncatedState {
  Basis basis = Basis::Product;
  int cutoff = 0;
  std::vector<std::complex<double>> coeffs;
  bool truncation_loss = false;

  static TruncatedState product(int cutoff);
  static TruncatedState eigen(int cutoff);

  static std::size_t product_index(int n, Sign s) {
    return 2 * static_cast<std::size_t>(n) + (s == Sign::Minus ? 1 : 0);
  }
  static std::size_t eigen_singleton_index() { return 0; }
  static std::size_t eigen_index(int n, Sign s) {
    return 1 + 2 * static_cast<std::size_t>(n) + (s == Sign::Minus ? 1 : 0);
  }

  double norm() const;
};

// Matrix of the reduced Hamiltonian in the product basis, size 2(N+1).
DenseMatrix build_hamiltonian_matrix(const JCModelParams& model, int N);

struct SpectrumVerification {
  double max_residual = 0.0;
  int matched_levels = 0;
};

// Residuals ||H v - E v|| of the closed-form eigenpairs against the
// truncated matrix, for n <= N-2 plus the singleton. Throws OracleMismatch
// when any residual exceeds tol.
SpectrumVerification verify_spectrum(const JCModelParams& model, int N, double tol);

// Action of U (relabel product components onto tower slots) and its adjoint.
TruncatedState to_eigenbasis(const TruncatedState& v, const SpectrumTable& table);
TruncatedState from_eigenbasis(const TruncatedState& v, const SpectrumTable& table);

// Physical product-basis amplitudes of an eigen-basis state (expands each
// |E_n^+-> through its mixing angles). Output cutoff is n_max + 1.
std::vector<std::complex<double>> product_components(const TruncatedState& v,
                                                     const SpectrumTable& table);

struct DecoupledLevel {
  int s_n = 1;  // sign of E([n+1])
  double E_plus = 0.0;
  double E_minus = 0.0;
  std::string assignment;
};

// lambda = 0 branch assignment (the two spin sectors decouple); throws
// AmbiguousSign at a level crossing.
DecoupledLevel decoupled_spectrum(const JCModelParams& model, int n);

}  // namespace pqjc

#endif  // PQJC_SPECTRUM_HPP
