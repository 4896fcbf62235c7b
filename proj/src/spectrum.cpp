#include "pqjc/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace pqjc {

namespace {

constexpr double kDegeneracyTol = 1e-9;

double degeneracy_gap_tol(double e) { return kDegeneracyTol * std::max(1.0, std::abs(e)); }

}  // namespace

double HChoice::evaluate(const DeformationParams& d) const {
  double h = 1.0;
  switch (kind) {
    case Kind::Constant:
      h = value;
      break;
    case Kind::Custom:
      // registered choices; each tends to 1 as (p,q) -> (1,1)
      if (tag == "two_over_p_plus_q") {
        h = 2.0 / (d.p() + d.q());
      } else {
        throw InvalidParameter("HChoice: unknown custom tag '" + tag + "'");
      }
      break;
  }
  if (!(h > 0.0)) throw InvalidParameter("HChoice: h(p,q) must be positive");
  return h;
}

void JCModelParams::validate() const {
  if (!(omega0 > 0.0)) throw InvalidParameter("JCModelParams: omega0 must be positive");
  (void)h_value();  // throws on invalid h
}

double JCModelParams::charge_ratio() const {
  return std::pow(deformation.q(), mu) / std::pow(deformation.p(), nu);
}

SpectrumTable::SpectrumTable(JCModelParams model, int n_max) : model_(std::move(model)) {
  model_.validate();
  if (n_max < 0) throw InvalidParameter("SpectrumTable: n_max must be >= 0");
  const double eps = model_.epsilon;
  const double lam = model_.lambda;
  const double h = model_.h_value();
  const DeformationParams& d = model_.deformation;

  singleton_energy_ = 0.5 * eps;  // independent of (p, q)

  levels_.reserve(static_cast<std::size_t>(n_max) + 1);
  double bn = basic_number(0, d);
  for (int n = 0; n <= n_max; ++n) {
    const double bn1 = basic_number(n + 1, d);
    LevelData lv;
    lv.n = n;
    lv.script_E = (1.0 + eps) * h * (bn1 - bn) - 1.0;
    const double rabi = std::sqrt(0.25 * lv.script_E * lv.script_E + lam * lam * bn1);
    const double mean = 0.5 * (1.0 + eps) * (h * (bn1 + bn) + 1.0);
    lv.E_plus = mean + rabi;
    lv.E_minus = mean - rabi;
    // store the gap as the actual difference and Q as its exact half, so
    // E+ - E- == zeeman == 2 Q holds bitwise
    lv.zeeman = lv.E_plus - lv.E_minus;
    lv.Q = 0.5 * lv.zeeman;
    if (rabi > 0.0) {
      lv.sin_theta = sign_plus_convention(lam) *
                     std::sqrt((rabi - 0.5 * lv.script_E) / (2.0 * rabi));
      lv.cos_theta = std::sqrt((rabi + 0.5 * lv.script_E) / (2.0 * rabi));
    } else {
      // exact crossing (lambda = 0, script_E = 0): fix the s_n = +1 column
      lv.sin_theta = 0.0;
      lv.cos_theta = 1.0;
    }
    levels_.push_back(lv);
    bn = bn1;
  }

  diagnostics_.turnaround_n0 = turnaround_index(d, n_max + 1);
  diagnostics_.min_E_minus = levels_.front().E_minus;
  for (const LevelData& lv : levels_)
    diagnostics_.min_E_minus = std::min(diagnostics_.min_E_minus, lv.E_minus);

  // degeneracy scan over singleton + towers: sort, flag close neighbours
  struct Entry {
    double e;
    std::size_t idx;
  };
  std::vector<Entry> entries;
  entries.reserve(2 * levels_.size() + 1);
  entries.push_back({singleton_energy_, TruncatedState::eigen_singleton_index()});
  for (const LevelData& lv : levels_) {
    entries.push_back({lv.E_plus, TruncatedState::eigen_index(lv.n, Sign::Plus)});
    entries.push_back({lv.E_minus, TruncatedState::eigen_index(lv.n, Sign::Minus)});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.e < b.e; });
  for (std::size_t k = 0; k + 1 < entries.size(); ++k) {
    const double gap = entries[k + 1].e - entries[k].e;
    if (gap < degeneracy_gap_tol(entries[k].e))
      diagnostics_.degenerate_pairs.push_back({entries[k].idx, entries[k + 1].idx, gap});
  }
}

// ---------------------------------------------------------------------------
// dense matrix
// ---------------------------------------------------------------------------

std::vector<double> DenseMatrix::apply(const std::vector<double>& v) const {
  if (v.size() != dim_) throw CutoffMismatch("DenseMatrix::apply: dimension mismatch");
  std::vector<double> out(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    const double* row = &a_[i * dim_];
    for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

double DenseMatrix::max_asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

std::vector<double> DenseMatrix::diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i);
  return d;
}

// ---------------------------------------------------------------------------
// truncated states
// ---------------------------------------------------------------------------

TruncatedState TruncatedState::product(int cutoff) {
  if (cutoff < 0) throw InvalidParameter("TruncatedState: cutoff must be >= 0");
  TruncatedState s;
  s.basis = Basis::Product;
  s.cutoff = cutoff;
  s.coeffs.assign(2 * static_cast<std::size_t>(cutoff + 1), {0.0, 0.0});
  return s;
}

TruncatedState TruncatedState::eigen(int cutoff) {
  if (cutoff < 0) throw InvalidParameter("TruncatedState: cutoff must be >= 0");
  TruncatedState s;
  s.basis = Basis::Eigen;
  s.cutoff = cutoff;
  s.coeffs.assign(2 * static_cast<std::size_t>(cutoff) + 3, {0.0, 0.0});
  return s;
}

double TruncatedState::norm() const {
  double acc = 0.0;
  for (const auto& c : coeffs) acc += std::norm(c);
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// Hamiltonian matrix and its oracle
// ---------------------------------------------------------------------------

DenseMatrix build_hamiltonian_matrix(const JCModelParams& model, int N) {
  model.validate();
  if (N < 2) throw InvalidParameter("build_hamiltonian_matrix: N >= 2 required");
  const DeformationParams& d = model.deformation;
  const double eps = model.epsilon;
  const double h = model.h_value();
  DenseMatrix H(2 * static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) {
    const double diag = (1.0 + eps) * (h * basic_number(n, d) + 0.5);
    H(TruncatedState::product_index(n, Sign::Plus), TruncatedState::product_index(n, Sign::Plus)) =
        diag + 0.5;
    H(TruncatedState::product_index(n, Sign::Minus),
      TruncatedState::product_index(n, Sign::Minus)) = diag - 0.5;
  }
  // a^dag sigma_- + a sigma_+ couples |n,+> with |n+1,->, element sqrt([n+1])
  for (int n = 0; n < N; ++n) {
    const double c = model.lambda * std::sqrt(basic_number(n + 1, d));
    const std::size_t i = TruncatedState::product_index(n, Sign::Plus);
    const std::size_t j = TruncatedState::product_index(n + 1, Sign::Minus);
    H(i, j) = c;
    H(j, i) = c;
  }
  return H;
}

namespace {

double residual_norm(const DenseMatrix& H, const std::vector<double>& v, double e) {
  const std::vector<double> hv = H.apply(v);
  double acc = 0.0;
  for (std::size_t i = 0; i < hv.size(); ++i) {
    const double r = hv[i] - e * v[i];
    acc += r * r;
  }
  return std::sqrt(acc);
}

}  // namespace

SpectrumVerification verify_spectrum(const JCModelParams& model, int N, double tol) {
  if (N < 4) throw InvalidParameter("verify_spectrum: N >= 4 required");
  if (!(tol > 0.0)) throw InvalidParameter("verify_spectrum: tol must be positive");
  const DenseMatrix H = build_hamiltonian_matrix(model, N);
  const SpectrumTable table(model, N);
  const std::size_t dim = H.dim();

  SpectrumVerification out;
  std::vector<double> v(dim, 0.0);

  // singleton |0,->
  v[TruncatedState::product_index(0, Sign::Minus)] = 1.0;
  out.max_residual = residual_norm(H, v, table.singleton_energy());
  out.matched_levels = 1;
  v[TruncatedState::product_index(0, Sign::Minus)] = 0.0;

  // towers; the top Fock level couples outside the truncation, so stop at N-2
  for (int n = 0; n <= N - 2; ++n) {
    const LevelData& lv = table.level(n);
    const std::size_t iu = TruncatedState::product_index(n, Sign::Plus);
    const std::size_t id = TruncatedState::product_index(n + 1, Sign::Minus);

    v[iu] = lv.sin_theta;
    v[id] = lv.cos_theta;
    out.max_residual = std::max(out.max_residual, residual_norm(H, v, lv.E_plus));
    ++out.matched_levels;

    v[iu] = lv.cos_theta;
    v[id] = -lv.sin_theta;
    out.max_residual = std::max(out.max_residual, residual_norm(H, v, lv.E_minus));
    ++out.matched_levels;

    v[iu] = 0.0;
    v[id] = 0.0;
  }

  if (out.max_residual > tol)
    throw OracleMismatch("verify_spectrum: residual " + std::to_string(out.max_residual) +
                         " exceeds tol " + std::to_string(tol));
  return out;
}

// ---------------------------------------------------------------------------
// basis maps
// ---------------------------------------------------------------------------

TruncatedState to_eigenbasis(const TruncatedState& v, const SpectrumTable& table) {
  if (v.basis != Basis::Product)
    throw CutoffMismatch("to_eigenbasis: input must be in the product basis");
  if (v.cutoff != table.n_max())
    throw CutoffMismatch("to_eigenbasis: state cutoff differs from table cutoff");
  TruncatedState out = TruncatedState::eigen(v.cutoff);
  for (int n = 0; n <= v.cutoff; ++n) {
    out.coeffs[TruncatedState::eigen_index(n, Sign::Plus)] =
        v.coeffs[TruncatedState::product_index(n, Sign::Plus)];
    out.coeffs[TruncatedState::eigen_index(n, Sign::Minus)] =
        v.coeffs[TruncatedState::product_index(n, Sign::Minus)];
  }
  return out;
}

TruncatedState from_eigenbasis(const TruncatedState& v, const SpectrumTable& table) {
  if (v.basis != Basis::Eigen)
    throw CutoffMismatch("from_eigenbasis: input must be in the eigen basis");
  if (v.cutoff != table.n_max())
    throw CutoffMismatch("from_eigenbasis: state cutoff differs from table cutoff");
  TruncatedState out = TruncatedState::product(v.cutoff);
  // U^dag annihilates the singleton component
  for (int n = 0; n <= v.cutoff; ++n) {
    out.coeffs[TruncatedState::product_index(n, Sign::Plus)] =
        v.coeffs[TruncatedState::eigen_index(n, Sign::Plus)];
    out.coeffs[TruncatedState::product_index(n, Sign::Minus)] =
        v.coeffs[TruncatedState::eigen_index(n, Sign::Minus)];
  }
  return out;
}

std::vector<std::complex<double>> product_components(const TruncatedState& v,
                                                     const SpectrumTable& table) {
  if (v.basis != Basis::Eigen)
    throw CutoffMismatch("product_components: input must be in the eigen basis");
  if (v.cutoff != table.n_max())
    throw CutoffMismatch("product_components: state cutoff differs from table cutoff");
  const int M = v.cutoff + 1;  // |E_n^+-> reaches |n+1,->
  std::vector<std::complex<double>> out(2 * static_cast<std::size_t>(M + 1), {0.0, 0.0});
  out[TruncatedState::product_index(0, Sign::Minus)] +=
      v.coeffs[TruncatedState::eigen_singleton_index()];
  for (int n = 0; n <= v.cutoff; ++n) {
    const LevelData& lv = table.level(n);
    const auto cp = v.coeffs[TruncatedState::eigen_index(n, Sign::Plus)];
    const auto cm = v.coeffs[TruncatedState::eigen_index(n, Sign::Minus)];
    out[TruncatedState::product_index(n, Sign::Plus)] += lv.sin_theta * cp + lv.cos_theta * cm;
    out[TruncatedState::product_index(n + 1, Sign::Minus)] +=
        lv.cos_theta * cp - lv.sin_theta * cm;
  }
  return out;
}

// ---------------------------------------------------------------------------
// decoupled limit
// ---------------------------------------------------------------------------

DecoupledLevel decoupled_spectrum(const JCModelParams& model, int n) {
  model.validate();
  if (model.lambda != 0.0)
    throw InvalidParameter("decoupled_spectrum: requires lambda = 0");
  if (n < 0) throw InvalidParameter("decoupled_spectrum: n must be >= 0");
  const DeformationParams& d = model.deformation;
  const double eps = model.epsilon;
  const double h = model.h_value();
  const double bn = basic_number(n, d);
  const double bn1 = basic_number(n + 1, d);
  const double script_E = (1.0 + eps) * h * (bn1 - bn) - 1.0;

  const double scale = std::max({1.0, std::abs((1.0 + eps) * h * bn1), std::abs((1.0 + eps) * h * bn)});
  if (std::abs(script_E) < kDegeneracyTol * scale)
    throw AmbiguousSign("decoupled_spectrum: E([n+1]) at a level crossing for n = " +
                        std::to_string(n));

  const double upper = (1.0 + eps) * h * bn1 + 0.5 * (1.0 + eps) - 0.5;  // |n+1,->
  const double lower = (1.0 + eps) * h * bn + 0.5 * (1.0 + eps) + 0.5;   // |n,+>

  DecoupledLevel out;
  out.s_n = script_E > 0.0 ? 1 : -1;
  if (out.s_n == 1) {
    out.E_plus = upper;
    out.E_minus = lower;
    out.assignment = "|E_n^+> = |n+1,->, |E_n^-> = |n,+>";
  } else {
    out.E_plus = lower;
    out.E_minus = upper;
    out.assignment = "|E_n^+> = sign(lambda)|n,+>, |E_n^-> = -sign(lambda)|n+1,->";
  }
  return out;
}

}  // namespace pqjc
