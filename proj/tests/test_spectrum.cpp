#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pqjc/spectrum.hpp"

using namespace pqjc;

namespace {

JCModelParams model(double p, double q, double eps, double lam) {
  JCModelParams m;
  m.deformation = DeformationParams(p, q);
  m.epsilon = eps;
  m.lambda = lam;
  return m;
}

}  // namespace

TEST_CASE("classical spectrum reproduces the non-deformed eigenvalues") {
  const JCModelParams m = model(1.0, 1.0, 0.05, 0.3);
  const SpectrumTable table(m, 20);
  CHECK(table.singleton_energy() == 0.5 * 0.05);
  for (int n = 0; n <= 20; ++n) {
    const double Q = std::sqrt(0.05 * 0.05 / 4.0 + 0.3 * 0.3 * (n + 1.0));
    const double Ep = 1.05 * (n + 1.0) + Q;
    const double Em = 1.05 * (n + 1.0) - Q;
    CHECK(table.level(n).E_plus == doctest::Approx(Ep).epsilon(1e-14));
    CHECK(table.level(n).E_minus == doctest::Approx(Em).epsilon(1e-14));
  }
}

TEST_CASE("singleton energy is independent of the deformation") {
  for (auto [p, q] : {std::pair{1.0, 1.0}, {1.0, 0.5}, {1.2, 0.5}, {2.0, 0.25}}) {
    const SpectrumTable table(model(p, q, 0.01, 0.3), 8);
    CHECK(table.singleton_energy() == 0.5 * 0.01);  // bitwise
  }
}

TEST_CASE("resonance symmetry: epsilon = 0 classical gives sin = cos = 1/sqrt(2)") {
  const SpectrumTable table(model(1.0, 1.0, 0.0, 0.3), 10);
  for (int n = 0; n <= 10; ++n) {
    CHECK(table.level(n).script_E == doctest::Approx(0.0));
    CHECK(table.level(n).sin_theta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(table.level(n).cos_theta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("level invariants: orthonormal mixing and strict Zeeman splitting") {
  for (auto [p, q] : {std::pair{1.0, 1.0}, {1.0, 0.5}, {1.2, 0.5}, {2.0, 0.25}}) {
    const SpectrumTable table(model(p, q, 0.05, 0.3), 40);
    for (const LevelData& lv : table.levels()) {
      CHECK(std::abs(lv.sin_theta * lv.sin_theta + lv.cos_theta * lv.cos_theta - 1.0) < 1e-12);
      CHECK(lv.E_plus - lv.E_minus == lv.zeeman);
      CHECK(lv.zeeman == 2.0 * lv.Q);
      CHECK(lv.zeeman > 0.0);
      CHECK(lv.cos_theta >= 0.0);
    }
  }
}

TEST_CASE("hamiltonian matrix structure") {
  const JCModelParams m = model(1.2, 0.5, 0.05, 0.3);
  const DenseMatrix H = build_hamiltonian_matrix(m, 10);
  CHECK(H.dim() == 22);
  CHECK(H.max_asymmetry() == 0.0);

  // coupling |n,+> <-> |n+1,-> equals lambda sqrt([n+1])
  for (int n = 0; n < 10; ++n) {
    const double expect = 0.3 * std::sqrt(basic_number(n + 1, m.deformation));
    CHECK(H(TruncatedState::product_index(n, Sign::Plus),
            TruncatedState::product_index(n + 1, Sign::Minus)) ==
          doctest::Approx(expect).epsilon(1e-14));
  }

  // lambda = 0: diagonal with the decoupled energies
  const DenseMatrix H0 = build_hamiltonian_matrix(model(1.2, 0.5, 0.05, 0.0), 6);
  for (std::size_t i = 0; i < H0.dim(); ++i)
    for (std::size_t j = 0; j < H0.dim(); ++j)
      if (i != j) CHECK(H0(i, j) == 0.0);
}

TEST_CASE("verify_spectrum closed-form eigenpairs against the matrix oracle") {
  const SpectrumVerification v = verify_spectrum(model(1.2, 0.5, 0.05, 0.3), 20, 1e-10);
  CHECK(v.max_residual < 1e-10);
  CHECK(v.matched_levels == 2 * 19 + 1);

  const SpectrumVerification vc = verify_spectrum(model(1.0, 1.0, 0.05, 0.3), 20, 1e-10);
  CHECK(vc.max_residual < 1e-10);

  // singleton residual is exact
  const DenseMatrix H = build_hamiltonian_matrix(model(1.2, 0.5, 0.05, 0.3), 6);
  std::vector<double> v0(H.dim(), 0.0);
  v0[TruncatedState::product_index(0, Sign::Minus)] = 1.0;
  const std::vector<double> hv = H.apply(v0);
  for (std::size_t i = 0; i < hv.size(); ++i)
    CHECK(std::abs(hv[i] - 0.5 * 0.05 * v0[i]) < 1e-15);
}

TEST_CASE("continuity towards the classical limit") {
  // E_n^{+-} converges to the non-deformed values along p = 1+t, q = 1-t
  const double eps = 0.05, lam = 0.3;
  auto classical_E = [&](int n, double s) {
    const double Q = std::sqrt(eps * eps / 4.0 + lam * lam * (n + 1.0));
    return (1.0 + eps) * (n + 1.0) + s * Q;
  };
  double prev_err = -1.0;
  for (double t : {1e-2, 1e-4}) {
    const SpectrumTable table(model(1.0 + t, 1.0 - t, eps, lam), 10);
    double err = 0.0;
    for (int n = 0; n <= 10; ++n) {
      err = std::max(err, std::abs(table.level(n).E_plus - classical_E(n, +1.0)) /
                              std::abs(classical_E(n, +1.0)));
      err = std::max(err, std::abs(table.level(n).E_minus - classical_E(n, -1.0)) /
                              std::abs(classical_E(n, -1.0)));
    }
    if (prev_err >= 0.0) CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("turnaround diagnostic matches pqmath") {
  const JCModelParams m = model(1.2, 0.5, 0.05, 0.3);
  const SpectrumTable table(m, 64);
  const auto expected = turnaround_index(m.deformation, 65);
  REQUIRE(table.diagnostics().turnaround_n0.has_value());
  CHECK(*table.diagnostics().turnaround_n0 == *expected);
  CHECK_FALSE(SpectrumTable(model(1.0, 0.5, 0.05, 0.3), 64).diagnostics().turnaround_n0);
}

TEST_CASE("basis maps: U and U-dagger as index maps") {
  const JCModelParams m = model(1.2, 0.5, 0.05, 0.3);
  const SpectrumTable table(m, 6);

  // |n,+> maps to the unit vector on |E_n^+>
  TruncatedState v = TruncatedState::product(6);
  v.coeffs[TruncatedState::product_index(2, Sign::Plus)] = 1.0;
  const TruncatedState e = to_eigenbasis(v, table);
  CHECK(std::abs(e.coeffs[TruncatedState::eigen_index(2, Sign::Plus)] - 1.0) == 0.0);
  CHECK(e.coeffs[TruncatedState::eigen_singleton_index()] == std::complex<double>{0.0, 0.0});

  // round trip is the identity on product states
  TruncatedState w = TruncatedState::product(6);
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    w.coeffs[i] = {0.1 * static_cast<double>(i), -0.05 * static_cast<double>(i)};
  const TruncatedState back = from_eigenbasis(to_eigenbasis(w, table), table);
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    CHECK(std::abs(back.coeffs[i] - w.coeffs[i]) < 1e-12);

  // U^dag annihilates the singleton
  TruncatedState s = TruncatedState::eigen(6);
  s.coeffs[TruncatedState::eigen_singleton_index()] = 1.0;
  const TruncatedState ps = from_eigenbasis(s, table);
  CHECK(ps.norm() == 0.0);

  // U U^dag is the identity on the tower span and drops the singleton
  TruncatedState mixed = TruncatedState::eigen(6);
  mixed.coeffs[TruncatedState::eigen_singleton_index()] = {0.3, -0.1};
  mixed.coeffs[TruncatedState::eigen_index(1, Sign::Plus)] = {0.5, 0.2};
  mixed.coeffs[TruncatedState::eigen_index(4, Sign::Minus)] = {-0.7, 0.0};
  const TruncatedState uu = to_eigenbasis(from_eigenbasis(mixed, table), table);
  CHECK(uu.coeffs[TruncatedState::eigen_singleton_index()] == std::complex<double>{0.0, 0.0});
  for (int n = 0; n <= 6; ++n)
    for (Sign sg : {Sign::Plus, Sign::Minus})
      CHECK(std::abs(uu.coeffs[TruncatedState::eigen_index(n, sg)] -
                     mixed.coeffs[TruncatedState::eigen_index(n, sg)]) == 0.0);

  CHECK_THROWS_AS(to_eigenbasis(TruncatedState::product(4), table), CutoffMismatch);
  CHECK_THROWS_AS(to_eigenbasis(TruncatedState::eigen(6), table), CutoffMismatch);
}

TEST_CASE("product_components expands eigenvectors physically") {
  const JCModelParams m = model(1.2, 0.5, 0.05, 0.3);
  const SpectrumTable table(m, 6);
  TruncatedState s = TruncatedState::eigen(6);
  s.coeffs[TruncatedState::eigen_index(3, Sign::Plus)] = 1.0;
  const auto comps = product_components(s, table);
  const LevelData& lv = table.level(3);
  CHECK(std::abs(comps[TruncatedState::product_index(3, Sign::Plus)] - lv.sin_theta) < 1e-15);
  CHECK(std::abs(comps[TruncatedState::product_index(4, Sign::Minus)] - lv.cos_theta) < 1e-15);
  double norm = 0.0;
  for (const auto& c : comps) norm += std::norm(c);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("decoupled spectrum matches the lambda = 0 diagonal as a multiset") {
  for (auto [p, q] : {std::pair{1.0, 1.0}, {1.2, 0.5}, {2.0, 0.25}}) {
    const JCModelParams m = model(p, q, 0.05, 0.0);
    const int N = 12;
    std::vector<double> expect{0.5 * m.epsilon};
    for (int n = 0; n < N; ++n) {
      const DecoupledLevel lv = decoupled_spectrum(m, n);
      expect.push_back(lv.E_plus);
      expect.push_back(lv.E_minus);
    }
    const DenseMatrix H = build_hamiltonian_matrix(m, N);
    std::vector<double> diag;
    for (int n = 0; n < N; ++n)
      diag.push_back(H(TruncatedState::product_index(n, Sign::Plus),
                       TruncatedState::product_index(n, Sign::Plus)));
    for (int n = 0; n <= N; ++n)
      diag.push_back(H(TruncatedState::product_index(n, Sign::Minus),
                       TruncatedState::product_index(n, Sign::Minus)));
    std::sort(expect.begin(), expect.end());
    std::sort(diag.begin(), diag.end());
    REQUIRE(expect.size() == diag.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
      CHECK(std::abs(expect[i] - diag[i]) < 1e-12);
  }
}

TEST_CASE("decoupled branch assignment, classical case") {
  // classical, h = 1, eps = 0.05, n = 0: script_E = eps > 0 -> s_0 = +1
  const JCModelParams m = model(1.0, 1.0, 0.05, 0.0);
  const DecoupledLevel lv = decoupled_spectrum(m, 0);
  CHECK(lv.s_n == 1);
  CHECK(lv.E_plus == doctest::Approx(1.05 + 0.5 * 1.05 - 0.5).epsilon(1e-14));
  CHECK(lv.E_minus == doctest::Approx(0.5 * 1.05 + 0.5).epsilon(1e-14));
}

TEST_CASE("decoupled crossing raises AmbiguousSign") {
  // classical, eps = 0: script_E([n+1]) = (1+0)(1) - 1 = 0 exactly
  const JCModelParams m = model(1.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(decoupled_spectrum(m, 0), AmbiguousSign);
  CHECK_THROWS_AS(decoupled_spectrum(model(1.2, 0.5, 0.05, 0.3), 0), InvalidParameter);
}

TEST_CASE("degeneracy diagnostics flag close levels") {
  // classical eps = 0, lambda = 0: towers overlap heavily
  const SpectrumTable table(model(1.0, 1.0, 0.0, 0.0), 8);
  CHECK(!table.diagnostics().degenerate_pairs.empty());
  // a generic deformed point has none
  const SpectrumTable clean(model(1.2, 0.5, 0.05, 0.3), 8);
  CHECK(clean.diagnostics().degenerate_pairs.empty());
}

TEST_CASE("custom h choice") {
  JCModelParams m = model(1.2, 0.5, 0.05, 0.3);
  m.h = HChoice::custom("two_over_p_plus_q");
  CHECK(m.h_value() == doctest::Approx(2.0 / 1.7).epsilon(1e-15));
  const SpectrumVerification v = verify_spectrum(m, 12, 1e-10);
  CHECK(v.max_residual < 1e-10);
  m.h = HChoice::custom("nope");
  CHECK_THROWS_AS(m.h_value(), InvalidParameter);
  m.h = HChoice::constant(-1.0);
  CHECK_THROWS_AS(m.h_value(), InvalidParameter);
}
