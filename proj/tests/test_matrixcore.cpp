#include <catch2/catch.hpp>

#include "schurloewner/matrixcore.hpp"

using namespace schurloewner;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("schur_product basics") {
  const CMatrix a = mat2(1, 2, 3, 4);
  const CMatrix b = mat2(5, 6, 7, 8);
  const CMatrix p = schur_product(a, b);
  CHECK(p(0, 0) == Complex(5));
  CHECK(p(0, 1) == Complex(12));
  CHECK(p(1, 0) == Complex(21));
  CHECK(p(1, 1) == Complex(32));

  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix masked = schur_product(id, a);
  CHECK(masked(0, 1) == Complex(0));
  CHECK(masked(0, 0) == a(0, 0));

  const CMatrix ones = CMatrix::Constant(2, 2, Complex(1));
  CHECK((schur_product(ones, a) - a).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(schur_product(a, CMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("schatten_norm on diag(3,-4)") {
  const CMatrix d = mat2(3, 0, 0, -4);
  CHECK(schatten_norm(d, 1.0) == Approx(7.0).margin(1e-12));
  CHECK(schatten_norm(d, kInfiniteQ) == Approx(4.0).margin(1e-12));
  CHECK(schatten_norm(d, 2.0) == Approx(5.0).margin(1e-12));
  CHECK_THROWS_AS(schatten_norm(d, 0.5), std::invalid_argument);
}

TEST_CASE("schatten_norm is monotone in q and unitarily invariant") {
  const std::vector<double> qs = {1.0, 1.5, 2.0, 3.0, 7.0, kInfiniteQ};
  for (int n : {2, 4, 7}) {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      const CMatrix a = random_ensemble(EnsembleKind::ginibre, n, seed);
      for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        const double lo = schatten_norm(a, qs[i + 1]);
        const double hi = schatten_norm(a, qs[i]);
        CHECK(hi >= lo - 1e-10 * std::max(1.0, hi));
      }
      // unitaries from QR of independent draws
      Eigen::HouseholderQR<CMatrix> qru(random_ensemble(EnsembleKind::ginibre, n, seed + 100));
      Eigen::HouseholderQR<CMatrix> qrv(random_ensemble(EnsembleKind::ginibre, n, seed + 200));
      const CMatrix u = qru.householderQ();
      const CMatrix v = qrv.householderQ();
      for (double q : {1.0, 2.0, kInfiniteQ}) {
        const double base = schatten_norm(a, q);
        CHECK(schatten_norm(u * a * v, q) == Approx(base).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("numerical_radius") {
  SECTION("hermitian matrices attain the spectral norm") {
    const CMatrix h = 0.5 * (random_ensemble(EnsembleKind::gue, 4, 7u) +
                             random_ensemble(EnsembleKind::gue, 4, 7u).adjoint());
    CHECK(numerical_radius(h, 1e-9) == Approx(schatten_norm(h, kInfiniteQ)).margin(1e-7));
  }
  SECTION("nilpotent 2x2 shift") {
    const CMatrix a = mat2(0, 1, 0, 0);
    // dense theta-grid oracle, 1e5 points
    double oracle = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const double theta = 2.0 * M_PI * k / 100000.0;
      const Complex ph = std::polar(1.0, theta);
      const CMatrix re = 0.5 * (ph * a + (std::conj(ph) * a).adjoint());
      oracle = std::max(oracle, largest_eigenvalue(re));
    }
    CHECK(oracle == Approx(0.5).margin(1e-9));
    CHECK(numerical_radius(a, 1e-9) == Approx(oracle).margin(1e-8));
  }
  SECTION("zero matrix") { CHECK(numerical_radius(CMatrix::Zero(3, 3), 1e-9) == 0.0); }
  SECTION("two-sided norm sandwich on random draws") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
      const CMatrix a = random_ensemble(EnsembleKind::ginibre, 5, seed);
      const double w = numerical_radius(a, 1e-9);
      const double op = schatten_norm(a, kInfiniteQ);
      CHECK(w <= op + 1e-8);
      CHECK(op <= 2.0 * w + 1e-8);
    }
  }
  SECTION("normal matrices attain the spectral norm") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
      const CMatrix a = random_ensemble(EnsembleKind::normal_matrix, 5, seed);
      CHECK(std::abs(numerical_radius(a, 1e-9) - schatten_norm(a, kInfiniteQ)) <= 1e-6);
    }
  }
}

TEST_CASE("hermitian_eig") {
  SECTION("diag(2,1)") {
    const HermitianMatrix h(mat2(2, 0, 0, 1));
    const auto sd = hermitian_eig(h);
    CHECK(sd.eigenvalues(0) == Approx(1.0));
    CHECK(sd.eigenvalues(1) == Approx(2.0));
  }
  SECTION("pauli-x") {
    const HermitianMatrix h(mat2(0, 1, 1, 0));
    const auto sd = hermitian_eig(h);
    CHECK(sd.eigenvalues(0) == Approx(-1.0));
    CHECK(sd.eigenvalues(1) == Approx(1.0));
  }
  SECTION("random GUE reconstruction") {
    const HermitianMatrix h(random_ensemble(EnsembleKind::gue, 5, 99u));
    const auto sd = hermitian_eig(h);
    const CMatrix rebuilt = sd.eigenvectors *
                            sd.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                            sd.eigenvectors.adjoint();
    CHECK((rebuilt - h.matrix()).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, h.matrix().cwiseAbs().maxCoeff()));
    for (Eigen::Index i = 0; i + 1 < sd.eigenvalues.size(); ++i)
      CHECK(sd.eigenvalues(i) <= sd.eigenvalues(i + 1));
  }
}

TEST_CASE("matrix_function") {
  const HermitianMatrix h(mat2(4, 0, 0, 9));
  SECTION("identity is a no-op") {
    const HermitianMatrix out = matrix_function(h, catalog::identity());
    CHECK((out.matrix() - h.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SECTION("sqrt of diag(4,9)") {
    const HermitianMatrix out = matrix_function(h, catalog::sqrt_fn());
    CHECK(out.matrix()(0, 0).real() == Approx(2.0));
    CHECK(out.matrix()(1, 1).real() == Approx(3.0));
  }
  SECTION("abs of diag(-1,2)") {
    const HermitianMatrix out = matrix_function(HermitianMatrix(mat2(-1, 0, 0, 2)), catalog::abs_fn());
    CHECK(out.matrix()(0, 0).real() == Approx(1.0));
    CHECK(out.matrix()(1, 1).real() == Approx(2.0));
  }
  SECTION("domain violation names the eigenvalue") {
    try {
      matrix_function(HermitianMatrix(mat2(-1, 0, 0, 2)), catalog::log_fn());
      FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("-1") != std::string::npos);
    }
  }
}

TEST_CASE("commutator") {
  const CMatrix a = random_ensemble(EnsembleKind::ginibre, 3, 5u);
  CHECK(commutator(a, a).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(commutator(a, CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

  const CMatrix shift = mat2(0, 1, 0, 0);
  const CMatrix b = mat2(1, 0, 0, 2);
  const CMatrix c = commutator(shift, b);
  CHECK(c(0, 1) == Complex(1.0));  // A_ij (b_j - b_i)
  CHECK(c.cwiseAbs().sum() == Approx(1.0));

  SECTION("eigenbasis identity: commutator entries are A~_ij (b_j - b_i)") {
    const HermitianMatrix herm(random_ensemble(EnsembleKind::gue, 5, 17u));
    const auto sd = hermitian_eig(herm);
    const CMatrix a5 = random_ensemble(EnsembleKind::ginibre, 5, 18u);
    const CMatrix lhs = sd.eigenvectors.adjoint() * commutator(a5, herm.matrix()) * sd.eigenvectors;
    const CMatrix at = sd.eigenvectors.adjoint() * a5 * sd.eigenvectors;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        CHECK(std::abs(lhs(i, j) - at(i, j) * (sd.eigenvalues(j) - sd.eigenvalues(i))) <= 1e-10);
  }
}

TEST_CASE("random ensembles") {
  SECTION("density: trace one, PSD") {
    const CMatrix c = random_ensemble(EnsembleKind::density, 4, 77u);
    CHECK(std::abs(c.trace().real() - 1.0) <= 1e-12);
    CHECK(std::abs(c.trace().imag()) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(c, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
  SECTION("gue determinism and hermiticity") {
    const CMatrix h1 = random_ensemble(EnsembleKind::gue, 3, 123u);
    const CMatrix h2 = random_ensemble(EnsembleKind::gue, 3, 123u);
    CHECK((h1 - h2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((h1 - h1.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SECTION("hermitian contraction") {
    const CMatrix z = random_ensemble(EnsembleKind::hermitian_contraction, 5, 9u);
    CHECK(schatten_norm(z, kInfiniteQ) <= 1.0 + 1e-12);
  }
  SECTION("normal matrix is normal") {
    const CMatrix a = random_ensemble(EnsembleKind::normal_matrix, 4, 55u);
    CHECK((a * a.adjoint() - a.adjoint() * a).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SECTION("unknown kind rejected") {
    CHECK_THROWS_AS(parse_ensemble_kind("wishart"), std::invalid_argument);
  }
}

TEST_CASE("HermitianMatrix symmetrizes its input") {
  const CMatrix raw = mat2(Complex(1, 0.5), Complex(2, 1), Complex(0, 0), Complex(3, -2));
  const HermitianMatrix h(raw);
  CHECK(h.matrix()(0, 0).imag() == 0.0);
  CHECK(h.matrix()(1, 1).imag() == 0.0);
  CHECK(h.matrix()(0, 1) == std::conj(h.matrix()(1, 0)));
}
