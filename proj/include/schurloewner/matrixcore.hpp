#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "schurloewner/functions.hpp"
#include "schurloewner/random.hpp"

namespace schurloewner {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

constexpr double kInfiniteQ = std::numeric_limits<double>::infinity();

inline void require_square(const CMatrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
  if (!a.allFinite())
    throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
}

inline void require_same_dim(const CMatrix& a, const CMatrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// Hermitian matrix; the constructor symmetrizes H <- (H + H*)/2 so the
// stored entries satisfy entries(i,j) == conj(entries(j,i)) exactly.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& raw) {
    require_square(raw, "HermitianMatrix");
    m_ = 0.5 * (raw + raw.adjoint().eval());
    // force exact conjugate symmetry including the diagonal
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      m_(i, i) = Complex(m_(i, i).real(), 0.0);
      for (Eigen::Index j = i + 1; j < m_.cols(); ++j) m_(j, i) = std::conj(m_(i, j));
    }
  }

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

struct SpectralDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // unitary, columns
};

// Entrywise (Schur/Hadamard) product.
inline CMatrix schur_product(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "schur_product");
  return a.cwiseProduct(b);
}

inline RVector singular_values(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues();
}

// Schatten q-norm, q in [1, inf]. q = inf gives the operator norm.
inline double schatten_norm(const CMatrix& a, double q) {
  require_square(a, "schatten_norm");
  if (!(q >= 1.0))
    throw std::invalid_argument("schatten_norm: q must satisfy q >= 1");
  const RVector sv = singular_values(a);
  if (std::isinf(q)) return sv.size() ? sv.maxCoeff() : 0.0;
  if (q == 1.0) return sv.sum();
  if (q == 2.0) return sv.norm();
  // scale by the largest singular value to avoid overflow in sigma^q
  const double top = sv.maxCoeff();
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i) / top, q);
  return top * std::pow(acc, 1.0 / q);
}

// Sum of |eigenvalues| of a Hermitian matrix; equals its trace norm.
// Cheaper than an SVD and used heavily by the estimators.
inline double trace_norm_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

inline double largest_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

namespace detail {

// Derivative-free maximization of a unimodal-ish function on [lo, hi].
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double x_tol, int max_iters) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iters && (b - a) > x_tol; ++it) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace detail

// Numerical radius w(A) = max_theta lambda_max((e^{i theta} A + e^{-i theta} A*)/2).
// Coarse 1024-point grid followed by golden-section refinement around the
// best three grid points.
inline double numerical_radius(const CMatrix& a, double tol = 1e-9) {
  require_square(a, "numerical_radius");
  if (!(tol > 0)) throw std::invalid_argument("numerical_radius: tol must be positive");

  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  auto objective = [&](double theta) {
    const CMatrix rotated = std::polar(1.0, theta) * a;
    const CMatrix re_part = 0.5 * (rotated + rotated.adjoint());
    return largest_eigenvalue(re_part);
  };

  constexpr int kGrid = 1024;
  const double step = 2.0 * M_PI / kGrid;
  std::array<int, 3> best_idx = {0, 0, 0};
  std::array<double, 3> best_val = {-std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity()};
  for (int k = 0; k < kGrid; ++k) {
    const double v = objective(k * step);
    for (int r = 0; r < 3; ++r) {
      if (v > best_val[r]) {
        for (int s = 2; s > r; --s) {
          best_val[s] = best_val[s - 1];
          best_idx[s] = best_idx[s - 1];
        }
        best_val[r] = v;
        best_idx[r] = k;
        break;
      }
    }
  }

  // |d/dtheta lambda_max| <= ||A||, so an interval of width tol/scale_bound
  // pins the value to tol. scale (max entry) underestimates ||A|| by at most n.
  const double lipschitz = scale * static_cast<double>(a.rows());
  const double x_tol = std::max(tol / lipschitz, 1e-14);
  double best = best_val[0];
  for (int r = 0; r < 3; ++r) {
    const double center = best_idx[r] * step;
    best = std::max(best, detail::golden_section_max(objective, center - step,
                                                     center + step, x_tol, 200));
  }
  return best;
}

// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
inline SpectralDecomposition hermitian_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");

  SpectralDecomposition out{es.eigenvalues(), es.eigenvectors()};
  const Eigen::Index n = h.dim();
  const double unitary_residual =
      (out.eigenvectors.adjoint() * out.eigenvectors - CMatrix::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  const CMatrix rebuilt = out.eigenvectors *
                          out.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                          out.eigenvectors.adjoint();
  const double rebuild_residual = (rebuilt - h.matrix()).cwiseAbs().maxCoeff();
  const double h_scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (unitary_residual > 1e-10 || rebuild_residual > 1e-9 * h_scale) {
    std::ostringstream os;
    os << "hermitian_eig: residuals too large (unitary " << unitary_residual
       << ", reconstruction " << rebuild_residual << ")";
    throw std::runtime_error(os.str());
  }
  return out;
}

// f(H) = U f(diag lambda) U*. Errors name the first eigenvalue outside
// the domain of f.
inline HermitianMatrix matrix_function(const HermitianMatrix& h, const ScalarFunction& f) {
  const SpectralDecomposition sd = hermitian_eig(h);
  RVector mapped(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lam = sd.eigenvalues(i);
    if (!f.domain().contains(lam)) {
      std::ostringstream os;
      os << "matrix_function: eigenvalue " << lam << " outside the domain of " << f.name();
      throw std::domain_error(os.str());
    }
    mapped(i) = f.evaluate(lam);
  }
  const CMatrix out = sd.eigenvectors *
                      mapped.asDiagonal().toDenseMatrix().cast<Complex>() *
                      sd.eigenvectors.adjoint();
  return HermitianMatrix(out);
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

enum class EnsembleKind { gue, ginibre, density, normal_matrix, hermitian_contraction };

inline EnsembleKind parse_ensemble_kind(const std::string& s) {
  if (s == "gue") return EnsembleKind::gue;
  if (s == "ginibre") return EnsembleKind::ginibre;
  if (s == "density") return EnsembleKind::density;
  if (s == "normal_matrix") return EnsembleKind::normal_matrix;
  if (s == "hermitian_contraction") return EnsembleKind::hermitian_contraction;
  throw std::invalid_argument("unknown ensemble kind '" + s + "'");
}

namespace detail {

inline CMatrix draw_ginibre(int n, RandomStream& rng) {
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

// GUE convention: real N(0,1) diagonal, off-diagonal complex with E|z|^2 = 1.
inline CMatrix draw_gue(int n, RandomStream& rng) {
  CMatrix h = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Complex(rng.gaussian(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex z = rng.complex_gaussian();
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

}  // namespace detail

// Seeded random matrix draws; identical (kind, n, seed) always reproduces
// the same matrix.
inline CMatrix random_ensemble(EnsembleKind kind, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_ensemble: n must be >= 1");
  RandomStream rng(seed);
  switch (kind) {
    case EnsembleKind::gue:
      return detail::draw_gue(n, rng);
    case EnsembleKind::ginibre:
      return detail::draw_ginibre(n, rng);
    case EnsembleKind::density: {
      const CMatrix g = detail::draw_ginibre(n, rng);
      CMatrix w = g * g.adjoint();
      return w / w.trace().real();
    }
    case EnsembleKind::normal_matrix: {
      const CMatrix g = detail::draw_ginibre(n, rng);
      Eigen::HouseholderQR<CMatrix> qr(g);
      const CMatrix q = qr.householderQ();
      CVector d(n);
      for (int i = 0; i < n; ++i) d(i) = rng.complex_gaussian();
      return q * d.asDiagonal() * q.adjoint();
    }
    case EnsembleKind::hermitian_contraction: {
      CMatrix h = detail::draw_gue(n, rng);
      const double norm = schatten_norm(h, kInfiniteQ);
      if (norm > 1.0) h /= norm;
      return h;
    }
  }
  throw std::invalid_argument("random_ensemble: unknown kind");
}

}  // namespace schurloewner
