#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "schurloewner/bounds.hpp"
#include "schurloewner/loewner.hpp"
#include "schurloewner/matrixcore.hpp"

namespace schurloewner {

// A certified lower bound on the target norm together with the witness that
// attains it. lower_estimate always equals the objective re-evaluated at the
// witness; no convergence to the true supremum is claimed.
struct EstimateResult {
  double lower_estimate = 0.0;
  std::variant<CMatrix, CVector> witness;
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
};

// ||S_L||_2 = max_{i,j} |L_ij|; exact, not an estimate.
inline double exact_schur_norm_q2(const RMatrix& l) { return l.cwiseAbs().maxCoeff(); }
inline double exact_schur_norm_q2(const LoewnerMatrix& l) { return exact_schur_norm_q2(l.entries()); }

namespace detail {

// ||L o (x x*)||_1 for unit x; Hermitian for symmetric real L.
inline double rank_one_trace_norm(const RMatrix& l, const CVector& x) {
  const Eigen::Index n = l.rows();
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = l(i, j) * x(i) * std::conj(x(j));
  return trace_norm_hermitian(m);
}

struct AscentResult {
  CVector x;
  double value = 0.0;
  int iterations = 0;
};

// Projected finite-difference gradient ascent on the unit sphere.
inline AscentResult sphere_ascent(const RMatrix& l, CVector x, int max_iters) {
  constexpr double kFdStep = 1e-4;
  constexpr double kImprovementTol = 1e-10;
  const Eigen::Index n = x.size();
  x.normalize();
  double value = rank_one_trace_norm(l, x);

  AscentResult out;
  for (int iter = 0; iter < max_iters; ++iter) {
    out.iterations = iter + 1;
    // gradient over the 2n real coordinates
    CVector grad = CVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int part = 0; part < 2; ++part) {
        CVector xp = x;
        xp(i) += part == 0 ? Complex(kFdStep, 0.0) : Complex(0.0, kFdStep);
        const double fp = rank_one_trace_norm(l, xp.normalized());
        const double g = (fp - value) / kFdStep;
        grad(i) += part == 0 ? Complex(g, 0.0) : Complex(0.0, g);
      }
    }
    // project out the radial component
    grad -= x * Complex(grad.dot(x).real(), 0.0);
    const double gnorm = grad.norm();
    if (gnorm < 1e-14) break;
    grad /= gnorm;

    double step = 0.5;
    bool improved = false;
    while (step > 1e-12) {
      const CVector trial = (x + step * grad).normalized();
      const double tv = rank_one_trace_norm(l, trial);
      if (tv > value) {
        improved = tv - value > kImprovementTol;
        x = trial;
        value = tv;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  out.x = x;
  out.value = value;
  return out;
}

}  // namespace detail

// Lower bound on ||S_L|| = ||S_L||_1 = ||S_L||_inf for symmetric L via
// max_x ||L o (x x*)||_1 over unit vectors: multi-start local ascent over
// `restarts` Gaussian starts plus the n basis vectors and the uniform vector.
inline EstimateResult estimate_schur_norm_hermitian(const RMatrix& l, int restarts,
                                                    int max_iters, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("estimate_schur_norm_hermitian: restarts must be >= 1");
  if (l.rows() != l.cols() || l.rows() == 0)
    throw std::invalid_argument("estimate_schur_norm_hermitian: square matrix required");
  const Eigen::Index n = l.rows();

  std::vector<CVector> starts;
  starts.reserve(static_cast<std::size_t>(restarts + n + 1));
  for (int r = 0; r < restarts; ++r) {
    RandomStream rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    CVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.complex_gaussian();
    starts.push_back(x);
  }
  for (Eigen::Index i = 0; i < n; ++i) starts.push_back(CVector::Unit(n, i));
  starts.push_back(CVector::Constant(n, Complex(1.0, 0.0)));

  EstimateResult best;
  best.seed = seed;
  best.restarts = static_cast<int>(starts.size());
  best.lower_estimate = -1.0;
  for (const CVector& s : starts) {
    const auto asc = detail::sphere_ascent(l, s, max_iters);
    best.iterations += asc.iterations;
    if (asc.value > best.lower_estimate) {
      best.lower_estimate = asc.value;
      best.witness = asc.x;
    }
  }
  return best;
}

inline EstimateResult estimate_schur_norm_hermitian(const LoewnerMatrix& l, int restarts,
                                                    int max_iters, std::uint64_t seed) {
  return estimate_schur_norm_hermitian(l.entries(), restarts, max_iters, seed);
}

// Monte-Carlo lower bound on ||S_L||_q: max over sampled Ginibre A
// of ||L o A||_q / ||A||_q.
inline EstimateResult estimate_schur_norm_sampling(const RMatrix& l, double q, int samples,
                                                   std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_schur_norm_sampling: samples must be >= 1");
  const int n = static_cast<int>(l.rows());
  const CMatrix lc = l.cast<Complex>();

  EstimateResult best;
  best.seed = seed;
  best.restarts = samples;
  best.lower_estimate = -1.0;
  for (int k = 0; k < samples; ++k) {
    const CMatrix a = random_ensemble(EnsembleKind::ginibre, n, mix_seed(seed, static_cast<std::uint64_t>(k)));
    const double den = schatten_norm(a, q);
    if (den < 1e-12) continue;
    const double ratio = schatten_norm(schur_product(lc, a), q) / den;
    if (ratio > best.lower_estimate) {
      best.lower_estimate = ratio;
      best.witness = a;
    }
  }
  if (best.lower_estimate < 0)
    throw std::runtime_error("estimate_schur_norm_sampling: all samples degenerate");
  return best;
}

inline EstimateResult estimate_schur_norm_sampling(const LoewnerMatrix& l, double q, int samples,
                                                   std::uint64_t seed) {
  return estimate_schur_norm_sampling(l.entries(), q, samples, seed);
}

// Max over sampled Ginibre A of ||[A, f(B)]||_q / ||[A, B]||_q, skipping
// samples where ||[A, B]||_q is numerically zero.
inline EstimateResult estimate_commutator_ratio(const ScalarFunction& f, const HermitianMatrix& b,
                                                double q, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_commutator_ratio: samples must be >= 1");
  const HermitianMatrix fb = matrix_function(b, f);
  const int n = static_cast<int>(b.dim());

  EstimateResult best;
  best.seed = seed;
  best.restarts = samples;
  best.lower_estimate = -1.0;
  int usable = 0;
  for (int k = 0; k < samples; ++k) {
    const CMatrix a = random_ensemble(EnsembleKind::ginibre, n, mix_seed(seed, static_cast<std::uint64_t>(k)));
    const double den = schatten_norm(commutator(a, b.matrix()), q);
    if (den < 1e-12) continue;
    ++usable;
    const double ratio = schatten_norm(commutator(a, fb.matrix()), q) / den;
    if (ratio > best.lower_estimate) {
      best.lower_estimate = ratio;
      best.witness = a;
    }
  }
  if (usable == 0)
    throw std::runtime_error("estimate_commutator_ratio: every sample had [A,B] ~ 0; is B a multiple of the identity?");
  return best;
}

// Trace norm of (I-Z)^{1/2} Y* (I+Z)^{1/2} for a Hermitian contraction Z.
// Every such value lower-bounds the w* norm of Y.
inline double ando_wstar_witness(const CMatrix& y, const HermitianMatrix& z) {
  require_square(y, "ando_wstar_witness");
  if (y.rows() != z.dim()) throw std::invalid_argument("ando_wstar_witness: dimension mismatch");
  const SpectralDecomposition sd = hermitian_eig(z);
  if (sd.eigenvalues.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw std::invalid_argument("ando_wstar_witness: Z is not a contraction");

  const Eigen::Index n = z.dim();
  RVector minus(n), plus(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    minus(i) = std::sqrt(std::max(0.0, 1.0 - sd.eigenvalues(i)));
    plus(i) = std::sqrt(std::max(0.0, 1.0 + sd.eigenvalues(i)));
  }
  const CMatrix sqrt_minus = sd.eigenvectors * minus.asDiagonal().toDenseMatrix().cast<Complex>() *
                             sd.eigenvectors.adjoint();
  const CMatrix sqrt_plus = sd.eigenvectors * plus.asDiagonal().toDenseMatrix().cast<Complex>() *
                            sd.eigenvectors.adjoint();
  return schatten_norm(sqrt_minus * y.adjoint() * sqrt_plus, 1.0);
}

// Lower bound on the w* norm of Y: max of the Ando witness over sampled
// Hermitian contractions, always including Z = 0 (whose value is ||Y||_1).
inline EstimateResult estimate_wstar_norm(const CMatrix& y, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_wstar_norm: samples must be >= 1");
  const int n = static_cast<int>(y.rows());

  EstimateResult best;
  best.seed = seed;
  best.restarts = samples + 1;
  const HermitianMatrix zero(CMatrix::Zero(n, n));
  best.lower_estimate = ando_wstar_witness(y, zero);
  best.witness = zero.matrix();
  for (int k = 0; k < samples; ++k) {
    const HermitianMatrix z(random_ensemble(EnsembleKind::hermitian_contraction, n,
                                            mix_seed(seed, static_cast<std::uint64_t>(k))));
    const double val = ando_wstar_witness(y, z);
    if (val > best.lower_estimate) {
      best.lower_estimate = val;
      best.witness = z.matrix();
    }
  }
  return best;
}

}  // namespace schurloewner
