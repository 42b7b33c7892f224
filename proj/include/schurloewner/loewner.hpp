#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schurloewner/matrixcore.hpp"

namespace schurloewner {

// Sorted real eigenvalue list of a Hermitian matrix. The constructor
// canonicalizes to ascending order; every bound downstream assumes it.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("Spectrum: empty");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("Spectrum: non-finite eigenvalue");
    std::sort(values_.begin(), values_.end());
  }
  explicit Spectrum(const RVector& v)
      : Spectrum(std::vector<double>(v.data(), v.data() + v.size())) {}

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Real symmetric divided-difference matrix of f at a spectrum, with f'(b_i)
// on the diagonal.
class LoewnerMatrix {
 public:
  LoewnerMatrix(RMatrix entries, std::string function_name, Spectrum spectrum)
      : entries_(std::move(entries)),
        function_name_(std::move(function_name)),
        spectrum_(std::move(spectrum)) {}

  Eigen::Index dim() const { return entries_.rows(); }
  const RMatrix& entries() const { return entries_; }
  const std::string& function_name() const { return function_name_; }
  const Spectrum& spectrum() const { return spectrum_; }
  CMatrix complex_entries() const { return entries_.cast<Complex>(); }

 private:
  RMatrix entries_;
  std::string function_name_;
  Spectrum spectrum_;
};

// Divided differences (f(b_i)-f(b_j))/(b_i-b_j); gaps below
// deg_tol * max(1,|b_i|,|b_j|) fall back to the midpoint derivative,
// which matches the f'(b_i) diagonal convention in the equal limit.
inline LoewnerMatrix build_loewner(const ScalarFunction& f, const Spectrum& s,
                                   double deg_tol = 1e-10) {
  const int n = s.size();
  RMatrix l(n, n);
  std::vector<double> fv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) fv[static_cast<std::size_t>(i)] = f.evaluate(s[i]);

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double bi = s[i], bj = s[j];
      const double gap = std::abs(bi - bj);
      double value;
      if (gap > deg_tol * std::max({1.0, std::abs(bi), std::abs(bj)}))
        value = (fv[static_cast<std::size_t>(i)] - fv[static_cast<std::size_t>(j)]) / (bi - bj);
      else
        value = f.derivative(0.5 * (bi + bj));
      l(i, j) = value;
      l(j, i) = value;
    }
  }
  return {std::move(l), f.display_name(), s};
}

struct RelationsReport {
  bool pass = true;
  double worst_violation = 0.0;
  int worst_i = -1;
  int worst_j = -1;
};

// Checks the monotone row/column relations satisfied by Loewner matrices of
// concave functions at ascending spectra, plus their consequences
// L_11 >= L_ij >= L_nn.
inline RelationsReport check_relations_R(const LoewnerMatrix& lm, double tol) {
  const RMatrix& l = lm.entries();
  const int n = static_cast<int>(l.rows());
  RelationsReport rep;
  auto record = [&](double violation, int i, int j) {
    if (violation > rep.worst_violation) {
      rep.worst_violation = violation;
      rep.worst_i = i;
      rep.worst_j = j;
    }
    if (violation > tol) rep.pass = false;
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) record(std::abs(l(i, j) - l(j, i)), i, j);

  // rows decrease moving right of the diagonal, columns decrease moving down
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j + 1; k < n; ++k) record(l(i, k) - l(i, j), i, k);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int i = k; i < n; ++i) record(l(k, i) - l(j, i), k, i);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      record(l(i, j) - l(0, 0), i, j);
      record(l(n - 1, n - 1) - l(i, j), i, j);
    }
  return rep;
}

// True iff lambda_min(L) >= -tol; also returns lambda_min.
inline std::pair<bool, double> psd_check(const LoewnerMatrix& lm, double tol) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(lm.entries(), Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues().minCoeff();
  return {lam_min >= -tol, lam_min};
}

}  // namespace schurloewner
