#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurloewner/loewner.hpp"

namespace schurloewner {

inline double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

// Raised when a bound's shape precondition does not hold for (f, spectrum).
class NotApplicableError : public std::runtime_error {
 public:
  explicit NotApplicableError(const std::string& what) : std::runtime_error(what) {}
};

enum class BoundMethod { closed, recursive };

inline BoundMethod parse_bound_method(const std::string& s) {
  if (s == "closed") return BoundMethod::closed;
  if (s == "recursive") return BoundMethod::recursive;
  throw std::invalid_argument("unknown bound method '" + s + "'");
}

// Operator-monotone bound, valid at every Schatten index: f'(lambda_min(B)).
inline double bound_opmono(const ScalarFunction& f, const Spectrum& s) {
  if (!f.operator_monotone_on(s.min(), s.max()))
    throw NotApplicableError(f.name() + " is not flagged operator monotone on the spectrum interval");
  return f.derivative(s.min());
}

// Frobenius (q=2) bound for concave or convex f: max(|f'(b_1)|, |f'(b_n)|).
inline double bound_frobenius(const ScalarFunction& f, const Spectrum& s) {
  if (!f.concave_on(s.min(), s.max()) && !f.convex_on(s.min(), s.max()))
    throw NotApplicableError(f.name() + " is neither concave nor convex on the spectrum interval");
  return std::max(std::abs(f.derivative(s.min())), std::abs(f.derivative(s.max())));
}

namespace detail {

inline void validate_standardized(std::span<const double> k) {
  const std::size_t n = k.size();
  if (n < 2)
    throw std::invalid_argument("standardized bound: need at least two diagonal values");
  if (std::abs(k[0] - 1.0) > 1e-9 || std::abs(k[n - 1]) > 1e-9)
    throw std::invalid_argument("standardized bound: k must start at 1 and end at 0");
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (k[j + 1] > k[j] + 1e-9)
      throw std::invalid_argument("standardized bound: k must be non-increasing");
}

// The one-step envelope v(a) = a/2 + sqrt(1 + (a/2)^2) from peeling the last
// row and column off a standardized matrix.
inline double v_step(double a) { return 0.5 * a + std::sqrt(1.0 + 0.25 * a * a); }

}  // namespace detail

// Closed-form bound for a standardized concave diagonal (k_1=1, k_n=0):
// 1 + phi^{-1} * sum_j (1 - k_j).
inline double bound_standardized_closed(std::span<const double> k) {
  detail::validate_standardized(k);
  double acc = 0.0;
  for (double kj : k) acc += 1.0 - kj;
  return 1.0 + acc / golden_ratio();
}

// Recursive bound: peel one row/column at a time. a_0 = k_{n-1},
// a_m = (k_{n-m-1} - k_{n-m}) / (1 - k_{n-m}); s anchors at 1 (scalar block)
// and s_m = v(a_m + (1-a_m) s_{m+1}). Never exceeds the closed form, since
// the closed form relaxes v(1+x) - 1 <= 1/phi + x.
inline double bound_standardized_recursive(std::span<const double> k) {
  detail::validate_standardized(k);
  const int n = static_cast<int>(k.size());
  double s = 1.0;
  for (int m = n - 2; m >= 0; --m) {
    double a;
    if (m == 0) {
      a = k[static_cast<std::size_t>(n - 2)];
    } else {
      const double denom = 1.0 - k[static_cast<std::size_t>(n - m - 1)];
      if (denom <= 1e-12) {
        // k_1 = ... = k_{n-m} = 1: the remaining block is all-ones, norm 1
        s = 1.0;
        continue;
      }
      a = (k[static_cast<std::size_t>(n - m - 2)] - k[static_cast<std::size_t>(n - m - 1)]) / denom;
    }
    s = detail::v_step(a + (1.0 - a) * s);
  }
  return s;
}

namespace detail {

// Concave-branch bound from the derivative values of f at an ascending
// spectrum (vals non-increasing). Also serves the convex branch via -f.
inline double concave_bound_from_derivs(std::span<const double> vals, BoundMethod method) {
  const std::size_t n = vals.size();
  const double alpha = vals.front();
  const double beta = vals.back();
  if (alpha - beta <= 1e-12) return std::abs(alpha);  // affine within tolerance

  if (method == BoundMethod::closed) {
    double sum_top = 0.0, sum_bottom = 0.0;
    for (double v : vals) {
      sum_top += alpha - v;
      sum_bottom += v - beta;
    }
    const double inv_phi = 1.0 / golden_ratio();
    return (alpha - beta) +
           std::min(std::abs(beta) + inv_phi * sum_top, std::abs(alpha) + inv_phi * sum_bottom);
  }

  // Standardize twice: once so the diagonal runs 1 -> 0 directly, once on the
  // mirrored spectrum, and keep the smaller resulting bound.
  std::vector<double> kg(n), kh(n);
  for (std::size_t j = 0; j < n; ++j) {
    kg[j] = (vals[j] - beta) / (alpha - beta);
    kh[j] = (alpha - vals[n - 1 - j]) / (alpha - beta);
  }
  const double via_g = std::abs(beta) + (alpha - beta) * bound_standardized_recursive(kg);
  const double via_h = std::abs(alpha) + (alpha - beta) * bound_standardized_recursive(kh);
  return std::min(via_g, via_h);
}

inline std::vector<double> derivative_values(const ScalarFunction& f, const Spectrum& s) {
  std::vector<double> vals(static_cast<std::size_t>(s.size()));
  for (int j = 0; j < s.size(); ++j) vals[static_cast<std::size_t>(j)] = f.derivative(s[j]);
  return vals;
}

}  // namespace detail

// Trace/operator-norm bound for concave f (valid at q in {1, inf}):
// (alpha-beta) + min(|beta| + phi^{-1} sum(alpha - f'(b_j)),
//                    |alpha| + phi^{-1} sum(f'(b_j) - beta)).
inline double bound_concave(const ScalarFunction& f, const Spectrum& s,
                            BoundMethod method = BoundMethod::closed) {
  if (!f.concave_on(s.min(), s.max()))
    throw NotApplicableError(f.name() + " is not flagged concave on the spectrum interval");
  return detail::concave_bound_from_derivs(detail::derivative_values(f, s), method);
}

// Convex branch; evaluated both directly and through the concave bound of -f,
// which must agree.
inline double bound_convex(const ScalarFunction& f, const Spectrum& s,
                           BoundMethod method = BoundMethod::closed) {
  if (!f.convex_on(s.min(), s.max()))
    throw NotApplicableError(f.name() + " is not flagged convex on the spectrum interval");
  std::vector<double> vals = detail::derivative_values(f, s);
  std::vector<double> negated(vals.size());
  for (std::size_t j = 0; j < vals.size(); ++j) negated[j] = -vals[j];
  const double via_negation = detail::concave_bound_from_derivs(negated, method);

  if (method == BoundMethod::closed) {
    const double alpha = vals.front();
    const double beta = vals.back();
    double direct;
    if (beta - alpha <= 1e-12) {
      direct = std::abs(alpha);
    } else {
      double sum_lo = 0.0, sum_hi = 0.0;
      for (double v : vals) {
        sum_lo += v - alpha;
        sum_hi += beta - v;
      }
      const double inv_phi = 1.0 / golden_ratio();
      direct = (beta - alpha) + std::min(std::abs(beta) + inv_phi * sum_lo,
                                         std::abs(alpha) + inv_phi * sum_hi);
    }
    if (std::abs(direct - via_negation) > 1e-12 * std::max(1.0, std::abs(direct)))
      throw std::logic_error("bound_convex: direct and negated-concave routes disagree");
  }
  return via_negation;
}

// Spectrum-free bound when only b_1 <= B <= b_n is known:
// |alpha-beta| (1 + (n-1) phi^{-1}) + min(|alpha|, |beta|).
inline double bound_spectrum_free(const ScalarFunction& f, double b1, double bn, int n) {
  if (n < 1) throw std::invalid_argument("bound_spectrum_free: n must be >= 1");
  if (!f.concave_on(b1, bn) && !f.convex_on(b1, bn))
    throw NotApplicableError(f.name() + " is neither concave nor convex on [b1, bn]");
  const double alpha = f.derivative(b1);
  const double beta = f.derivative(bn);
  return std::abs(alpha - beta) * (1.0 + (n - 1) / golden_ratio()) +
         std::min(std::abs(alpha), std::abs(beta));
}

// Bound for f(x) = |x| at a spectrum with r positive of n eigenvalues.
inline double bound_abs(int n, int r) {
  if (n < 1 || r < 0 || r > n) throw std::invalid_argument("bound_abs: need 0 <= r <= n");
  if (r == 0 || r == n) return 1.0;
  return 3.0 + 2.0 * std::min(r, n - r) / golden_ratio();
}

// Interpolates a q=1 bound and a q=2 bound to other Schatten indices with
// the exponents (2-q, q-1); q > 2 maps to the dual index q' = q/(q-1) first.
inline double interpolate_q(double bound_1, double bound_2, double q) {
  if (bound_1 < 0 || bound_2 < 0)
    throw std::invalid_argument("interpolate_q: bounds must be non-negative");
  if (q <= 1.0 || std::isinf(q)) return bound_1;
  if (q == 2.0) return bound_2;
  const double qq = q > 2.0 ? q / (q - 1.0) : q;
  return std::pow(bound_1, 2.0 - qq) * std::pow(bound_2, qq - 1.0);
}

// Riesz-Thorin exponents (2/q-1, 2-2/q); reported alongside for comparison,
// never asserted against.
inline double interpolate_q_textbook(double bound_1, double bound_2, double q) {
  if (q <= 1.0 || std::isinf(q)) return bound_1;
  if (q == 2.0) return bound_2;
  const double qq = q > 2.0 ? q / (q - 1.0) : q;
  return std::pow(bound_1, 2.0 / qq - 1.0) * std::pow(bound_2, 2.0 - 2.0 / qq);
}

struct BoundRecord {
  std::string id;
  bool applicable = false;
  std::optional<double> value;
  std::string note;
};

struct BoundInputs {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> k_diagonal;  // f'(b_j)
};

struct BoundReport {
  std::string function_name;
  std::vector<double> spectrum;
  std::vector<BoundRecord> bounds;
  std::map<double, double> best_per_q;
  std::map<double, double> interpolation_alternative;  // textbook exponents, diagnostic only
  std::optional<BoundInputs> inputs;
  double phi = golden_ratio();
  std::string diagnostic;

  std::optional<double> best_at(double q) const {
    auto it = best_per_q.find(q);
    if (it == best_per_q.end()) return std::nullopt;
    return it->second;
  }
};

// Evaluates every applicable bound and assembles the minimum per Schatten
// index: opmono everywhere, Frobenius at q=2, the concave/convex recursive
// bound and the spectrum-free fallback at q in {1, inf}, and interpolation
// between the two endpoint minima elsewhere.
inline BoundReport best_bound(const ScalarFunction& f, const Spectrum& s, double q) {
  BoundReport rep;
  rep.function_name = f.display_name();
  rep.spectrum = s.values();

  std::optional<double> opmono, frobenius, endpoint, spectrum_free;

  auto run = [&](const std::string& id, auto&& compute) -> std::optional<double> {
    BoundRecord rec;
    rec.id = id;
    std::optional<double> value;
    try {
      rec.value = compute();
      rec.applicable = true;
      value = rec.value;
    } catch (const NotApplicableError& e) {
      rec.note = e.what();
    } catch (const std::domain_error& e) {
      rec.note = e.what();
    }
    rep.bounds.push_back(rec);
    return value;
  };

  opmono = run("opmono", [&] { return bound_opmono(f, s); });
  frobenius = run("frobenius", [&] { return bound_frobenius(f, s); });

  const bool concave = f.concave_on(s.min(), s.max());
  std::optional<double> shape_closed, shape_recursive;
  if (concave) {
    shape_closed = run("concave_closed", [&] { return bound_concave(f, s, BoundMethod::closed); });
    shape_recursive =
        run("concave_recursive", [&] { return bound_concave(f, s, BoundMethod::recursive); });
  } else {
    shape_closed = run("convex_closed", [&] { return bound_convex(f, s, BoundMethod::closed); });
    shape_recursive =
        run("convex_recursive", [&] { return bound_convex(f, s, BoundMethod::recursive); });
  }
  spectrum_free =
      run("spectrum_free", [&] { return bound_spectrum_free(f, s.min(), s.max(), s.size()); });

  try {
    BoundInputs in;
    in.alpha = f.derivative(s.min());
    in.beta = f.derivative(s.max());
    in.k_diagonal = detail::derivative_values(f, s);
    rep.inputs = in;
  } catch (const std::domain_error&) {
    // endpoint derivative unavailable; the affected bounds are already marked
  }

  auto min_of = [](std::initializer_list<std::optional<double>> xs) -> std::optional<double> {
    std::optional<double> best;
    for (const auto& x : xs)
      if (x && (!best || *x < *best)) best = x;
    return best;
  };

  endpoint = min_of({opmono, shape_recursive, spectrum_free});
  const std::optional<double> best_2 = min_of({frobenius, opmono});
  (void)shape_closed;  // reported in the records; the recursive value is never larger

  if (endpoint) {
    rep.best_per_q[1.0] = *endpoint;
    rep.best_per_q[kInfiniteQ] = *endpoint;
  }
  if (best_2) rep.best_per_q[2.0] = *best_2;
  if (!std::isinf(q) && q != 1.0 && q != 2.0) {
    if (endpoint && best_2) {
      rep.best_per_q[q] = interpolate_q(*endpoint, *best_2, q);
      rep.interpolation_alternative[q] = interpolate_q_textbook(*endpoint, *best_2, q);
    } else if (opmono) {
      rep.best_per_q[q] = *opmono;
    }
  }

  if (rep.best_per_q.empty())
    rep.diagnostic = "no applicable bound: " + f.display_name() +
                     " carries no usable shape flag on the spectrum interval";
  return rep;
}

// Bound on ||[A, h(C)]||_1 / ||[A, g(C)]||_1 for increasing g where
// f = h o g^{-1} is concave: the concave bound evaluated at the transformed
// spectrum b_j = g(c_j) with derivative values (f' o g)(c_j) = h'(c_j)/g'(c_j).
inline double bound_composed_ratio(const ScalarFunction& h, const ScalarFunction& g,
                                   const Spectrum& c) {
  const int n = c.size();
  // corroborate monotonicity of g on a sampled grid over [c_1, c_n]
  constexpr int kGridPoints = 65;
  double prev = -std::numeric_limits<double>::infinity();
  if (c.max() > c.min()) {
    for (int i = 0; i < kGridPoints; ++i) {
      const double x = c.min() + (c.max() - c.min()) * i / (kGridPoints - 1);
      const double y = g.evaluate(x);
      if (y < prev - 1e-12 * std::max(1.0, std::abs(prev)))
        throw std::invalid_argument("bound_composed_ratio: g is not increasing on the spectrum interval");
      prev = y;
    }
  }

  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double gp = g.derivative(c[j]);
    if (!(gp > 0))
      throw std::invalid_argument("bound_composed_ratio: g' must be positive on the spectrum");
    vals[static_cast<std::size_t>(j)] = h.derivative(c[j]) / gp;
  }
  for (std::size_t j = 0; j + 1 < vals.size(); ++j)
    if (vals[j + 1] > vals[j] + 1e-9 * std::max(1.0, std::abs(vals[j])))
      throw std::invalid_argument("bound_composed_ratio: h o g^{-1} is not concave (f' o g must be non-increasing)");

  return detail::concave_bound_from_derivs(vals, BoundMethod::closed);
}

}  // namespace schurloewner
