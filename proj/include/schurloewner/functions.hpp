#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schurloewner {

// Real interval with independently open or closed ends.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval all() { return {}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval left_closed(double a, double b) { return {a, b, true, false}; }

  bool contains(double x) const {
    if (x < lo || (x == lo && !lo_closed)) return false;
    if (x > hi || (x == hi && !hi_closed)) return false;
    return true;
  }
  bool contains_interior(double x) const { return x > lo && x < hi; }
  // Whether the closed interval [a, b] is a subset.
  bool covers(double a, double b) const { return contains(a) && contains(b); }
};

// Shape metadata, each flag relative to its stated interval.
struct ShapeFlags {
  std::optional<Interval> concave;
  std::optional<Interval> convex;
  std::optional<Interval> operator_monotone;
  std::optional<Interval> increasing;
  bool affine = false;
};

// Named real function with a closed-form derivative. The bound machinery
// consumes f' at eigenvalues, so derivatives are supplied exactly rather
// than by finite differences.
class ScalarFunction {
 public:
  using Fn = std::function<double(double)>;

  ScalarFunction(std::string name, std::vector<double> params, Interval domain,
                 Fn value, Fn deriv, ShapeFlags flags)
      : name_(std::move(name)),
        params_(std::move(params)),
        domain_(domain),
        value_(std::move(value)),
        deriv_(std::move(deriv)),
        flags_(flags) {
    if (flags_.concave && flags_.convex && !flags_.affine)
      throw std::invalid_argument("ScalarFunction '" + name_ +
                                  "': concave and convex flags both set on a non-affine function");
  }

  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  const Interval& domain() const { return domain_; }
  const ShapeFlags& flags() const { return flags_; }

  double evaluate(double x) const {
    if (!domain_.contains(x)) {
      std::ostringstream os;
      os << name_ << ": argument " << x << " outside domain";
      throw std::domain_error(os.str());
    }
    return value_(x);
  }

  double derivative(double x) const {
    if (!domain_.contains_interior(x)) {
      std::ostringstream os;
      os << name_ << ": derivative requested at " << x << ", not in the domain interior";
      throw std::domain_error(os.str());
    }
    return deriv_(x);
  }

  bool concave_on(double a, double b) const {
    return flags_.concave && flags_.concave->covers(a, b);
  }
  bool convex_on(double a, double b) const {
    return flags_.convex && flags_.convex->covers(a, b);
  }
  bool operator_monotone_on(double a, double b) const {
    return flags_.operator_monotone && flags_.operator_monotone->covers(a, b);
  }
  bool increasing_on(double a, double b) const {
    return flags_.increasing && flags_.increasing->covers(a, b);
  }

  // Display name with parameters, e.g. "power:0.5".
  std::string display_name() const {
    std::ostringstream os;
    os << name_;
    for (std::size_t i = 0; i < params_.size(); ++i)
      os << (i == 0 ? ':' : ',') << params_[i];
    return os.str();
  }

 private:
  std::string name_;
  std::vector<double> params_;
  Interval domain_;
  Fn value_, deriv_;
  ShapeFlags flags_;
};

namespace catalog {

inline ScalarFunction identity() {
  ShapeFlags fl;
  fl.concave = fl.convex = fl.operator_monotone = fl.increasing = Interval::all();
  fl.affine = true;
  return {"identity", {}, Interval::all(),
          [](double x) { return x; }, [](double) { return 1.0; }, fl};
}

inline ScalarFunction affine(double slope, double intercept) {
  ShapeFlags fl;
  fl.concave = fl.convex = Interval::all();
  if (slope >= 0) fl.operator_monotone = fl.increasing = Interval::all();
  fl.affine = true;
  return {"affine", {slope, intercept}, Interval::all(),
          [=](double x) { return slope * x + intercept; },
          [=](double) { return slope; }, fl};
}

inline ScalarFunction abs_fn() {
  ShapeFlags fl;
  fl.convex = Interval::all();
  return {"abs", {}, Interval::all(),
          [](double x) { return std::abs(x); },
          [](double x) -> double {
            if (x == 0.0) throw std::domain_error("abs: not differentiable at 0");
            return x > 0 ? 1.0 : -1.0;
          },
          fl};
}

inline ScalarFunction sqrt_fn() {
  ShapeFlags fl;
  const auto pos = Interval::left_closed(0.0, std::numeric_limits<double>::infinity());
  fl.concave = fl.operator_monotone = fl.increasing = pos;
  return {"sqrt", {}, pos,
          [](double x) { return std::sqrt(x); },
          [](double x) -> double {
            if (x <= 0.0) throw std::domain_error("sqrt: derivative unbounded at 0");
            return 0.5 / std::sqrt(x);
          },
          fl};
}

inline ScalarFunction log_fn() {
  ShapeFlags fl;
  const auto pos = Interval::open(0.0, std::numeric_limits<double>::infinity());
  fl.concave = fl.operator_monotone = fl.increasing = pos;
  return {"log", {}, pos,
          [](double x) { return std::log(x); },
          [](double x) { return 1.0 / x; }, fl};
}

// x^p on [0, inf); operator monotone and concave for p in (0,1], convex for p >= 1.
inline ScalarFunction power(double p) {
  if (!(p > 0))
    throw std::invalid_argument("power: exponent must be positive");
  ShapeFlags fl;
  const auto pos = Interval::left_closed(0.0, std::numeric_limits<double>::infinity());
  fl.increasing = pos;
  if (p <= 1.0) {
    fl.concave = fl.operator_monotone = pos;
    if (p == 1.0) {
      fl.convex = pos;
      fl.affine = true;
    }
  } else {
    fl.convex = pos;
  }
  return {"power", {p}, pos,
          [=](double x) { return std::pow(x, p); },
          [=](double x) -> double {
            if (x == 0.0 && p < 1.0)
              throw std::domain_error("power: derivative unbounded at 0");
            return p * std::pow(x, p - 1.0);
          },
          fl};
}

inline ScalarFunction square() {
  ShapeFlags fl;
  fl.convex = Interval::all();
  return {"square", {}, Interval::all(),
          [](double x) { return x * x; }, [](double x) { return 2.0 * x; }, fl};
}

inline ScalarFunction x_over_1px() {
  ShapeFlags fl;
  const auto dom = Interval::open(-1.0, std::numeric_limits<double>::infinity());
  fl.concave = fl.operator_monotone = fl.increasing = dom;
  return {"x_over_1px", {}, dom,
          [](double x) { return x / (1.0 + x); },
          [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }, fl};
}

inline ScalarFunction logit() {
  ShapeFlags fl;
  fl.increasing = Interval::open(0.0, 1.0);
  return {"logit", {}, Interval::open(0.0, 1.0),
          [](double x) { return std::log(x) - std::log1p(-x); },
          [](double x) { return 1.0 / (x * (1.0 - x)); }, fl};
}

// f(x) = x - log(1 + e^x); increasing and concave on all of R.
inline ScalarFunction softplus_conjugate() {
  ShapeFlags fl;
  fl.concave = fl.increasing = Interval::all();
  return {"softplus_conjugate", {}, Interval::all(),
          [](double x) {
            return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
          },
          [](double x) {
            const double e = std::exp(-std::abs(x));
            return x >= 0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
          },
          fl};
}

inline ScalarFunction xlogx() {
  ShapeFlags fl;
  const auto pos = Interval::open(0.0, std::numeric_limits<double>::infinity());
  fl.convex = pos;
  return {"xlogx", {}, pos,
          [](double x) { return x * std::log(x); },
          [](double x) { return std::log(x) + 1.0; }, fl};
}

}  // namespace catalog

// Parses the CLI function syntax name[:param[,param]], e.g. "power:0.5".
inline ScalarFunction parse_function(const std::string& text) {
  std::string name = text;
  std::vector<double> params;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        params.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_function: bad parameter '" + tok + "' in '" + text + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }

  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument("parse_function: '" + name + "' expects " +
                                  std::to_string(k) + " parameter(s)");
  };
  if (name == "identity") { need(0); return catalog::identity(); }
  if (name == "affine") { need(2); return catalog::affine(params[0], params[1]); }
  if (name == "abs") { need(0); return catalog::abs_fn(); }
  if (name == "sqrt") { need(0); return catalog::sqrt_fn(); }
  if (name == "log") { need(0); return catalog::log_fn(); }
  if (name == "power") { need(1); return catalog::power(params[0]); }
  if (name == "square" || name == "x^2") { need(0); return catalog::square(); }
  if (name == "x_over_1px" || name == "x/(1+x)") { need(0); return catalog::x_over_1px(); }
  if (name == "logit") { need(0); return catalog::logit(); }
  if (name == "softplus_conjugate") { need(0); return catalog::softplus_conjugate(); }
  if (name == "xlogx") { need(0); return catalog::xlogx(); }
  throw std::invalid_argument("parse_function: unknown function '" + name + "'");
}

// Numerically corroborates declared shape flags on a uniform grid.
struct ShapeCheckReport {
  bool concave_checked = false;
  bool convex_checked = false;
  bool increasing_checked = false;
  bool pass = true;
  double worst_violation = 0.0;
  int worst_index = -1;
};

inline ShapeCheckReport shape_check(const ScalarFunction& f, double a, double b,
                                    int grid_size) {
  if (grid_size < 3) throw std::invalid_argument("shape_check: grid_size must be >= 3");
  if (!f.domain().covers(a, b) && !(f.domain().contains_interior(a) && f.domain().contains_interior(b)))
    throw std::domain_error("shape_check: interval not inside the function domain");

  ShapeCheckReport rep;
  const double h = (b - a) / (grid_size - 1);
  std::vector<double> y(grid_size);
  for (int i = 0; i < grid_size; ++i) y[i] = f.evaluate(a + i * h);

  auto record = [&](double violation, int idx) {
    if (violation > rep.worst_violation) {
      rep.worst_violation = violation;
      rep.worst_index = idx;
    }
    if (violation > 1e-9 * std::max(1.0, std::abs(y[idx]))) rep.pass = false;
  };

  if (f.concave_on(a, b)) {
    rep.concave_checked = true;
    for (int i = 1; i + 1 < grid_size; ++i)
      record(y[i - 1] - 2 * y[i] + y[i + 1], i);  // second difference must be <= 0
  }
  if (f.convex_on(a, b)) {
    rep.convex_checked = true;
    for (int i = 1; i + 1 < grid_size; ++i)
      record(-(y[i - 1] - 2 * y[i] + y[i + 1]), i);
  }
  if (f.increasing_on(a, b)) {
    rep.increasing_checked = true;
    for (int i = 0; i + 1 < grid_size; ++i)
      record(y[i] - y[i + 1], i);
  }
  return rep;
}

}  // namespace schurloewner
