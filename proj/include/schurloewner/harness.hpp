#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "schurloewner/json_io.hpp"

namespace schurloewner {

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

// FNV-1a; stable across platforms so case seeds never depend on std::hash.
inline std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline int thread_budget(std::size_t work_items) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SCHURLOEWNER_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(std::min<std::size_t>(hw, work_items));
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const int threads = thread_budget(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

struct CampaignConfig {
  std::vector<std::string> functions;
  std::vector<int> dims;
  std::vector<double> q_values;
  std::string spectra_ensemble = "auto";  // per-function drawing rule
  std::string spectra_file;               // overrides the ensemble when set
  int samples = 200;
  int restarts = 64;
  int max_iters = 500;
  std::uint64_t master_seed = 42;
  double tolerance = 1e-8;

  void validate() const {
    if (functions.empty() || dims.empty() || q_values.empty())
      throw std::invalid_argument("campaign config: functions, dims and q_values must be non-empty");
    if (!(tolerance > 0)) throw std::invalid_argument("campaign config: tolerance must be positive");
    if (samples < 1 || restarts < 1 || max_iters < 1)
      throw std::invalid_argument("campaign config: samples, restarts and max_iters must be >= 1");
  }

  // Grid exercising every bound family; completes in minutes single-threaded.
  static CampaignConfig default_campaign() {
    CampaignConfig cfg;
    cfg.functions = {"identity", "sqrt",      "log",     "abs",
                     "square",   "power:0.5", "power:2", "softplus_conjugate"};
    cfg.dims = {2, 3, 4, 6, 8};
    cfg.q_values = {1.0, 1.5, 2.0, 3.0, kInfiniteQ};
    return cfg;
  }

  json to_json() const {
    json qs = json::array();
    for (double q : q_values) {
      if (std::isinf(q))
        qs.push_back("inf");
      else
        qs.push_back(q);
    }
    json src = spectra_file.empty() ? json{{"ensemble", spectra_ensemble}}
                                    : json{{"file", spectra_file}};
    return json{{"functions", functions},
                {"dims", dims},
                {"q_values", qs},
                {"spectra_source", src},
                {"samples", samples},
                {"restarts", restarts},
                {"max_iters", max_iters},
                {"master_seed", master_seed},
                {"tolerance", tolerance}};
  }

  static CampaignConfig from_json(const json& j) {
    CampaignConfig cfg;
    cfg.functions = j.at("functions").get<std::vector<std::string>>();
    cfg.dims = j.at("dims").get<std::vector<int>>();
    for (const auto& q : j.at("q_values")) cfg.q_values.push_back(parse_q(q));
    if (j.contains("spectra_source")) {
      const auto& src = j.at("spectra_source");
      if (src.contains("file"))
        cfg.spectra_file = src.at("file").get<std::string>();
      else if (src.contains("ensemble"))
        cfg.spectra_ensemble = src.at("ensemble").get<std::string>();
    }
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
    if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<int>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
    cfg.validate();
    return cfg;
  }
};

// Campaign spectra. Functions on (0, inf)-like domains draw log-uniform in
// [0.1, 10]; abs draws uniform in [-2, 2] keeping a 1e-6 margin away from its
// kink; other whole-line functions draw uniform in [-2, 2]; bounded domains
// draw from the inner 80%.
inline Spectrum draw_campaign_spectrum(const ScalarFunction& f, int n, RandomStream& rng) {
  std::vector<double> vals(static_cast<std::size_t>(n));
  const Interval& dom = f.domain();
  for (int i = 0; i < n; ++i) {
    double v;
    if (f.name() == "abs") {
      do {
        v = rng.uniform(-2.0, 2.0);
      } while (std::abs(v) < 1e-6);
    } else if (std::isinf(dom.lo) && std::isinf(dom.hi)) {
      v = rng.uniform(-2.0, 2.0);
    } else if (std::isinf(dom.hi)) {
      v = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    } else {
      const double margin = 0.1 * (dom.hi - dom.lo);
      v = rng.uniform(dom.lo + margin, dom.hi - margin);
    }
    vals[static_cast<std::size_t>(i)] = v;
  }
  return Spectrum(vals);
}

struct CaseRecord {
  std::string function;
  int n = 0;
  double q = 1.0;
  std::vector<double> spectrum;
  BoundReport bound_report;
  std::optional<EstimateResult> hermitian_estimate;
  std::optional<EstimateResult> sampling_estimate;
  std::optional<EstimateResult> ratio_estimate;
  std::optional<double> bound;
  double estimate = 0.0;
  double margin = 0.0;
  bool violation = false;
  std::string error;

  std::string key() const { return function + "|n=" + std::to_string(n) + "|q=" + format_q(q); }

  json to_json() const {
    json rec{{"function", function},
             {"n", n},
             {"q", std::isinf(q) ? json("inf") : json(q)},
             {"spectrum", spectrum},
             {"bound_report", bound_report_to_json(bound_report)},
             {"estimate", estimate},
             {"margin", margin},
             {"violation", violation}};
    rec["bound"] = bound ? json(*bound) : json();
    json est = json::object();
    est["hermitian"] = hermitian_estimate ? estimate_to_json(*hermitian_estimate) : json();
    est["sampling"] = sampling_estimate ? estimate_to_json(*sampling_estimate) : json();
    est["commutator_ratio"] = ratio_estimate ? estimate_to_json(*ratio_estimate) : json();
    rec["estimates"] = std::move(est);
    if (!error.empty()) rec["error"] = error;
    return rec;
  }
};

struct VerificationReport {
  CampaignConfig config;
  std::vector<CaseRecord> records;
  int cases = 0;
  int violations = 0;
  double min_margin = 0.0;

  json to_json() const {
    json recs = json::array();
    for (const auto& r : records) recs.push_back(r.to_json());
    return json{{"provenance",
                 json{{"config", config.to_json()},
                      {"seed", config.master_seed},
                      {"version", kVersion}}},
                {"records", std::move(recs)},
                {"summary",
                 json{{"cases", cases}, {"violations", violations}, {"min_margin", min_margin}}}};
  }
};

// For each (function, n, q): draw a spectrum, build the Loewner matrix,
// evaluate the best bound and every applicable lower-bound estimator, and
// record the margins. Deterministic under master_seed; case errors are
// recorded, never fatal.
inline VerificationReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();

  struct CaseSpec {
    std::string function;
    int n;
    double q;
  };
  std::vector<CaseSpec> specs;
  for (const auto& fname : cfg.functions)
    for (int n : cfg.dims)
      for (double q : cfg.q_values) specs.push_back({fname, n, q});

  std::optional<Spectrum> fixed_spectrum;
  if (!cfg.spectra_file.empty()) fixed_spectrum = read_spectrum_file(cfg.spectra_file);

  std::vector<CaseRecord> records(specs.size());
  detail::parallel_for(specs.size(), [&](std::size_t idx) {
    const CaseSpec& spec = specs[idx];
    CaseRecord& rec = records[idx];
    rec.function = spec.function;
    rec.n = spec.n;
    rec.q = spec.q;
    try {
      const ScalarFunction f = parse_function(spec.function);
      const std::uint64_t case_seed = mix_seed(cfg.master_seed, detail::stable_hash(rec.key()));
      RandomStream rng(case_seed);

      const Spectrum s = fixed_spectrum ? *fixed_spectrum
                                        : draw_campaign_spectrum(f, spec.n, rng);
      rec.spectrum = s.values();
      const LoewnerMatrix l = build_loewner(f, s);
      rec.bound_report = best_bound(f, s, spec.q);
      rec.bound = rec.bound_report.best_at(spec.q);

      rec.sampling_estimate =
          estimate_schur_norm_sampling(l, spec.q, cfg.samples, mix_seed(case_seed, 1));

      // conjugate by a random unitary so the ratio path exercises a full
      // eigenbasis rather than an already-diagonal B
      const CMatrix g = random_ensemble(EnsembleKind::ginibre, s.size(), mix_seed(case_seed, 2));
      Eigen::HouseholderQR<CMatrix> qr(g);
      const CMatrix u = qr.householderQ();
      RVector d(s.size());
      for (int i = 0; i < s.size(); ++i) d(i) = s[i];
      const HermitianMatrix b(u * d.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint());
      rec.ratio_estimate =
          estimate_commutator_ratio(f, b, spec.q, cfg.samples, mix_seed(case_seed, 3));

      if (spec.q == 1.0 || std::isinf(spec.q))
        rec.hermitian_estimate =
            estimate_schur_norm_hermitian(l, cfg.restarts, cfg.max_iters, mix_seed(case_seed, 4));

      rec.estimate = 0.0;
      for (const auto& e : {rec.hermitian_estimate, rec.sampling_estimate, rec.ratio_estimate})
        if (e) rec.estimate = std::max(rec.estimate, e->lower_estimate);

      if (rec.bound) {
        rec.margin = *rec.bound - rec.estimate;
        rec.violation = rec.margin < -cfg.tolerance * std::max(1.0, *rec.bound);
      } else {
        rec.error = rec.bound_report.diagnostic.empty() ? "no applicable bound"
                                                        : rec.bound_report.diagnostic;
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });

  std::sort(records.begin(), records.end(),
            [](const CaseRecord& a, const CaseRecord& b) { return a.key() < b.key(); });

  VerificationReport report;
  report.config = cfg;
  report.records = std::move(records);
  report.cases = static_cast<int>(report.records.size());
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : report.records) {
    if (r.violation) ++report.violations;
    if (r.bound) min_margin = std::min(min_margin, r.margin);
  }
  report.min_margin = std::isfinite(min_margin) ? min_margin : 0.0;
  return report;
}

// ---------------------------------------------------------------------------
// Worked demos
// ---------------------------------------------------------------------------

struct DemoAbsReport {
  int n = 0, r = 0, trials = 0;
  double bound = 0.0;
  double min_schur_estimate = 0.0;
  double max_schur_estimate = 0.0;
  double max_ratio_estimate = 0.0;
  bool any_violation = false;
  // n = 2, r = 1 only: the norm estimates fall in the [1, sqrt(2)] band
  std::optional<bool> band_ok;

  json to_json() const {
    json out{{"n", n},
             {"r", r},
             {"trials", trials},
             {"bound", bound},
             {"min_schur_estimate", min_schur_estimate},
             {"max_schur_estimate", max_schur_estimate},
             {"max_ratio_estimate", max_ratio_estimate},
             {"any_violation", any_violation}};
    if (band_ok) {
      out["band"] = json{{"lo", 1.0}, {"hi", std::sqrt(2.0)}, {"all_estimates_inside", *band_ok}};
    }
    return out;
  }
};

inline Spectrum draw_signed_spectrum(int n, int r, RandomStream& rng) {
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double mag = rng.uniform(0.1, 2.0);
    vals[static_cast<std::size_t>(i)] = i < r ? mag : -mag;
  }
  return Spectrum(vals);
}

// |x| at spectra with exactly r positive eigenvalues: estimates stay below
// 3 + 2 phi^{-1} min(r, n-r); at n=2, r=1 the Schur-norm estimates realize
// the [1, sqrt(2)] band.
inline DemoAbsReport demo_abs(int n, int r, std::uint64_t seed, int trials = 50,
                              int restarts = 32, int samples = 50) {
  if (n < 1 || r < 0 || r > n) throw std::invalid_argument("demo_abs: need 0 <= r <= n");
  const ScalarFunction f = catalog::abs_fn();
  DemoAbsReport rep;
  rep.n = n;
  rep.r = r;
  rep.trials = trials;
  rep.bound = bound_abs(n, r);
  rep.min_schur_estimate = std::numeric_limits<double>::infinity();
  bool band_ok = true;

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(t));
    RandomStream rng(trial_seed);
    const Spectrum s = draw_signed_spectrum(n, r, rng);
    const LoewnerMatrix l = build_loewner(f, s);

    const EstimateResult schur =
        estimate_schur_norm_hermitian(l, restarts, 300, mix_seed(trial_seed, 1));
    rep.min_schur_estimate = std::min(rep.min_schur_estimate, schur.lower_estimate);
    rep.max_schur_estimate = std::max(rep.max_schur_estimate, schur.lower_estimate);
    if (schur.lower_estimate > rep.bound * (1.0 + 1e-8)) rep.any_violation = true;
    if (schur.lower_estimate < 1.0 - 1e-9 || schur.lower_estimate > std::sqrt(2.0) + 1e-6)
      band_ok = false;

    if (r > 0 && r < n) {
      RVector d(n);
      for (int i = 0; i < n; ++i) d(i) = s[i];
      const HermitianMatrix b(d.asDiagonal().toDenseMatrix().cast<Complex>());
      for (double q : {1.0, 2.0, kInfiniteQ}) {
        const EstimateResult ratio =
            estimate_commutator_ratio(f, b, q, samples, mix_seed(trial_seed, 2));
        rep.max_ratio_estimate = std::max(rep.max_ratio_estimate, ratio.lower_estimate);
        if (ratio.lower_estimate > rep.bound * (1.0 + 1e-8)) rep.any_violation = true;
      }
    }
  }
  if (n == 2 && r == 1) rep.band_ok = band_ok;
  return rep;
}

struct DemoEntropyLogitReport {
  int n = 0, samples = 0, used = 0, skipped_degenerate = 0;
  double phi = golden_ratio();
  double max_ratio = 0.0;          // ||[A, log C]||_1 / ||[A, logit(C)]||_1
  double max_composed_bound = 0.0;
  double min_composed_margin = 0.0;
  bool any_violation = false;

  json to_json() const {
    return json{{"n", n},
                {"samples", samples},
                {"used", used},
                {"skipped_degenerate", skipped_degenerate},
                {"phi", phi},
                {"max_ratio", max_ratio},
                {"max_composed_bound", max_composed_bound},
                {"min_composed_margin", min_composed_margin},
                {"any_violation", any_violation}};
  }
};

// ||[A, log C]||_1 <= phi ||[A, log C - log(I - C)]||_1 on random density
// matrices, with the tighter spectrum-dependent composed bound alongside.
inline DemoEntropyLogitReport demo_entropy_logit(int n, int samples, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("demo_entropy_logit: n must be >= 2");
  if (samples < 1) throw std::invalid_argument("demo_entropy_logit: samples must be >= 1");
  const ScalarFunction log_fn = catalog::log_fn();
  const ScalarFunction logit_fn = catalog::logit();

  DemoEntropyLogitReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.min_composed_margin = std::numeric_limits<double>::infinity();

  for (int t = 0; t < samples; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(t));
    // resample while an eigenvalue of C sits on the log/logit domain edge
    HermitianMatrix c(CMatrix::Identity(n, n));
    SpectralDecomposition sd;
    bool found = false;
    for (int attempt = 0; attempt < 32 && !found; ++attempt) {
      c = HermitianMatrix(
          random_ensemble(EnsembleKind::density, n, mix_seed(trial_seed, 100 + static_cast<std::uint64_t>(attempt))));
      sd = hermitian_eig(c);
      found = sd.eigenvalues.minCoeff() > 1e-10 && sd.eigenvalues.maxCoeff() < 1.0 - 1e-10;
    }
    if (!found) {
      ++rep.skipped_degenerate;
      continue;
    }

    const HermitianMatrix log_c = matrix_function(c, log_fn);
    const HermitianMatrix logit_c = matrix_function(c, logit_fn);
    const CMatrix a = random_ensemble(EnsembleKind::ginibre, n, mix_seed(trial_seed, 1));
    const double rhs = schatten_norm(commutator(a, logit_c.matrix()), 1.0);
    if (rhs < 1e-12) {
      ++rep.skipped_degenerate;  // C ~ I/n: scalar matrices commute with everything
      continue;
    }
    const double lhs = schatten_norm(commutator(a, log_c.matrix()), 1.0);
    const double ratio = lhs / rhs;
    ++rep.used;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (lhs > rep.phi * rhs * (1.0 + 1e-8)) rep.any_violation = true;

    const double composed = bound_composed_ratio(log_fn, logit_fn, Spectrum(sd.eigenvalues));
    rep.max_composed_bound = std::max(rep.max_composed_bound, composed);
    rep.min_composed_margin = std::min(rep.min_composed_margin, composed - ratio);
    if (ratio > composed * (1.0 + 1e-8)) rep.any_violation = true;
  }
  if (!std::isfinite(rep.min_composed_margin)) rep.min_composed_margin = 0.0;
  return rep;
}

struct DemoTriangularReport {
  std::vector<int> dims;
  std::vector<double> sampling_estimates;     // strictly upper all-ones mask
  std::vector<double> symmetrized_estimates;  // hollow symmetric all-ones mask
  bool monotone = true;

  json to_json() const {
    return json{{"dims", dims},
                {"sampling_estimates", sampling_estimates},
                {"symmetrized_estimates", symmetrized_estimates},
                {"monotone", monotone}};
  }
};

// Triangular-truncation growth: Schur norm estimates of the strictly upper
// all-ones mask are non-decreasing in n. The best witness at each size is
// zero-padded and re-used at the next size, so monotonicity is structural
// (the masks nest), not a sampling accident.
inline DemoTriangularReport demo_triangular(const std::vector<int>& dims, int samples,
                                            std::uint64_t seed, int restarts = 32) {
  if (dims.empty()) throw std::invalid_argument("demo_triangular: dims must be non-empty");
  for (std::size_t i = 0; i + 1 < dims.size(); ++i)
    if (dims[i + 1] <= dims[i]) throw std::invalid_argument("demo_triangular: dims must be ascending");

  DemoTriangularReport rep;
  rep.dims = dims;

  CMatrix carried_a;   // best sampling witness from the previous size
  CVector carried_x;   // best ascent witness from the previous size
  double prev_sampling = -1.0, prev_symmetrized = -1.0;

  for (std::size_t di = 0; di < dims.size(); ++di) {
    const int n = dims[di];
    RMatrix upper = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) upper(i, j) = 1.0;
    const RMatrix symmetrized = upper + upper.transpose();

    EstimateResult samp = estimate_schur_norm_sampling(
        upper, kInfiniteQ, samples, mix_seed(seed, static_cast<std::uint64_t>(di)));
    if (carried_a.rows() > 0) {
      CMatrix padded = CMatrix::Zero(n, n);
      padded.topLeftCorner(carried_a.rows(), carried_a.cols()) = carried_a;
      const double den = schatten_norm(padded, kInfiniteQ);
      if (den > 1e-12) {
        const double val = schatten_norm(schur_product(upper.cast<Complex>(), padded), kInfiniteQ) / den;
        if (val > samp.lower_estimate) {
          samp.lower_estimate = val;
          samp.witness = padded;
        }
      }
    }
    carried_a = std::get<CMatrix>(samp.witness);

    EstimateResult herm = estimate_schur_norm_hermitian(
        symmetrized, restarts, 300, mix_seed(seed, 1000 + static_cast<std::uint64_t>(di)));
    if (carried_x.size() > 0) {
      CVector padded = CVector::Zero(n);
      padded.head(carried_x.size()) = carried_x;
      const double val = detail::rank_one_trace_norm(symmetrized, padded.normalized());
      if (val > herm.lower_estimate) {
        herm.lower_estimate = val;
        herm.witness = padded;
      }
    }
    carried_x = std::get<CVector>(herm.witness);

    rep.sampling_estimates.push_back(samp.lower_estimate);
    rep.symmetrized_estimates.push_back(herm.lower_estimate);
    if (samp.lower_estimate < prev_sampling - 1e-9 || herm.lower_estimate < prev_symmetrized - 1e-9)
      rep.monotone = false;
    prev_sampling = samp.lower_estimate;
    prev_symmetrized = herm.lower_estimate;
  }
  return rep;
}

}  // namespace schurloewner
