// Acceptance suite: one pass/fail line per criterion. Exits non-zero if any
// criterion fails. Runs single-threaded (SCHURLOEWNER_THREADS=1) so the
// soundness-sweep timing is measured against its stated budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "schurloewner/schurloewner.hpp"

using namespace schurloewner;

namespace {

int g_failures = 0;

template <typename Fn>
void criterion(int number, const char* title, Fn&& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    detail = body();
    ok = true;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %d. %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, title, secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void require(bool cond, const std::string& message) {
  if (!cond) throw std::runtime_error(message);
}

std::string g_campaign_dump;  // shared between criteria 1 and 9

const std::vector<ScalarFunction>& shaped_catalog() {
  static const std::vector<ScalarFunction> fs = {
      catalog::sqrt_fn(),   catalog::log_fn(),  catalog::power(0.5),
      catalog::power(2.0),  catalog::square(),  catalog::abs_fn(),
      catalog::softplus_conjugate(), catalog::x_over_1px(), catalog::xlogx()};
  return fs;
}

}  // namespace

int main() {
  setenv("SCHURLOEWNER_THREADS", "1", 1);
  std::printf("schurloewner acceptance suite (single-threaded)\n");

  criterion(1, "Soundness sweep: default campaign, zero violations, under 10 minutes", [] {
    const auto start = std::chrono::steady_clock::now();
    const VerificationReport rep = run_campaign(CampaignConfig::default_campaign());
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g_campaign_dump = rep.to_json().dump();
    for (const auto& rec : rep.records)
      require(rec.error.empty(), "case error at " + rec.key() + ": " + rec.error);
    require(rep.violations == 0,
            "violations: " + std::to_string(rep.violations) +
                ", min margin " + std::to_string(rep.min_margin));
    require(secs <= 600.0, "runtime " + std::to_string(secs) + "s exceeds 600s");
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d cases, min margin %.3g, %.1fs", rep.cases,
                  rep.min_margin, secs);
    return std::string(buf);
  });

  criterion(2, "Exact q=2: max |L_ij| equals max(|f'(b_1)|, |f'(b_n)|) to 1e-12", [] {
    RandomStream rng(20202);
    const auto& fs = shaped_catalog();
    int cases = 0;
    double worst = 0.0;
    while (cases < 500) {
      const ScalarFunction& f = fs[static_cast<std::size_t>(cases) % fs.size()];
      const int n = 2 + static_cast<int>(rng.uniform() * 7);
      const Spectrum s = draw_campaign_spectrum(f, n, rng);
      const LoewnerMatrix l = build_loewner(f, s);
      const double frob = bound_frobenius(f, s);
      const double exact = exact_schur_norm_q2(l);
      require(exact <= frob + 1e-12, "max|L_ij| exceeds the endpoint bound for " + f.name());
      worst = std::max(worst, std::abs(exact - frob));
      require(std::abs(exact - frob) <= 1e-12,
              "equality violated for " + f.name() + ": gap " + std::to_string(exact - frob));
      ++cases;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "500 cases, worst |gap| %.2e", worst);
    return std::string(buf);
  });

  criterion(3, "Operator monotone: PSD Loewner and the estimator reaches f'(b_1)", [] {
    RandomStream rng(30303);
    const std::vector<ScalarFunction> fs = {catalog::sqrt_fn(), catalog::log_fn(),
                                            catalog::x_over_1px(), catalog::power(0.5)};
    double worst_eig = 0.0, worst_gap = 0.0;
    for (int t = 0; t < 100; ++t) {
      const ScalarFunction& f = fs[static_cast<std::size_t>(t) % fs.size()];
      const int n = 2 + static_cast<int>(rng.uniform() * 7);
      std::vector<double> vals(static_cast<std::size_t>(n));
      for (double& v : vals) v = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      const Spectrum s(vals);
      const LoewnerMatrix l = build_loewner(f, s);
      const auto [psd, lam_min] = psd_check(l, 1e-9);
      require(psd, "Loewner matrix of " + f.name() + " not PSD: lambda_min " +
                       std::to_string(lam_min));
      worst_eig = std::min(worst_eig, lam_min);
      const EstimateResult est =
          estimate_schur_norm_hermitian(l, 64, 500, 5000 + static_cast<std::uint64_t>(t));
      const double target = f.derivative(s.min());
      worst_gap = std::max(worst_gap, std::abs(est.lower_estimate - target));
      require(std::abs(est.lower_estimate - target) <= 1e-6,
              f.name() + ": estimator " + std::to_string(est.lower_estimate) + " vs f'(b_1) " +
                  std::to_string(target));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "100 cases, worst lambda_min %.1e, worst gap %.1e", worst_eig,
                  worst_gap);
    return std::string(buf);
  });

  criterion(4, "Golden-ratio recursion: below the closed form; k=(1,0) gives phi", [] {
    const double phi_gap =
        std::abs(bound_standardized_recursive(std::vector<double>{1.0, 0.0}) - 1.6180339887498949);
    require(phi_gap <= 1e-10, "k=(1,0) recursion off phi by " + std::to_string(phi_gap));
    RandomStream rng(40404);
    for (int t = 0; t < 1000; ++t) {
      const int n = 2 + static_cast<int>(rng.uniform() * 11);
      std::vector<double> k(static_cast<std::size_t>(n));
      k.front() = 1.0;
      k.back() = 0.0;
      for (int j = 1; j + 1 < n; ++j) k[static_cast<std::size_t>(j)] = rng.uniform();
      std::sort(k.begin(), k.end(), std::greater<double>());
      require(bound_standardized_recursive(k) <= bound_standardized_closed(k) + 1e-9,
              "recursive exceeded closed at trial " + std::to_string(t));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "1000 sequences, phi gap %.1e", phi_gap);
    return std::string(buf);
  });

  criterion(5, "Absolute value: signature bound holds; n=2 estimates in [1, sqrt(2)]", [] {
    const ScalarFunction f = catalog::abs_fn();
    for (int n = 2; n <= 6; ++n) {
      for (int r = 0; r <= n; ++r) {
        const double cap = bound_abs(n, r);
        for (int t = 0; t < 4; ++t) {
          const std::uint64_t seed = mix_seed(505, static_cast<std::uint64_t>(n * 100 + r * 10 + t));
          RandomStream rng(seed);
          const Spectrum s = draw_signed_spectrum(n, r, rng);
          const LoewnerMatrix l = build_loewner(f, s);
          const EstimateResult herm = estimate_schur_norm_hermitian(l, 32, 300, seed + 1);
          require(herm.lower_estimate <= cap * (1.0 + 1e-8),
                  "hermitian estimate exceeds the signature bound at n=" + std::to_string(n) +
                      " r=" + std::to_string(r));
          RVector d(n);
          for (int i = 0; i < n; ++i) d(i) = s[i];
          const HermitianMatrix b(d.asDiagonal().toDenseMatrix().cast<Complex>());
          for (double q : {1.0, 2.0, kInfiniteQ}) {
            const EstimateResult ratio = estimate_commutator_ratio(f, b, q, 40, seed + 2);
            require(ratio.lower_estimate <= cap * (1.0 + 1e-8),
                    "commutator ratio exceeds the signature bound at n=" + std::to_string(n) +
                        " r=" + std::to_string(r));
          }
        }
      }
    }
    // n=2, r=1 band: every Schur-norm estimate falls in [1, sqrt(2)]
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const std::uint64_t seed = mix_seed(515, static_cast<std::uint64_t>(t));
      RandomStream rng(seed);
      const Spectrum s = draw_signed_spectrum(2, 1, rng);
      const LoewnerMatrix l = build_loewner(f, s);
      const EstimateResult est = estimate_schur_norm_hermitian(l, 8, 200, seed + 1);
      lo = std::min(lo, est.lower_estimate);
      hi = std::max(hi, est.lower_estimate);
      require(est.lower_estimate >= 1.0 - 1e-9 &&
                  est.lower_estimate <= std::sqrt(2.0) + 1e-6,
              "estimate " + std::to_string(est.lower_estimate) + " outside [1, sqrt(2)]");
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "band over 1000 draws: [%.9f, %.9f]", lo, hi);
    return std::string(buf);
  });

  criterion(6, "Entropy/logit: ||[A, log C]||_1 <= phi ||[A, logit C]||_1 on 500 draws", [] {
    const double phi = golden_ratio();
    double max_ratio = 0.0;
    int done = 0;
    std::uint64_t t = 0;
    while (done < 500) {
      const int n = 2 + static_cast<int>(t % 7);
      const std::uint64_t seed = mix_seed(606, t++);
      HermitianMatrix c(CMatrix::Identity(n, n));
      bool usable = false;
      for (std::uint64_t attempt = 0; attempt < 16 && !usable; ++attempt) {
        c = HermitianMatrix(random_ensemble(EnsembleKind::density, n, mix_seed(seed, attempt)));
        const SpectralDecomposition sd = hermitian_eig(c);
        usable = sd.eigenvalues.minCoeff() > 1e-10 && sd.eigenvalues.maxCoeff() < 1.0 - 1e-10;
      }
      if (!usable) continue;
      const CMatrix a = random_ensemble(EnsembleKind::ginibre, n, seed + 17);
      const double rhs =
          schatten_norm(commutator(a, matrix_function(c, catalog::logit()).matrix()), 1.0);
      if (rhs < 1e-12) continue;
      const double lhs =
          schatten_norm(commutator(a, matrix_function(c, catalog::log_fn()).matrix()), 1.0);
      require(lhs <= phi * rhs * (1.0 + 1e-8),
              "ratio " + std::to_string(lhs / rhs) + " exceeds phi at n=" + std::to_string(n));
      max_ratio = std::max(max_ratio, lhs / rhs);
      ++done;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "500 draws, max ratio %.6f < phi", max_ratio);
    return std::string(buf);
  });

  criterion(7, "w* theorem: Ando witnesses never exceed ||Y||_1 for normal Y", [] {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < 1000; ++t) {
      const int n = 2 + static_cast<int>(t % 5);
      const CMatrix y = random_ensemble(EnsembleKind::normal_matrix, n, mix_seed(707, t));
      const double trace_norm = schatten_norm(y, 1.0);
      const HermitianMatrix z(
          random_ensemble(EnsembleKind::hermitian_contraction, n, mix_seed(708, t)));
      const double witness = ando_wstar_witness(y, z);
      require(witness <= trace_norm * (1.0 + 1e-8),
              "witness " + std::to_string(witness) + " above ||Y||_1 " + std::to_string(trace_norm));
      worst = std::max(worst, witness - trace_norm);
      const double at_zero = ando_wstar_witness(y, HermitianMatrix(CMatrix::Zero(n, n)));
      require(std::abs(at_zero - trace_norm) <= 1e-10 * std::max(1.0, trace_norm),
              "Z=0 witness differs from ||Y||_1 by " + std::to_string(at_zero - trace_norm));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "1000 pairs, worst excess %.1e", worst);
    return std::string(buf);
  });

  criterion(8, "Commutator identity: [A, f(B)] equals U (L o [A~, D]) U* to 1e-9", [] {
    RandomStream rng(80808);
    const auto& fs = shaped_catalog();
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      const ScalarFunction& f = fs[t % fs.size()];
      const int n = 2 + static_cast<int>(rng.uniform() * 7);
      const Spectrum s = draw_campaign_spectrum(f, n, rng);
      Eigen::HouseholderQR<CMatrix> qr(random_ensemble(EnsembleKind::ginibre, n, mix_seed(808, t)));
      const CMatrix u = qr.householderQ();
      RVector d(n);
      for (int i = 0; i < n; ++i) d(i) = s[i];
      const HermitianMatrix b(u * d.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint());
      const CMatrix a = random_ensemble(EnsembleKind::ginibre, n, mix_seed(809, t));

      const SpectralDecomposition sd = hermitian_eig(b);
      const LoewnerMatrix l = build_loewner(f, Spectrum(sd.eigenvalues));
      const CMatrix at = sd.eigenvectors.adjoint() * a * sd.eigenvectors;
      CMatrix dm = CMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) dm(i, i) = sd.eigenvalues(i);
      const CMatrix rebuilt = sd.eigenvectors *
                              schur_product(l.complex_entries(), commutator(at, dm)) *
                              sd.eigenvectors.adjoint();
      const CMatrix direct = commutator(a, matrix_function(b, f).matrix());
      const double err = (rebuilt - direct).cwiseAbs().maxCoeff();
      worst = std::max(worst, err);
      require(err <= 1e-9, f.name() + ": entrywise error " + std::to_string(err));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "200 triples, worst entrywise error %.1e", worst);
    return std::string(buf);
  });

  criterion(9, "Determinism: repeated campaign runs are byte-identical", [] {
    require(!g_campaign_dump.empty(), "criterion 1 must run first");
    const VerificationReport rerun = run_campaign(CampaignConfig::default_campaign());
    require(rerun.to_json().dump() == g_campaign_dump, "reports differ between runs");
    return std::string("two full runs, identical bytes");
  });

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
