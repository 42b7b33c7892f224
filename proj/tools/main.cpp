// Command-line front end: Loewner construction, bound evaluation, lower-bound
// estimators, verification campaigns and the worked demos. All outputs are
// JSON on stdout or --out. Exit codes: 0 success, 2 any violation, 1 error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "schurloewner/schurloewner.hpp"

namespace sl = schurloewner;

namespace {

void emit(const sl::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << j.dump(2) << "\n";
}

sl::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  sl::json j;
  in >> j;
  return j;
}

double parse_q_arg(const std::string& q) { return sl::parse_q(sl::json(q)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur multiplier norm bounds for Loewner matrices"};
  app.require_subcommand(1);

  std::string function_spec, spectrum_path, matrix_path, config_path, out_path;
  std::string q_arg = "1", method_arg = "closed";
  double deg_tol = 1e-10;
  int samples = 200, restarts = 64, max_iters = 500, trials = 50;
  int dim = 4, positives = 2;
  std::vector<int> dims = {2, 4, 8, 16, 32};
  std::uint64_t seed = 42;

  // loewner build
  auto* loewner_cmd = app.add_subcommand("loewner", "Loewner matrix construction");
  loewner_cmd->require_subcommand(1);
  auto* build_cmd = loewner_cmd->add_subcommand("build", "Build the Loewner matrix of a function at a spectrum");
  build_cmd->add_option("--function", function_spec, "Function spec, e.g. sqrt or power:0.5")->required();
  build_cmd->add_option("--spectrum", spectrum_path, "Spectrum file (CSV, one value per line, or JSON array)")->required();
  build_cmd->add_option("--deg-tol", deg_tol, "Relative gap below which the midpoint derivative is used");
  build_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // bounds compute
  auto* bounds_cmd = app.add_subcommand("bounds", "Upper bound evaluation");
  bounds_cmd->require_subcommand(1);
  auto* compute_cmd = bounds_cmd->add_subcommand("compute", "Evaluate every applicable bound and the best per q");
  compute_cmd->add_option("--function", function_spec, "Function spec")->required();
  compute_cmd->add_option("--spectrum", spectrum_path, "Spectrum file")->required();
  compute_cmd->add_option("--q", q_arg, "Schatten index (number or 'inf')")->required();
  compute_cmd->add_option("--method", method_arg, "closed|recursive for the concave/convex bound")
      ->check(CLI::IsMember({"closed", "recursive"}));
  compute_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // estimate {hermitian|sampling|commutator|wstar}
  auto* estimate_cmd = app.add_subcommand("estimate", "Numerical lower-bound estimators");
  estimate_cmd->require_subcommand(1);
  auto* est_herm = estimate_cmd->add_subcommand("hermitian", "Multi-start ascent for ||S_L|| of a symmetric Loewner matrix");
  est_herm->add_option("--function", function_spec)->required();
  est_herm->add_option("--spectrum", spectrum_path)->required();
  est_herm->add_option("--restarts", restarts);
  est_herm->add_option("--max-iters", max_iters);
  est_herm->add_option("--seed", seed);
  est_herm->add_option("--out", out_path);

  auto* est_samp = estimate_cmd->add_subcommand("sampling", "Monte-Carlo lower bound on ||S_L||_q");
  est_samp->add_option("--function", function_spec)->required();
  est_samp->add_option("--spectrum", spectrum_path)->required();
  est_samp->add_option("--q", q_arg)->required();
  est_samp->add_option("--samples", samples);
  est_samp->add_option("--seed", seed);
  est_samp->add_option("--out", out_path);

  auto* est_comm = estimate_cmd->add_subcommand("commutator", "Sampled commutator norm ratios ||[A,f(B)]||_q/||[A,B]||_q");
  est_comm->add_option("--function", function_spec)->required();
  est_comm->add_option("--matrix", matrix_path, "Hermitian B as matrix JSON")->required();
  est_comm->add_option("--q", q_arg)->required();
  est_comm->add_option("--samples", samples);
  est_comm->add_option("--seed", seed);
  est_comm->add_option("--out", out_path);

  auto* est_wstar = estimate_cmd->add_subcommand("wstar", "Ando-decomposition lower bound on the w* norm");
  est_wstar->add_option("--matrix", matrix_path, "Y as matrix JSON")->required();
  est_wstar->add_option("--samples", samples);
  est_wstar->add_option("--seed", seed);
  est_wstar->add_option("--out", out_path);

  // verify run
  auto* verify_cmd = app.add_subcommand("verify", "Bound-vs-estimator verification campaigns");
  verify_cmd->require_subcommand(1);
  auto* run_cmd = verify_cmd->add_subcommand("run", "Run a campaign and emit the verification report");
  run_cmd->add_option("--config", config_path, "Campaign config JSON (default: built-in campaign)");
  run_cmd->add_option("--out", out_path, "Report file (default stdout)");

  // demo {abs|entropy-logit|triangular}
  auto* demo_cmd = app.add_subcommand("demo", "Worked demonstrations");
  demo_cmd->require_subcommand(1);
  auto* demo_abs_cmd = demo_cmd->add_subcommand("abs", "|x| bound vs estimates by eigenvalue signature");
  demo_abs_cmd->add_option("--n", dim)->required();
  demo_abs_cmd->add_option("--r", positives)->required();
  demo_abs_cmd->add_option("--trials", trials);
  demo_abs_cmd->add_option("--seed", seed);
  demo_abs_cmd->add_option("--out", out_path);

  auto* demo_ent_cmd = demo_cmd->add_subcommand("entropy-logit", "||[A,log C]||_1 <= phi ||[A,logit C]||_1 on density matrices");
  demo_ent_cmd->add_option("--n", dim)->required();
  demo_ent_cmd->add_option("--samples", samples);
  demo_ent_cmd->add_option("--seed", seed);
  demo_ent_cmd->add_option("--out", out_path);

  auto* demo_tri_cmd = demo_cmd->add_subcommand("triangular", "Triangular truncation mask norm growth");
  demo_tri_cmd->add_option("--dims", dims, "Ascending dimensions")->delimiter(',');
  demo_tri_cmd->add_option("--samples", samples);
  demo_tri_cmd->add_option("--seed", seed);
  demo_tri_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build_cmd->parsed()) {
      const auto f = sl::parse_function(function_spec);
      const auto s = sl::read_spectrum_file(spectrum_path);
      emit(sl::loewner_to_json(sl::build_loewner(f, s, deg_tol)), out_path);
      return 0;
    }
    if (compute_cmd->parsed()) {
      const auto f = sl::parse_function(function_spec);
      const auto s = sl::read_spectrum_file(spectrum_path);
      const double q = parse_q_arg(q_arg);
      sl::BoundReport rep = sl::best_bound(f, s, q);
      sl::json j = sl::bound_report_to_json(rep);
      // the per-method concave/convex value for the requested method
      const bool concave = f.concave_on(s.min(), s.max());
      const bool convex = f.convex_on(s.min(), s.max());
      if (concave || convex) {
        const auto method = sl::parse_bound_method(method_arg);
        j["requested_method"] = method_arg;
        j["requested_method_value"] = concave ? sl::bound_concave(f, s, method)
                                              : sl::bound_convex(f, s, method);
      }
      emit(j, out_path);
      return 0;
    }
    if (est_herm->parsed()) {
      const auto f = sl::parse_function(function_spec);
      const auto s = sl::read_spectrum_file(spectrum_path);
      const auto l = sl::build_loewner(f, s);
      emit(sl::estimate_to_json(sl::estimate_schur_norm_hermitian(l, restarts, max_iters, seed)),
           out_path);
      return 0;
    }
    if (est_samp->parsed()) {
      const auto f = sl::parse_function(function_spec);
      const auto s = sl::read_spectrum_file(spectrum_path);
      const auto l = sl::build_loewner(f, s);
      emit(sl::estimate_to_json(
               sl::estimate_schur_norm_sampling(l, parse_q_arg(q_arg), samples, seed)),
           out_path);
      return 0;
    }
    if (est_comm->parsed()) {
      const auto f = sl::parse_function(function_spec);
      const sl::HermitianMatrix b(sl::matrix_from_json(read_json_file(matrix_path)));
      emit(sl::estimate_to_json(
               sl::estimate_commutator_ratio(f, b, parse_q_arg(q_arg), samples, seed)),
           out_path);
      return 0;
    }
    if (est_wstar->parsed()) {
      const sl::CMatrix y = sl::matrix_from_json(read_json_file(matrix_path));
      emit(sl::estimate_to_json(sl::estimate_wstar_norm(y, samples, seed)), out_path);
      return 0;
    }
    if (run_cmd->parsed()) {
      sl::CampaignConfig cfg = config_path.empty()
                                   ? sl::CampaignConfig::default_campaign()
                                   : sl::CampaignConfig::from_json(read_json_file(config_path));
      const sl::VerificationReport report = sl::run_campaign(cfg);
      emit(report.to_json(), out_path);
      std::cerr << "cases: " << report.cases << ", violations: " << report.violations
                << ", min margin: " << report.min_margin << "\n";
      return report.violations > 0 ? 2 : 0;
    }
    if (demo_abs_cmd->parsed()) {
      const sl::DemoAbsReport rep = sl::demo_abs(dim, positives, seed, trials);
      emit(rep.to_json(), out_path);
      return rep.any_violation ? 2 : 0;
    }
    if (demo_ent_cmd->parsed()) {
      const sl::DemoEntropyLogitReport rep = sl::demo_entropy_logit(dim, samples, seed);
      emit(rep.to_json(), out_path);
      return rep.any_violation ? 2 : 0;
    }
    if (demo_tri_cmd->parsed()) {
      const sl::DemoTriangularReport rep = sl::demo_triangular(dims, samples, seed);
      emit(rep.to_json(), out_path);
      return rep.monotone ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
