// Command-line front end; talks to the library exclusively through the
// C API in rrw/rrw.h.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rrw/rrw.h"

namespace {

using nlohmann::json;

const char *error_name(int code) {
  switch (code) {
    case RRW_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case RRW_ERR_EMPTY_DATA: return "EmptyData";
    case RRW_ERR_MALFORMED_INPUT: return "MalformedInput";
    case RRW_ERR_DEGENERATE_WEIGHTS: return "DegenerateWeights";
    case RRW_ERR_SINGULAR: return "Singular";
    case RRW_ERR_TOO_FEW_REPLICATES: return "TooFewReplicates";
    case RRW_ERR_NONFINITE: return "NonFinite";
    case RRW_ERR_IO: return "Io";
    default: return "Internal";
  }
}

[[noreturn]] void fail(int code) {
  std::cerr << "error [" << error_name(code) << "]: " << rrw_last_error()
            << "\n";
  std::exit(1);
}

void check(int code) {
  if (code != RRW_OK) fail(code);
}

struct PathsGuard {
  rrw_paths *p = nullptr;
  ~PathsGuard() { rrw_paths_free(p); }
};

void write_json(const json &j, const std::string &file) {
  std::ofstream out(file);
  if (!out) {
    std::cerr << "error [Io]: cannot open '" << file << "' for writing\n";
    std::exit(1);
  }
  out << j.dump(2) << '\n';
}

json fit_json(const rrw_fit_result &fit, const std::string &method) {
  return json{{"method", method},
              {"theta_hat", {{"alpha", fit.alpha}, {"c", fit.c}}},
              {"objective", fit.objective},
              {"converged", fit.converged != 0},
              {"at_boundary", fit.at_boundary != 0},
              {"diagnostics",
               {{"n_restarts", fit.n_restarts},
                {"skipped_cells", fit.skipped_cells}}},
              {"tool_version", rrw_version()}};
}

// per-experiment covariance estimate Sigma(theta_hat) / N, omitted when the
// information matrix is singular at theta_hat
void attach_covariance(json *j, const rrw_fit_result &fit,
                       const std::string &method, int64_t n_paths,
                       int64_t length) {
  double cov[4];
  int rc;
  if (method == "wlse") {
    rc = rrw_wlse_covariance(fit.alpha, fit.c, length, RRW_WEIGHT_OCCUPANCY,
                             cov);
  } else {
    double info[4];
    rc = rrw_fisher_info(fit.alpha, fit.c, length, info, cov);
  }
  if (rc != RRW_OK) return;
  const double n = static_cast<double>(n_paths);
  (*j)["covariance"] = {{cov[0] / n, cov[1] / n}, {cov[2] / n, cov[3] / n}};
}

int cmd_simulate(double alpha, double c, int64_t n_paths, int64_t length,
                 uint64_t seed, const std::string &out) {
  PathsGuard g;
  check(rrw_paths_simulate(alpha, c, n_paths, length, seed, &g.p));
  check(rrw_paths_write_csv(g.p, out.c_str()));
  std::cout << "wrote " << n_paths << " paths of length " << length << " to "
            << out << "\n";
  return 0;
}

int cmd_fit(const std::string &input, const std::string &method,
            bool symmetrized, const std::vector<double> &box_vals,
            double fix_c, const std::string &out) {
  PathsGuard g;
  check(rrw_paths_read_csv(input.c_str(), &g.p));
  rrw_box box;
  const rrw_box *boxp = nullptr;
  if (!box_vals.empty()) {
    box = {box_vals[0], box_vals[1], box_vals[2], box_vals[3]};
    boxp = &box;
  }
  rrw_fit_result fit;
  check(rrw_fit(g.p, method.c_str(), symmetrized ? 1 : 0, fix_c, boxp,
                nullptr, &fit));
  std::printf("%s estimate: alpha = %.6g, c = %.6g (objective %.6g%s%s)\n",
              method.c_str(), fit.alpha, fit.c, fit.objective,
              fit.converged ? "" : ", not converged",
              fit.at_boundary ? ", at box boundary" : "");
  if (!out.empty()) {
    json j = fit_json(fit, method);
    if (fix_c > 0.0) j["fixed_c"] = fix_c;
    attach_covariance(&j, fit, method, rrw_paths_count(g.p),
                      rrw_paths_length(g.p));
    write_json(j, out);
  }
  return 0;
}

int cmd_fisher(double alpha, double c, int64_t length, int64_t n_paths) {
  double info[4], inv[4];
  check(rrw_fisher_info(alpha, c, length, info, inv));
  std::printf("Fisher information I_n (n = %lld):\n",
              static_cast<long long>(length));
  std::printf("  [ %.10g  %.10g ]\n  [ %.10g  %.10g ]\n", info[0], info[1],
              info[2], info[3]);
  std::printf("inverse:\n  [ %.10g  %.10g ]\n  [ %.10g  %.10g ]\n", inv[0],
              inv[1], inv[2], inv[3]);
  const double n = static_cast<double>(n_paths);
  std::printf("sigma/sqrt(N) at N = %lld: alpha %.6g, c %.6g\n",
              static_cast<long long>(n_paths), std::sqrt(inv[0] / n),
              std::sqrt(inv[3] / n));
  return 0;
}

int cmd_bootstrap(const std::string &input, const std::string &method,
                  bool symmetrized, int64_t b, double level, uint64_t seed,
                  const std::string &out, const std::string &replicates_out) {
  PathsGuard g;
  check(rrw_paths_read_csv(input.c_str(), &g.p));
  rrw_fit_result fit;
  rrw_interval ci;
  check(rrw_bootstrap_ci(g.p, method.c_str(), symmetrized ? 1 : 0, b, level,
                         seed, nullptr, nullptr, &fit, &ci,
                         replicates_out.empty() ? nullptr
                                                : replicates_out.c_str()));
  std::printf("%s estimate: alpha = %.6g, c = %.6g\n", method.c_str(),
              fit.alpha, fit.c);
  std::printf("pivotal %g%% intervals: alpha (%.6g, %.6g), c (%.6g, %.6g)\n",
              100.0 * level, ci.alpha_lo, ci.alpha_hi, ci.c_lo, ci.c_hi);
  if (ci.clipped) std::printf("note: an endpoint was clipped at 0\n");
  if (!out.empty()) {
    json j = fit_json(fit, method);
    j["seed"] = seed;
    j["ci"] = {{"alpha", {ci.alpha_lo, ci.alpha_hi}},
               {"c", {ci.c_lo, ci.c_hi}},
               {"level", ci.level},
               {"kind", "pivotal"}};
    j["diagnostics"]["replicates"] = ci.replicates;
    j["diagnostics"]["clipped"] = ci.clipped != 0;
    j["diagnostics"]["boundary_hits"] = ci.boundary_hits;
    write_json(j, out);
  }
  return 0;
}

int cmd_study(const std::string &kind, const std::string &config,
              const std::string &out_dir) {
  check(rrw_study_run(kind.c_str(), config.c_str(), out_dir.c_str()));
  std::cout << "wrote " << kind << " report to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"reinforced random walk simulation and estimation"};
  app.set_version_flag("--version", rrw_version());
  app.require_subcommand(1);

  double alpha = 1.0, c = 1.0, level = 0.95, fix_c = 0.0;
  int64_t n_paths = 50, length = 100, b = 500;
  uint64_t seed = 1;
  std::string input, out, method = "mle", config, replicates_out;
  std::vector<double> box_vals;
  bool symmetrized = false;

  auto *sim = app.add_subcommand("simulate", "generate paths to a CSV file");
  sim->add_option("--alpha", alpha, "intensification parameter")->required();
  sim->add_option("--c", c, "attractiveness parameter")->required();
  sim->add_option("--paths", n_paths, "number of paths N");
  sim->add_option("--length", length, "path length n");
  sim->add_option("--seed", seed, "random seed");
  sim->add_option("--out", out, "output CSV file")->required();

  auto *fit = app.add_subcommand("fit", "estimate (alpha, c) from a CSV file");
  fit->add_option("--input", input, "paths CSV file")->required();
  fit->add_option("--method", method, "mle, wlse or wlse-eff");
  fit->add_flag("--symmetrized", symmetrized, "fold mirror cells (wlse)");
  fit->add_option("--box", box_vals, "a_lo,a_hi,c_lo,c_hi")
      ->delimiter(',')
      ->expected(4);
  fit->add_option("--fix-c", fix_c, "profile alpha with c frozen");
  fit->add_option("--out", out, "result JSON file");

  auto *fisher = app.add_subcommand(
      "fisher", "print the Fisher information and standard deviations");
  fisher->add_option("--alpha", alpha)->required();
  fisher->add_option("--c", c)->required();
  fisher->add_option("--length", length, "path length n")->required();
  fisher->add_option("--paths", n_paths, "N used for sigma/sqrt(N)");

  auto *boot = app.add_subcommand("bootstrap",
                                  "pivotal bootstrap confidence intervals");
  boot->add_option("--input", input, "paths CSV file")->required();
  boot->add_option("--method", method, "mle, wlse or wlse-eff");
  boot->add_flag("--symmetrized", symmetrized, "fold mirror cells (wlse)");
  boot->add_option("--B", b, "number of resamples");
  boot->add_option("--level", level, "confidence level");
  boot->add_option("--seed", seed, "random seed");
  boot->add_option("--out", out, "result JSON file");
  boot->add_option("--replicates-out", replicates_out,
                   "CSV of replicate estimates (plot-ready)");

  auto *study = app.add_subcommand("study", "batch study from a JSON config");
  std::string study_kind;
  study->add_option("kind", study_kind, "std, mse or phase")
      ->required()
      ->check(CLI::IsMember({"std", "mse", "phase"}));
  study->add_option("--config", config, "study config JSON")->required();
  study->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  if (sim->parsed())
    return cmd_simulate(alpha, c, n_paths, length, seed, out);
  if (fit->parsed())
    return cmd_fit(input, method, symmetrized, box_vals, fix_c, out);
  if (fisher->parsed()) return cmd_fisher(alpha, c, length, n_paths);
  if (boot->parsed())
    return cmd_bootstrap(input, method, symmetrized, b, level, seed, out,
                         replicates_out);
  if (study->parsed()) return cmd_study(study_kind, config, out);
  return 2;
}
