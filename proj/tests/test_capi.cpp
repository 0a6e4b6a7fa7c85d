#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rrw/rrw.h"

namespace {

std::string temp_file(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("version and error strings") {
  CHECK(std::string(rrw_version()) == "0.1.0");
  rrw_paths *p = nullptr;
  CHECK(rrw_paths_simulate(-1.0, 1.0, 10, 10, 1, &p) ==
        RRW_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rrw_last_error()).size() > 0);
}

TEST_CASE("simulate, fit, free") {
  rrw_paths *p = nullptr;
  REQUIRE(rrw_paths_simulate(1.0, 1.0, 50, 100, 7, &p) == RRW_OK);
  CHECK(rrw_paths_count(p) == 50);
  CHECK(rrw_paths_length(p) == 100);

  int64_t q = -1;
  CHECK(rrw_paths_discarded_count(p, 0, &q) == RRW_OK);
  CHECK(q >= 0);
  CHECK(rrw_paths_discarded_count(p, 99, &q) == RRW_ERR_INVALID_ARGUMENT);

  rrw_fit_result fit;
  REQUIRE(rrw_fit(p, "mle", 0, 0.0, nullptr, nullptr, &fit) == RRW_OK);
  CHECK(std::fabs(fit.alpha - 1.0) < 0.15);
  CHECK(fit.converged == 1);

  rrw_fit_result wlse;
  REQUIRE(rrw_fit(p, "wlse", 1, 0.0, nullptr, nullptr, &wlse) == RRW_OK);
  CHECK(std::fabs(wlse.alpha - 1.0) < 0.25);

  CHECK(rrw_fit(p, "nonsense", 0, 0.0, nullptr, nullptr, &fit) ==
        RRW_ERR_INVALID_ARGUMENT);
  CHECK(rrw_fit(p, "mle", 1, 0.0, nullptr, nullptr, &fit) ==
        RRW_ERR_INVALID_ARGUMENT);
  rrw_paths_free(p);
}

TEST_CASE("csv round trip through the C surface") {
  const std::string f = temp_file("rrw_capi.csv");
  rrw_paths *p = nullptr;
  REQUIRE(rrw_paths_simulate(1.3, 0.8, 8, 12, 3, &p) == RRW_OK);
  REQUIRE(rrw_paths_write_csv(p, f.c_str()) == RRW_OK);
  rrw_paths *back = nullptr;
  REQUIRE(rrw_paths_read_csv(f.c_str(), &back) == RRW_OK);
  CHECK(rrw_paths_count(back) == 8);
  CHECK(rrw_paths_length(back) == 12);
  rrw_paths_free(p);
  rrw_paths_free(back);

  std::ofstream(f) << "1,1\n0,7\n";
  CHECK(rrw_paths_read_csv(f.c_str(), &back) == RRW_ERR_MALFORMED_INPUT);
}

TEST_CASE("fisher, covariance and polya values") {
  double info[4], inv[4];
  REQUIRE(rrw_fisher_info(0.5, 0.5, 100, info, inv) == RRW_OK);
  CHECK(std::fabs(std::sqrt(inv[0] / 50.0) - 5.02e-2) < 5.02e-4);
  CHECK(info[1] == info[2]);

  double cov[4];
  REQUIRE(rrw_wlse_covariance(1.0, 1.0, 30, RRW_WEIGHT_EFFICIENT, cov) ==
          RRW_OK);
  double inv30[4];
  REQUIRE(rrw_fisher_info(1.0, 1.0, 30, nullptr, inv30) == RRW_OK);
  CHECK(std::fabs(cov[0] - inv30[0]) < 1e-10);
  CHECK(rrw_wlse_covariance(1.0, 1.0, 2, RRW_WEIGHT_OCCUPANCY, cov) ==
        RRW_ERR_INVALID_ARGUMENT);

  double fisher = -1.0;
  REQUIRE(rrw_polya_fisher(1.0, 2, &fisher) == RRW_OK);
  CHECK(std::fabs(fisher - 1.0 / 18.0) < 1e-12);
}

TEST_CASE("bootstrap and monte carlo intervals") {
  rrw_paths *p = nullptr;
  REQUIRE(rrw_paths_simulate(1.0, 1.0, 40, 60, 11, &p) == RRW_OK);
  rrw_fit_result fit;
  rrw_interval ci;
  const std::string reps = temp_file("rrw_capi_reps.csv");
  REQUIRE(rrw_bootstrap_ci(p, "mle", 0, 80, 0.95, 5, nullptr, nullptr, &fit,
                           &ci, reps.c_str()) == RRW_OK);
  CHECK(ci.alpha_lo <= ci.alpha_hi);
  CHECK(ci.replicates >= 64);
  CHECK(std::filesystem::exists(reps));
  CHECK(rrw_bootstrap_ci(p, "mle", 0, 10, 0.95, 5, nullptr, nullptr, nullptr,
                         &ci, nullptr) == RRW_ERR_INVALID_ARGUMENT);
  rrw_paths_free(p);

  rrw_interval mc;
  CHECK(rrw_monte_carlo_ci(1.0, 1.0, 20, 20, 5, "mle", 0, 0.95, 1, nullptr,
                           nullptr, &mc) == RRW_ERR_TOO_FEW_REPLICATES);
}

TEST_CASE("study run") {
  const std::string cfg = temp_file("rrw_capi_study.json");
  std::ofstream(cfg) << R"({"thetas": [[1.0, 1.0]], "length": 20})";
  const std::string dir = temp_file("rrw_capi_study_out");
  REQUIRE(rrw_study_run("std", cfg.c_str(), dir.c_str()) == RRW_OK);
  CHECK(std::filesystem::exists(dir + "/std_report.csv"));
  CHECK(std::filesystem::exists(dir + "/std_report.json"));
  CHECK(rrw_study_run("bogus", cfg.c_str(), dir.c_str()) ==
        RRW_ERR_INVALID_ARGUMENT);
}
