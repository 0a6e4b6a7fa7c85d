#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <string>

#include <json.hpp>

#include "core/io.hpp"
#include "core/simulate.hpp"

using namespace rrw;

namespace {

std::string temp_file(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_text(const std::string &file, const std::string &text) {
  std::ofstream out(file);
  out << text;
}

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("version string") { CHECK(std::string(version()) == "0.1.0"); }

TEST_CASE("basic csv parse") {
  const std::string f = temp_file("rrw_basic.csv");
  write_text(f, "1,1\n0,1\n");
  const PathSet p = read_paths(f);
  CHECK(p.n_paths == 2);
  CHECK(p.length == 2);
  CHECK(p.at(0, 0) == 1);
  CHECK(p.at(1, 0) == 0);
}

TEST_CASE("header line is skipped") {
  const std::string f = temp_file("rrw_header.csv");
  write_text(f, "x1,x2,x3\n1,0,1\n");
  const PathSet p = read_paths(f);
  CHECK(p.n_paths == 1);
  CHECK(p.length == 3);
}

TEST_CASE("malformed inputs carry line numbers") {
  const std::string f = temp_file("rrw_bad.csv");

  write_text(f, "1,1\n0,2\n");
  try {
    read_paths(f);
    FAIL("expected MalformedInput");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::MalformedInput);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  write_text(f, "1,1\n0,1,1\n");
  CHECK(code_of([&] { read_paths(f); }) == ErrorCode::MalformedInput);

  write_text(f, "1,1,\n");
  CHECK(code_of([&] { read_paths(f); }) == ErrorCode::MalformedInput);

  write_text(f, "");
  CHECK(code_of([&] { read_paths(f); }) == ErrorCode::EmptyData);

  CHECK(code_of([&] { read_paths("/nonexistent/nope.csv"); }) ==
        ErrorCode::Io);
}

TEST_CASE("round trip is lossless") {
  const PathSet sim = simulate_paths({1.2, 0.9}, 17, 23, 99);
  const std::string f = temp_file("rrw_roundtrip.csv");
  write_paths(sim, f);
  const PathSet back = read_paths(f);
  CHECK(back.n_paths == sim.n_paths);
  CHECK(back.length == sim.length);
  CHECK(back.choices == sim.choices);
}

TEST_CASE("study config parsing") {
  const std::string f = temp_file("rrw_cfg.json");
  write_text(f, R"({"thetas": [[1.0, 1.0], [0.5, 2.0]], "n_paths": 20,
                   "length": 30, "reps": 100, "seed": 3, "level": 0.9,
                   "estimators": ["mle", "wlse-sym"],
                   "box": [0.1, 10.0, 0.1, 50.0]})");
  const StudyConfig cfg = read_study_config(f);
  CHECK(cfg.thetas.size() == 2);
  CHECK(cfg.n_paths == 20);
  CHECK(cfg.level == 0.9);
  REQUIRE(cfg.estimators.size() == 2);
  CHECK(cfg.estimators[1].symmetrized);
  CHECK(cfg.box.alpha_hi == 10.0);

  write_text(f, R"({"thetas": [[1, 1]], "estimators": ["nope"]})");
  CHECK(code_of([&] { read_study_config(f); }) == ErrorCode::MalformedInput);
  write_text(f, "{ not json");
  CHECK(code_of([&] { read_study_config(f); }) == ErrorCode::MalformedInput);
}

TEST_CASE("study report serialization") {
  StudyReport rep;
  rep.kind = "std";
  StudyRow row;
  row.alpha0 = 1.0;
  row.c0 = 2.0;
  row.estimator = "mle";
  row.sd_alpha = 0.05;
  row.sd_c = 0.25;
  rep.rows.push_back(row);
  const std::string dir = temp_file("rrw_report_dir");
  write_study_report(rep, dir);
  CHECK(std::filesystem::exists(dir + "/std_report.csv"));
  std::ifstream js(dir + "/std_report.json");
  nlohmann::json j;
  js >> j;
  CHECK(j["kind"] == "std");
  CHECK(j["tool_version"] == "0.1.0");
  CHECK(j["rows"][0]["sd_alpha"] == 0.05);
}

TEST_CASE("replicate scatter file") {
  Replicates reps;
  reps.alpha = {1.0, 1.1};
  reps.c = {0.9, 1.2};
  const std::string f = temp_file("rrw_reps.csv");
  write_replicates_csv(reps, f);
  std::ifstream in(f);
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,c");
  std::getline(in, line);
  CHECK(line == "1,0.9");
}
