#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rrw {

namespace {

using nlohmann::json;

bool looks_like_header(const std::string &line) {
  return line.find('x') != std::string::npos;
}

std::ofstream open_out(const std::string &file) {
  std::ofstream out(file);
  if (!out)
    throw Error(ErrorCode::Io, "cannot open '" + file + "' for writing");
  return out;
}

json row_to_json(const StudyRow &r, const std::string &kind) {
  json j{{"alpha", r.alpha0}, {"c", r.c0}, {"estimator", r.estimator},
         {"failed", r.failed}};
  if (r.failed) {
    j["failure"] = r.failure;
    return j;
  }
  if (kind == "std") {
    j["sd_alpha"] = r.sd_alpha;
    j["sd_c"] = r.sd_c;
  } else {
    j["rmse_alpha"] = r.rmse_alpha;
    j["rmse_c"] = r.rmse_c;
    j["d1_alpha"] = r.d1_alpha;
    j["d9_alpha"] = r.d9_alpha;
    j["d1_c"] = r.d1_c;
    j["d9_c"] = r.d9_c;
    j["converged_reps"] = r.converged_reps;
    j["boundary_hits"] = r.boundary_hits;
  }
  return j;
}

}  // namespace

const char *version() { return "0.1.0"; }

PathSet read_paths(const std::string &file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + file + "'");
  PathSet paths;
  std::string line;
  std::int64_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && looks_like_header(line)) {
      first = false;
      continue;
    }
    first = false;
    std::vector<std::uint8_t> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      // trim spaces
      const auto b = tok.find_first_not_of(" \t");
      const auto e = tok.find_last_not_of(" \t");
      tok = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
      if (tok == "0")
        row.push_back(0);
      else if (tok == "1")
        row.push_back(1);
      else
        throw Error(ErrorCode::MalformedInput,
                    "line " + std::to_string(lineno) + ": token '" + tok +
                        "' is not 0 or 1");
    }
    if (line.back() == ',')
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(lineno) + ": trailing comma");
    if (row.empty())
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(lineno) + ": no fields");
    if (paths.n_paths == 0) {
      paths.length = static_cast<std::int64_t>(row.size());
    } else if (static_cast<std::int64_t>(row.size()) != paths.length) {
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(lineno) + ": expected " +
                      std::to_string(paths.length) + " fields, got " +
                      std::to_string(row.size()));
    }
    paths.choices.insert(paths.choices.end(), row.begin(), row.end());
    ++paths.n_paths;
  }
  if (paths.n_paths == 0)
    throw Error(ErrorCode::EmptyData, "'" + file + "' contains no paths");
  return paths;
}

void write_paths(const PathSet &paths, const std::string &file) {
  std::ofstream out = open_out(file);
  for (std::int64_t j = 0; j < paths.n_paths; ++j) {
    for (std::int64_t k = 0; k < paths.length; ++k) {
      if (k) out << ',';
      out << static_cast<int>(paths.at(j, k));
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "write to '" + file + "' failed");
}

StudyConfig read_study_config(const std::string &file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + file + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::MalformedInput,
                std::string("study config: ") + e.what());
  }
  StudyConfig cfg;
  try {
    for (const auto &t : j.at("thetas"))
      cfg.thetas.emplace_back(t.at(0).get<double>(), t.at(1).get<double>());
    cfg.n_paths = j.value("n_paths", cfg.n_paths);
    cfg.length = j.value("length", cfg.length);
    cfg.reps = j.value("reps", cfg.reps);
    cfg.bootstrap_b = j.value("bootstrap_b", cfg.bootstrap_b);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.level = j.value("level", cfg.level);
    if (j.contains("box")) {
      const auto &b = j["box"];
      cfg.box = {b.at(0).get<double>(), b.at(1).get<double>(),
                 b.at(2).get<double>(), b.at(3).get<double>()};
    }
    if (j.contains("estimators")) {
      for (const auto &name : j["estimators"]) {
        const std::string s = name.get<std::string>();
        if (s == "mle")
          cfg.estimators.push_back({Method::Mle, WeightMode::Occupancy, false});
        else if (s == "wlse")
          cfg.estimators.push_back(
              {Method::Wlse, WeightMode::Occupancy, false});
        else if (s == "wlse-sym")
          cfg.estimators.push_back({Method::Wlse, WeightMode::Occupancy, true});
        else if (s == "wlse-eff")
          cfg.estimators.push_back(
              {Method::Wlse, WeightMode::Efficient, false});
        else
          throw Error(ErrorCode::MalformedInput,
                      "unknown estimator '" + s + "'");
      }
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::MalformedInput,
                std::string("study config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void write_study_report(const StudyReport &report,
                        const std::string &out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string stem = out_dir + "/" + report.kind + "_report";

  std::ofstream csv = open_out(stem + ".csv");
  csv.precision(10);
  if (report.kind == "std") {
    csv << "alpha,c,estimator,sd_alpha,sd_c,failed\n";
    for (const StudyRow &r : report.rows)
      csv << r.alpha0 << ',' << r.c0 << ',' << r.estimator << ','
          << r.sd_alpha << ',' << r.sd_c << ',' << (r.failed ? 1 : 0) << '\n';
  } else {
    csv << "alpha,c,estimator,rmse_alpha,rmse_c,d1_alpha,d9_alpha,d1_c,d9_c,"
           "converged_reps,boundary_hits,failed\n";
    for (const StudyRow &r : report.rows)
      csv << r.alpha0 << ',' << r.c0 << ',' << r.estimator << ','
          << r.rmse_alpha << ',' << r.rmse_c << ',' << r.d1_alpha << ','
          << r.d9_alpha << ',' << r.d1_c << ',' << r.d9_c << ','
          << r.converged_reps << ',' << r.boundary_hits << ','
          << (r.failed ? 1 : 0) << '\n';
  }

  json j{{"kind", report.kind},
         {"tool_version", version()},
         {"rows", json::array()}};
  for (const StudyRow &r : report.rows)
    j["rows"].push_back(row_to_json(r, report.kind));
  std::ofstream js = open_out(stem + ".json");
  js << j.dump(2) << '\n';
}

void write_phase_report(const std::vector<PhaseSummary> &rows,
                        const std::string &out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string stem = out_dir + "/phase_report";

  std::ofstream csv = open_out(stem + ".csv");
  csv.precision(10);
  csv << "alpha,c,n,reps,mean_fraction,sd_fraction,ks_beta,selection_freq,"
         "selection_threshold\n";
  for (const PhaseSummary &r : rows)
    csv << r.alpha << ',' << r.c << ',' << r.n << ',' << r.reps << ','
        << r.mean_fraction << ',' << r.sd_fraction << ',' << r.ks_beta << ','
        << r.selection_freq << ',' << r.selection_threshold << '\n';

  json j{{"kind", "phase"},
         {"tool_version", version()},
         {"rows", json::array()}};
  for (const PhaseSummary &r : rows)
    j["rows"].push_back({{"alpha", r.alpha},
                         {"c", r.c},
                         {"n", r.n},
                         {"reps", r.reps},
                         {"mean_fraction", r.mean_fraction},
                         {"sd_fraction", r.sd_fraction},
                         {"ks_beta", r.ks_beta},
                         {"selection_freq", r.selection_freq},
                         {"selection_threshold", r.selection_threshold}});
  std::ofstream js = open_out(stem + ".json");
  js << j.dump(2) << '\n';
}

void write_replicates_csv(const Replicates &reps, const std::string &file) {
  std::ofstream out = open_out(file);
  out.precision(10);
  out << "alpha,c\n";
  for (std::size_t r = 0; r < reps.alpha.size(); ++r)
    out << reps.alpha[r] << ',' << reps.c[r] << '\n';
}

}  // namespace rrw
