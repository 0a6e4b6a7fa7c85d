// Path CSV ingestion and report serialization. Path files hold one path per
// row, comma-separated 0/1 fields, with an optional "x1,...,xn" header.
#pragma once

#include <string>

#include "experiments.hpp"

namespace rrw {

const char *version();

PathSet read_paths(const std::string &file);
void write_paths(const PathSet &paths, const std::string &file);

// JSON study description (thetas, n_paths, length, reps, seed, level,
// estimators, box, selection_threshold).
StudyConfig read_study_config(const std::string &file);

// Emits <out_dir>/<kind>_report.csv and .json.
void write_study_report(const StudyReport &report, const std::string &out_dir);

// Phase summaries share the same naming scheme ("phase_report.*").
void write_phase_report(const std::vector<PhaseSummary> &rows,
                        const std::string &out_dir);

// Plot-ready replicate scatter: alpha,c per converged bootstrap fit.
void write_replicates_csv(const Replicates &reps, const std::string &file);

}  // namespace rrw
