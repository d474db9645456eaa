#pragma once

#include <string>

#include "bmidas/design.hpp"

namespace bmidas::cli {

// Loads an aligned panel from two CSV files.
//
// The response file has columns (date, <name>) with one row per
// low-frequency period. The predictor file has columns (date, x1, ..., xK)
// with one row per high-frequency period. The last `tail` predictor rows
// fall after the final response period; of the rest, the trailing m*T rows
// align m-per-period with the response (the last row inside a period is
// lag 0 for an h = 0 target) and anything before them is pre-sample
// history. Missing cells are a hard error naming the cell; duplicate dates
// and impossible alignments are rejected.
MixedFreqPanel ingest_csv(const std::string& low_freq_path,
                          const std::string& high_freq_path, int m, int C,
                          double h, int tail = 0);

// Inverse of ingest_csv for simulated datasets.
void write_panel(const MixedFreqPanel& panel, const std::string& low_freq_path,
                 const std::string& high_freq_path);

// Horizon grid check: h must be a multiple of 1/m.
int horizon_to_steps(double h, int m);

// One column per covariate, one row per low-frequency period.
Eigen::MatrixXd read_covariates(const std::string& path, int expected_rows);

}  // namespace bmidas::cli
