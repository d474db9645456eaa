#include "cli/ingest.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "bmidas/errors.hpp"
#include "cli/csv.hpp"

namespace bmidas::cli {

namespace {

void check_dates(const std::vector<std::string>& dates, const std::string& path) {
  std::unordered_set<std::string> seen;
  for (const auto& d : dates) {
    if (!seen.insert(d).second) {
      throw ConfigError(path + ": duplicate date '" + d + "'");
    }
  }
}

}  // namespace

int horizon_to_steps(double h, int m) {
  const double steps = h * m;
  const double rounded = std::round(steps);
  if (h < 0.0 || std::abs(steps - rounded) > 1e-9) {
    throw ConfigError("horizon h must lie on the grid {0, 1/m, 2/m, ...}; got h = " +
                      std::to_string(h) + " with m = " + std::to_string(m));
  }
  return static_cast<int>(rounded);
}

MixedFreqPanel ingest_csv(const std::string& low_freq_path,
                          const std::string& high_freq_path, int m, int C,
                          double h, int tail) {
  if (m < 1) throw ConfigError("frequency ratio m must be a positive integer");
  const CsvTable ylo = read_csv(low_freq_path);
  const CsvTable xhi = read_csv(high_freq_path);
  if (ylo.header.size() != 2) {
    throw ConfigError(low_freq_path + ": expected columns (date, value)");
  }
  if (xhi.header.size() < 2) {
    throw ConfigError(high_freq_path + ": expected columns (date, x1, ...)");
  }

  MixedFreqPanel panel;
  panel.m = m;
  panel.C = C;
  panel.h_steps = horizon_to_steps(h, m);
  panel.tail = tail;

  const long T = static_cast<long>(ylo.rows.size());
  panel.y.resize(T);
  for (long t = 0; t < T; ++t) {
    panel.y_dates.push_back(ylo.rows[t][0]);
    panel.y[t] = parse_double(ylo.rows[t][1],
                              low_freq_path + " row " + std::to_string(t + 2));
  }
  check_dates(panel.y_dates, low_freq_path);

  const long N = static_cast<long>(xhi.rows.size());
  const int K = static_cast<int>(xhi.header.size()) - 1;
  panel.x.resize(K, N);
  panel.x_names.assign(xhi.header.begin() + 1, xhi.header.end());
  for (long n = 0; n < N; ++n) {
    panel.x_dates.push_back(xhi.rows[n][0]);
    for (int k = 0; k < K; ++k) {
      panel.x(k, n) = parse_double(
          xhi.rows[n][k + 1], high_freq_path + " row " + std::to_string(n + 2) +
                                  ", column " + xhi.header[k + 1]);
    }
  }
  check_dates(panel.x_dates, high_freq_path);

  if (panel.head() < 0) {
    throw ConfigError("frequency mismatch: " + std::to_string(N) +
                      " high-frequency rows cannot cover " + std::to_string(T) +
                      " periods at m = " + std::to_string(m) + " plus tail " +
                      std::to_string(tail));
  }
  panel.validate();
  return panel;
}

void write_panel(const MixedFreqPanel& panel, const std::string& low_freq_path,
                 const std::string& high_freq_path) {
  std::vector<std::vector<std::string>> yrows;
  for (int t = 0; t < panel.n_obs(); ++t) {
    const std::string date =
        panel.y_dates.empty() ? std::to_string(t + 1) : panel.y_dates[t];
    yrows.push_back({date, format_double(panel.y[t])});
  }
  write_csv(low_freq_path, {"date", "y"}, yrows);

  std::vector<std::string> header{"date"};
  for (int k = 0; k < panel.n_predictors(); ++k) {
    header.push_back(panel.x_names.empty() ? "x" + std::to_string(k + 1)
                                           : panel.x_names[k]);
  }
  std::vector<std::vector<std::string>> xrows;
  for (long n = 0; n < panel.x.cols(); ++n) {
    std::vector<std::string> row;
    row.push_back(panel.x_dates.empty() ? std::to_string(n + 1)
                                        : panel.x_dates[n]);
    for (int k = 0; k < panel.n_predictors(); ++k) {
      row.push_back(format_double(panel.x(k, n)));
    }
    xrows.push_back(std::move(row));
  }
  write_csv(high_freq_path, header, xrows);
}

Eigen::MatrixXd read_covariates(const std::string& path, int expected_rows) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2) {
    throw ConfigError(path + ": expected columns (date, u1, ...)");
  }
  if (static_cast<int>(table.rows.size()) != expected_rows) {
    throw ConfigError(path + ": expected " + std::to_string(expected_rows) +
                      " rows to match the response sample");
  }
  const int M = static_cast<int>(table.header.size()) - 1;
  Eigen::MatrixXd U(expected_rows, M);
  for (int t = 0; t < expected_rows; ++t) {
    for (int j = 0; j < M; ++j) {
      U(t, j) = parse_double(table.rows[t][j + 1],
                             path + " row " + std::to_string(t + 2));
    }
  }
  return U;
}

}  // namespace bmidas::cli
