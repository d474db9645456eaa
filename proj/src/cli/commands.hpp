#pragma once

#include <cstdint>
#include <string>

namespace bmidas::cli {

// Fully resolved run configuration; every field lands in the emitted
// manifest. Flags map onto these one-to-one.
struct RunConfig {
  std::string command;

  // data
  std::string y_path, x_path, unpenalized_path;
  int tail = 0;

  // model
  std::string model = "agl_ss";  // agl | agl_ss | al
  int p = 3;
  int r = 2;
  int C = 24;
  int m = 3;
  double h = 0.0;

  // chain schedule
  long iterations = 20000;
  long burn_in = 10000;
  long thin = 10;
  std::uint64_t seed = 1;

  // priors
  double a1 = 2.0, b1 = 1.0;
  double a2 = 1.0, b2 = 0.1;
  double c = -1.0;  // <= 0: default kappa_bar G^v
  double d = 1.0;
  double pi0_fixed = -1.0;  // < 0: sampled
  std::string tuning = "sa";  // sa | full_bayes

  // stochastic approximation
  double sa_q = 0.8, sa_ebar = 3.0, sa_alpha = 0.1, sa_cbound = 5.0;

  // selection
  double level = 0.95;

  // simulate / montecarlo
  int dgp = 1;
  int K = 30;
  int T = 200;
  double sigma_eps = 0.50;
  double rho = 0.9, mu = 0.1, alpha = 0.5, noise_to_signal = 0.20;
  int extra_rows = 1;
  bool x_iid = false;
  double fixed_sigma = -1.0;  // < 0: from noise-to-signal
  int R = 50;
  int workers = 1;

  // forecast
  int holdout = 8;
  bool recursive = true;
  bool save_draws = false;

  // evaluate
  std::string forecasts_a, forecasts_b;
  std::string loss = "se";  // se | crps | ls
  int dmw_h_steps = 1;

  // output
  std::string out_dir = "bmidas_out";
  bool binary_draws = false;
};

// Dispatches on cfg.command, writes artifacts under cfg.out_dir, and
// returns the process exit code (0 ok, 2 config error, 3 numerical error,
// 4 I/O error).
int run_command(const RunConfig& cfg);

int cmd_simulate(const RunConfig& cfg);
int cmd_fit(const RunConfig& cfg);
int cmd_forecast(const RunConfig& cfg);
int cmd_evaluate(const RunConfig& cfg);
int cmd_montecarlo(const RunConfig& cfg);

}  // namespace bmidas::cli
