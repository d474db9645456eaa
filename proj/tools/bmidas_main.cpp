#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

using bmidas::cli::RunConfig;

namespace {

void add_chain_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--model", cfg.model, "Model: agl, agl_ss, or al")
      ->capture_default_str();
  cmd->add_option("--p", cfg.p, "Almon polynomial degree")->capture_default_str();
  cmd->add_option("--r", cfg.r, "Endpoint restrictions (0, 1, or 2)")
      ->capture_default_str();
  cmd->add_option("--S,--iterations", cfg.iterations, "Gibbs iterations")
      ->capture_default_str();
  cmd->add_option("--burn", cfg.burn_in, "Burn-in iterations")->capture_default_str();
  cmd->add_option("--thin", cfg.thin, "Thinning interval")->capture_default_str();
  cmd->add_option("--level", cfg.level, "Credible-interval level")
      ->capture_default_str();
  cmd->add_option("--a1", cfg.a1, "Inv-Gamma shape for sigma^2 (must be > 1)")
      ->capture_default_str();
  cmd->add_option("--b1", cfg.b1, "Inv-Gamma rate for sigma^2")->capture_default_str();
  cmd->add_option("--a2", cfg.a2, "Gamma shape for lambda^2 (full-Bayes tuning)")
      ->capture_default_str();
  cmd->add_option("--b2", cfg.b2, "Gamma rate for lambda^2 (full-Bayes tuning)")
      ->capture_default_str();
  cmd->add_option("--pi0-c", cfg.c, "Beta prior shape c (<= 0: kappa_bar G^v default)")
      ->capture_default_str();
  cmd->add_option("--pi0-d", cfg.d, "Beta prior shape d")->capture_default_str();
  cmd->add_option("--pi0-fixed", cfg.pi0_fixed, "Hold pi0 fixed (< 0: sampled)")
      ->capture_default_str();
  cmd->add_option("--tuning", cfg.tuning, "Penalty tuning: sa or full_bayes")
      ->capture_default_str();
  cmd->add_option("--sa-q", cfg.sa_q, "SA step exponent")->capture_default_str();
  cmd->add_option("--sa-ebar", cfg.sa_ebar, "SA increment bound start")
      ->capture_default_str();
  cmd->add_option("--sa-alpha", cfg.sa_alpha, "SA increment bound decay")
      ->capture_default_str();
  cmd->add_option("--sa-cbound", cfg.sa_cbound, "SA hard lower wall for omega")
      ->capture_default_str();
}

void add_data_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--y", cfg.y_path, "Low-frequency response CSV (date,value)")
      ->required();
  cmd->add_option("--x", cfg.x_path, "High-frequency predictor CSV (date,x1,...)")
      ->required();
  cmd->add_option("--m", cfg.m, "Frequency ratio")->capture_default_str();
  cmd->add_option("--C", cfg.C, "High-frequency lag window")->capture_default_str();
  cmd->add_option("--h", cfg.h, "Forecast horizon in low-frequency units")
      ->capture_default_str();
  cmd->add_option("--tail", cfg.tail,
                  "High-frequency rows after the last response period")
      ->capture_default_str();
}

void add_dgp_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--dgp", cfg.dgp, "Weighting scheme: 1 fast, 2 slow, 3 near-flat")
      ->capture_default_str();
  cmd->add_option("--K", cfg.K, "Number of predictors")->capture_default_str();
  cmd->add_option("--T", cfg.T, "In-sample periods")->capture_default_str();
  cmd->add_option("--m", cfg.m, "Frequency ratio")->capture_default_str();
  cmd->add_option("--C", cfg.C, "Lag window")->capture_default_str();
  cmd->add_option("--sigma-eps", cfg.sigma_eps, "Innovation cross-correlation base")
      ->capture_default_str();
  cmd->add_option("--rho", cfg.rho, "AR(1) coefficient of the predictors")
      ->capture_default_str();
  cmd->add_option("--mu", cfg.mu, "AR(1) intercept")->capture_default_str();
  cmd->add_option("--alpha", cfg.alpha, "Regression intercept")->capture_default_str();
  cmd->add_option("--noise-to-signal", cfg.noise_to_signal, "Error/signal variance ratio")
      ->capture_default_str();
  cmd->add_option("--extra-rows", cfg.extra_rows, "Held-out periods after T")
      ->capture_default_str();
  cmd->add_flag("--iid-x", cfg.x_iid, "i.i.d. standard normal regressors");
  cmd->add_option("--fixed-sigma", cfg.fixed_sigma,
                  "Fixed error standard deviation (< 0: from noise-to-signal)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian MIDAS penalized regressions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value config file");

  RunConfig cfg;

  auto* simulate = app.add_subcommand("simulate", "Generate a mixed-frequency dataset");
  add_dgp_options(simulate, cfg);
  simulate->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--out", cfg.out_dir, "Output directory")
      ->envname("BMIDAS_OUT")
      ->capture_default_str();

  auto* fit = app.add_subcommand("fit", "Fit a model and store posterior draws");
  add_data_options(fit, cfg);
  add_chain_options(fit, cfg);
  fit->add_option("--unpenalized", cfg.unpenalized_path,
                  "Always-included covariates CSV (date,u1,...)");
  fit->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  fit->add_flag("--binary-draws", cfg.binary_draws, "Store draws in binary form");
  fit->add_option("--out", cfg.out_dir, "Output directory")
      ->envname("BMIDAS_OUT")
      ->capture_default_str();

  auto* forecast = app.add_subcommand(
      "forecast", "Out-of-sample predictive evaluation on held-out periods");
  add_data_options(forecast, cfg);
  add_chain_options(forecast, cfg);
  forecast->add_option("--holdout", cfg.holdout, "Held-out periods at the sample end")
      ->capture_default_str();
  forecast->add_flag("!--no-recursive", cfg.recursive,
                     "Fit once at the forecast origin instead of expanding windows");
  forecast->add_flag("--save-draws", cfg.save_draws, "Persist per-date predictive draws");
  forecast->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  forecast->add_option("--out", cfg.out_dir, "Output directory")
      ->envname("BMIDAS_OUT")
      ->capture_default_str();

  auto* evaluate = app.add_subcommand(
      "evaluate", "Equal-predictive-accuracy test between two forecast runs");
  evaluate->add_option("--forecasts-a", cfg.forecasts_a, "forecasts.csv of model A")
      ->required();
  evaluate->add_option("--forecasts-b", cfg.forecasts_b, "forecasts.csv of model B")
      ->required();
  evaluate->add_option("--loss", cfg.loss, "Loss: se, crps, or ls")
      ->capture_default_str();
  evaluate->add_option("--dmw-h-steps", cfg.dmw_h_steps,
                       "Forecast horizon in low-frequency steps for the HAC window")
      ->capture_default_str();
  evaluate->add_option("--out", cfg.out_dir, "Output directory")
      ->envname("BMIDAS_OUT")
      ->capture_default_str();

  auto* mc = app.add_subcommand("montecarlo", "Replicated simulation experiment");
  add_dgp_options(mc, cfg);
  add_chain_options(mc, cfg);
  mc->add_option("--R", cfg.R, "Monte Carlo replications")->capture_default_str();
  mc->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  mc->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  mc->add_option("--out", cfg.out_dir, "Output directory")
      ->envname("BMIDAS_OUT")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, bad flags are config errors
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return bmidas::cli::run_command(cfg);
}
