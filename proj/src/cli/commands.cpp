#include "cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <json.hpp>

#include "bmidas/errors.hpp"
#include "bmidas/forecast.hpp"
#include "bmidas/gibbs.hpp"
#include "bmidas/inference.hpp"
#include "bmidas/simlab.hpp"
#include "cli/csv.hpp"
#include "cli/ingest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace bmidas::cli {

namespace {

struct ModelSpec {
  Model model;
  Grouping grouping;
};

ModelSpec parse_model(const std::string& name) {
  if (name == "agl") return {Model::agl, Grouping::by_predictor};
  if (name == "agl_ss") return {Model::agl_ss, Grouping::by_predictor};
  if (name == "al") return {Model::agl, Grouping::per_coefficient};
  throw ConfigError("unknown model '" + name + "' (expected agl, agl_ss, or al)");
}

Hyperparams make_hyperparams(const RunConfig& cfg) {
  Hyperparams hp;
  hp.a1 = cfg.a1;
  hp.b1 = cfg.b1;
  hp.a2 = cfg.a2;
  hp.b2 = cfg.b2;
  if (cfg.c > 0.0) hp.c = cfg.c;
  hp.d = cfg.d;
  if (cfg.pi0_fixed >= 0.0) hp.fixed_pi0 = cfg.pi0_fixed;
  if (cfg.tuning == "sa") {
    hp.tuning = TuningMode::stochastic_approximation;
  } else if (cfg.tuning == "full_bayes") {
    hp.tuning = TuningMode::full_bayes;
  } else {
    throw ConfigError("unknown tuning mode '" + cfg.tuning + "'");
  }
  return hp;
}

SaConfig make_sa_config(const RunConfig& cfg) {
  SaConfig sa;
  sa.q = cfg.sa_q;
  sa.e_bar = cfg.sa_ebar;
  sa.alpha_e = cfg.sa_alpha;
  sa.c_bound = cfg.sa_cbound;
  return sa;
}

Schedule make_schedule(const RunConfig& cfg) {
  Schedule sch;
  sch.iterations = cfg.iterations;
  sch.burn_in = cfg.burn_in;
  sch.thin = cfg.thin;
  sch.validate();
  return sch;
}

WeightScheme parse_dgp(int dgp) {
  switch (dgp) {
    case 1: return WeightScheme::fast_decay;
    case 2: return WeightScheme::slow_decay;
    case 3: return WeightScheme::near_flat;
  }
  throw ConfigError("dgp must be 1, 2, or 3");
}

DgpConfig make_dgp_config(const RunConfig& cfg) {
  DgpConfig dgp;
  dgp.K = cfg.K;
  dgp.m = cfg.m;
  dgp.C = cfg.C;
  dgp.T = cfg.T;
  dgp.extra_rows = cfg.extra_rows;
  dgp.scheme = parse_dgp(cfg.dgp);
  dgp.rho = cfg.rho;
  dgp.mu = cfg.mu;
  dgp.sigma_eps = cfg.sigma_eps;
  dgp.alpha = cfg.alpha;
  dgp.noise_to_signal = cfg.noise_to_signal;
  dgp.seed = cfg.seed;
  dgp.x_iid_normal = cfg.x_iid;
  if (cfg.fixed_sigma >= 0.0) dgp.fixed_sigma = cfg.fixed_sigma;
  return dgp;
}

json config_json(const RunConfig& cfg) {
  return json{{"command", cfg.command},
              {"y", cfg.y_path},
              {"x", cfg.x_path},
              {"unpenalized", cfg.unpenalized_path},
              {"tail", cfg.tail},
              {"model", cfg.model},
              {"p", cfg.p},
              {"r", cfg.r},
              {"C", cfg.C},
              {"m", cfg.m},
              {"h", cfg.h},
              {"iterations", cfg.iterations},
              {"burn_in", cfg.burn_in},
              {"thin", cfg.thin},
              {"seed", cfg.seed},
              {"a1", cfg.a1},
              {"b1", cfg.b1},
              {"a2", cfg.a2},
              {"b2", cfg.b2},
              {"c", cfg.c},
              {"d", cfg.d},
              {"pi0_fixed", cfg.pi0_fixed},
              {"tuning", cfg.tuning},
              {"sa_q", cfg.sa_q},
              {"sa_ebar", cfg.sa_ebar},
              {"sa_alpha", cfg.sa_alpha},
              {"sa_cbound", cfg.sa_cbound},
              {"level", cfg.level},
              {"dgp", cfg.dgp},
              {"K", cfg.K},
              {"T", cfg.T},
              {"sigma_eps", cfg.sigma_eps},
              {"rho", cfg.rho},
              {"mu", cfg.mu},
              {"alpha", cfg.alpha},
              {"noise_to_signal", cfg.noise_to_signal},
              {"extra_rows", cfg.extra_rows},
              {"x_iid", cfg.x_iid},
              {"fixed_sigma", cfg.fixed_sigma},
              {"R", cfg.R},
              {"workers", cfg.workers},
              {"holdout", cfg.holdout},
              {"recursive", cfg.recursive},
              {"save_draws", cfg.save_draws},
              {"forecasts_a", cfg.forecasts_a},
              {"forecasts_b", cfg.forecasts_b},
              {"loss", cfg.loss},
              {"dmw_h_steps", cfg.dmw_h_steps},
              {"out", cfg.out_dir},
              {"binary_draws", cfg.binary_draws}};
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_manifest(const RunConfig& cfg, const fs::path& dir,
                    json extra = json::object()) {
  json manifest;
  manifest["config"] = config_json(cfg);
  manifest["resolved"] = std::move(extra);
  write_json(manifest, dir / "manifest.json");

  // Re-runnable key=value form of the same configuration.
  std::ofstream rc(dir / "resolved.cfg");
  if (!rc) throw IoError("cannot write resolved.cfg");
  rc << "[" << cfg.command << "]\n";
  const json cj = config_json(cfg);
  for (const auto& [key, value] : cj.items()) {
    if (key == "command") continue;
    if (value.is_string()) {
      const std::string s = value.get<std::string>();
      if (!s.empty()) rc << key << "=" << s << '\n';
    } else if (value.is_boolean()) {
      rc << key << "=" << (value.get<bool>() ? "true" : "false") << '\n';
    } else {
      rc << key << "=" << value.dump() << '\n';
    }
  }
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

std::vector<std::string> draws_header(const PosteriorDraws& draws) {
  std::vector<std::string> header;
  const int G = static_cast<int>(draws.groups.size());
  for (int j = 0; j < G; ++j) {
    for (int i = 0; i < draws.groups[j].size; ++i) {
      header.push_back("theta_g" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
    }
  }
  for (long i = 0; i < draws.theta_u.cols(); ++i) {
    header.push_back("theta_u_" + std::to_string(i + 1));
  }
  for (int j = 0; j < G; ++j) header.push_back("tau2_" + std::to_string(j + 1));
  header.push_back("sigma2");
  for (int j = 0; j < G; ++j) header.push_back("lambda_" + std::to_string(j + 1));
  if (draws.model == Model::agl_ss) {
    header.push_back("pi0");
    for (int j = 0; j < G; ++j) header.push_back("gamma_" + std::to_string(j + 1));
  }
  return header;
}

Eigen::MatrixXd draws_matrix(const PosteriorDraws& draws) {
  const long n = draws.n_draws();
  const int G = static_cast<int>(draws.groups.size());
  const bool ss = draws.model == Model::agl_ss;
  const long cols = draws.theta.cols() + draws.theta_u.cols() + G + 1 + G +
                    (ss ? 1 + G : 0);
  Eigen::MatrixXd M(n, cols);
  long c = 0;
  M.middleCols(c, draws.theta.cols()) = draws.theta;
  c += draws.theta.cols();
  if (draws.theta_u.cols() > 0) {
    M.middleCols(c, draws.theta_u.cols()) = draws.theta_u;
    c += draws.theta_u.cols();
  }
  M.middleCols(c, G) = draws.tau2;
  c += G;
  M.col(c++) = draws.sigma2;
  M.middleCols(c, G) = draws.lambda2.array().sqrt().matrix();
  c += G;
  if (ss) {
    M.col(c++) = draws.pi0;
    for (int j = 0; j < G; ++j) {
      for (long s = 0; s < n; ++s) M(s, c + j) = draws.gamma(s, j);
    }
    c += G;
  }
  return M;
}

void write_draws(const PosteriorDraws& draws, const fs::path& dir, bool binary) {
  const auto header = draws_header(draws);
  const Eigen::MatrixXd M = draws_matrix(draws);
  if (binary) {
    std::ofstream out(dir / "draws.bin", std::ios::binary);
    if (!out) throw IoError("cannot write draws.bin");
    const char magic[8] = {'B', 'M', 'D', 'R', 'W', 'S', '0', '1'};
    const std::int64_t rows = M.rows(), cols = M.cols();
    out.write(magic, 8);
    out.write(reinterpret_cast<const char*>(&rows), 8);
    out.write(reinterpret_cast<const char*>(&cols), 8);
    for (long s = 0; s < M.rows(); ++s) {
      for (long j = 0; j < M.cols(); ++j) {
        const double v = M(s, j);
        out.write(reinterpret_cast<const char*>(&v), 8);
      }
    }
    if (!out) throw IoError("failed writing draws.bin");
    return;
  }
  std::vector<std::vector<std::string>> rows(M.rows());
  for (long s = 0; s < M.rows(); ++s) {
    rows[s].reserve(M.cols());
    for (long j = 0; j < M.cols(); ++j) rows[s].push_back(format_double(M(s, j)));
  }
  write_csv((dir / "draws.csv").string(), header, rows);
}

struct FitResult {
  PosteriorDraws draws;
  Eigen::MatrixXd beta_draws;
  SelectionReport selection;
  std::vector<int> selected_predictors;  // per predictor 0/1
  Eigen::VectorXd inclusion_prob;        // per predictor
};

FitResult fit_panel(const MixedFreqPanel& panel, const RunConfig& cfg,
                    RngHandle& rng, const Eigen::MatrixXd* unpen) {
  const ModelSpec spec = parse_model(cfg.model);
  const AlmonBasis basis = almon_basis(cfg.p, cfg.C, cfg.r);
  DesignOptions opts;
  opts.grouping = spec.grouping;
  const DesignMatrix design = build_design(panel, basis, unpen, opts);
  GibbsSampler sampler(design, spec.model, make_hyperparams(cfg), make_sa_config(cfg));

  FitResult res;
  res.draws = sampler.run(make_schedule(cfg), rng);
  res.beta_draws = recover_slopes(res.draws.theta, res.draws.col_sds, basis,
                                  design.n_predictors);

  const int K = design.n_predictors;
  const int g = basis.free_params();
  res.inclusion_prob = Eigen::VectorXd::Ones(K);
  if (spec.model == Model::agl_ss) {
    res.selection = select_posterior_median(res.draws.theta, res.draws.groups);
    if (spec.grouping == Grouping::by_predictor) {
      res.selected_predictors = res.selection.included;
      res.inclusion_prob = res.selection.inclusion_prob;
    } else {
      res.selected_predictors.assign(K, 0);
      for (int k = 0; k < K; ++k) {
        double p_any = 0.0;
        for (int i = 0; i < g; ++i) {
          if (res.selection.included[k * g + i]) res.selected_predictors[k] = 1;
          p_any = std::max(p_any, res.selection.inclusion_prob[k * g + i]);
        }
        res.inclusion_prob[k] = p_any;
      }
    }
  } else {
    res.selection = select_credible_interval(res.beta_draws, cfg.level);
    res.selected_predictors = res.selection.included;
  }
  return res;
}

void write_selection(const FitResult& fit, const RunConfig& cfg,
                     const std::vector<std::string>& names, const fs::path& dir) {
  std::vector<std::vector<std::string>> rows;
  const double alpha = (1.0 - cfg.level) / 2.0;
  for (long k = 0; k < fit.beta_draws.cols(); ++k) {
    const std::string name =
        k < static_cast<long>(names.size()) ? names[k] : "x" + std::to_string(k + 1);
    rows.push_back({std::to_string(k + 1), name,
                    std::to_string(fit.selected_predictors[k]),
                    format_double(fit.inclusion_prob[k]),
                    format_double(fit.beta_draws.col(k).mean()),
                    format_double(sample_quantile(fit.beta_draws.col(k), 0.5)),
                    format_double(sample_quantile(fit.beta_draws.col(k), alpha)),
                    format_double(sample_quantile(fit.beta_draws.col(k), 1.0 - alpha))});
  }
  write_csv((dir / "selection.csv").string(),
            {"predictor", "name", "included", "inclusion_prob", "beta_mean",
             "beta_median", "beta_lo", "beta_hi"},
            rows);
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const DgpConfig dgp = make_dgp_config(cfg);
  RngHandle rng(cfg.seed, 0);
  const SimulatedDataset ds = generate_dataset(dgp, rng);
  write_panel(ds.panel, (dir / "y.csv").string(), (dir / "x.csv").string());

  json truth;
  truth["beta_true"] = std::vector<double>(ds.beta_true.data(),
                                           ds.beta_true.data() + ds.beta_true.size());
  truth["sigma_used"] = ds.sigma_used;
  truth["weights_used"] = std::vector<double>(
      ds.weights_used.data(), ds.weights_used.data() + ds.weights_used.size());
  write_json(truth, dir / "truth.json");
  write_manifest(cfg, dir,
                 json{{"periods", ds.panel.n_obs()},
                      {"hf_obs", ds.panel.x.cols()},
                      {"sigma_used", ds.sigma_used}});
  std::cout << "simulate: wrote " << ds.panel.n_obs() << " periods, K = "
            << ds.panel.n_predictors() << ", sigma = " << ds.sigma_used << "\n";
  return 0;
}

int cmd_fit(const RunConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const MixedFreqPanel panel =
      ingest_csv(cfg.y_path, cfg.x_path, cfg.m, cfg.C, cfg.h, cfg.tail);
  std::optional<Eigen::MatrixXd> unpen;
  if (!cfg.unpenalized_path.empty()) {
    unpen = read_covariates(cfg.unpenalized_path, panel.n_obs());
  }
  RngHandle rng(cfg.seed, 0);
  const FitResult fit =
      fit_panel(panel, cfg, rng, unpen ? &*unpen : nullptr);

  write_draws(fit.draws, dir, cfg.binary_draws);
  write_selection(fit, cfg, panel.x_names, dir);

  json extra;
  extra["n_draws"] = fit.draws.n_draws();
  extra["h_steps"] = panel.h_steps;
  extra["groups"] = fit.draws.groups.size();
  extra["beta_prior_c"] = make_hyperparams(cfg).resolved_c(
      static_cast<int>(fit.draws.groups.size()));
  extra["sa_restarts"] = fit.draws.sa_restarts;
  extra["draws_columns"] = draws_header(fit.draws);
  write_manifest(cfg, dir, extra);

  std::cout << "fit: " << cfg.model << ", " << fit.draws.n_draws()
            << " stored draws, selected predictors:";
  for (std::size_t k = 0; k < fit.selected_predictors.size(); ++k) {
    if (fit.selected_predictors[k]) std::cout << " " << k + 1;
  }
  std::cout << "\n";
  return 0;
}

int cmd_forecast(const RunConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const MixedFreqPanel panel =
      ingest_csv(cfg.y_path, cfg.x_path, cfg.m, cfg.C, cfg.h, cfg.tail);
  if (cfg.holdout < 1 || cfg.holdout >= panel.n_obs()) {
    throw ConfigError("holdout must lie in [1, periods)");
  }
  const AlmonBasis basis = almon_basis(cfg.p, cfg.C, cfg.r);
  const int T = panel.n_obs();
  const int t_first = T - cfg.holdout;

  std::vector<ForecastRecord> records;
  std::vector<std::vector<std::string>> rows;
  std::optional<FitResult> fixed_fit;
  std::optional<DesignMatrix> fixed_design;

  for (int i = 0; i < cfg.holdout; ++i) {
    const int target = t_first + i;
    const int train_T = cfg.recursive ? target : t_first;
    RngHandle rng(cfg.seed, static_cast<std::uint64_t>(i));

    const ModelSpec spec = parse_model(cfg.model);
    DesignOptions opts;
    opts.grouping = spec.grouping;
    if (cfg.recursive || !fixed_fit) {
      const MixedFreqPanel train = truncated(panel, train_T);
      const DesignMatrix design = build_design(train, basis, nullptr, opts);
      GibbsSampler sampler(design, spec.model, make_hyperparams(cfg),
                           make_sa_config(cfg));
      FitResult fr;
      fr.draws = sampler.run(make_schedule(cfg), rng);
      fixed_fit = std::move(fr);
      fixed_design = design;
    }
    const Eigen::VectorXd z_raw = z_row_raw(panel, basis, target);
    const Eigen::VectorXd z_std = standardize_row(*fixed_design, z_raw);
    ForecastRecord rec = make_forecast_record(
        fixed_fit->draws, z_std, Eigen::VectorXd(), target,
        static_cast<double>(panel.h_steps) / panel.m, panel.y[target], rng);
    const double err = rec.point - *rec.realized;
    const std::string date = panel.y_dates.empty() ? std::to_string(target + 1)
                                                   : panel.y_dates[target];
    rows.push_back({std::to_string(target + 1), date, format_double(rec.horizon),
                    format_double(rec.point), format_double(*rec.realized),
                    format_double(err * err),
                    format_double(crps(rec.draws, *rec.realized)),
                    format_double(log_score(rec.draws, *rec.realized))});
    if (cfg.save_draws) {
      std::vector<std::vector<std::string>> drows(rec.draws.size());
      for (long s = 0; s < rec.draws.size(); ++s) {
        drows[s] = {format_double(rec.draws[s])};
      }
      write_csv((dir / ("predictive_draws_t" + std::to_string(target + 1) + ".csv"))
                    .string(),
                {"y_draw"}, drows);
    }
    records.push_back(std::move(rec));
  }

  write_csv((dir / "forecasts.csv").string(),
            {"target_index", "date", "horizon", "point", "realized", "sq_err",
             "crps", "log_score"},
            rows);

  const ForecastScores scores = score_forecasts(records);
  write_csv((dir / "scores.csv").string(),
            {"model", "n", "rmsfe", "avg_log_score", "avg_crps"},
            {{cfg.model, std::to_string(scores.n), format_double(scores.rmsfe),
              format_double(scores.avg_log_score), format_double(scores.avg_crps)}});
  write_manifest(cfg, dir, json{{"n_forecasts", scores.n}});

  std::cout << "forecast: " << scores.n << " dates, RMSFE = " << scores.rmsfe
            << ", avg LS = " << scores.avg_log_score
            << ", avg CRPS = " << scores.avg_crps << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const CsvTable a = read_csv(cfg.forecasts_a);
  const CsvTable b = read_csv(cfg.forecasts_b);
  if (a.rows.size() != b.rows.size() || a.rows.empty()) {
    throw ConfigError("evaluate: forecast files must cover the same dates");
  }
  std::string col;
  if (cfg.loss == "se") col = "sq_err";
  else if (cfg.loss == "crps") col = "crps";
  else if (cfg.loss == "ls") col = "log_score";
  else throw ConfigError("loss must be se, crps, or ls");

  const int ia = a.col(col), ib = b.col(col);
  const int ta = a.col("target_index"), tb = b.col("target_index");
  if (ia < 0 || ib < 0 || ta < 0 || tb < 0) {
    throw ConfigError("evaluate: forecast files lack required columns");
  }
  const long n = static_cast<long>(a.rows.size());
  Eigen::VectorXd la(n), lb(n);
  for (long t = 0; t < n; ++t) {
    if (a.rows[t][ta] != b.rows[t][tb]) {
      throw ConfigError("evaluate: target dates differ at row " + std::to_string(t + 2));
    }
    la[t] = parse_double(a.rows[t][ia], "losses a");
    lb[t] = parse_double(b.rows[t][ib], "losses b");
    if (cfg.loss == "ls") {  // higher log score is better; loss = -LS
      la[t] = -la[t];
      lb[t] = -lb[t];
    }
  }
  const double p = dmw_pvalue(la, lb, cfg.dmw_h_steps);

  auto col_mean = [](const Eigen::VectorXd& v) { return v.mean(); };
  write_csv((dir / "evaluation.csv").string(),
            {"loss", "h_steps", "n", "dmw_pvalue", "mean_loss_a", "mean_loss_b"},
            {{cfg.loss, std::to_string(cfg.dmw_h_steps), std::to_string(n),
              format_double(p), format_double(col_mean(la)),
              format_double(col_mean(lb))}});
  write_manifest(cfg, dir, json{{"dmw_pvalue", p}});
  std::cout << "evaluate: DMW one-sided p-value (" << cfg.loss << ", n = " << n
            << ") = " << p << "\n";
  return 0;
}

int cmd_montecarlo(const RunConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const DgpConfig dgp = make_dgp_config(cfg);
  const ModelSpec spec = parse_model(cfg.model);
  McSettings st;
  st.model = spec.model;
  st.grouping = spec.grouping;
  st.p = cfg.p;
  st.r = cfg.r;
  st.hp = make_hyperparams(cfg);
  st.sa = make_sa_config(cfg);
  st.schedule = make_schedule(cfg);
  st.ci_level = cfg.level;
  st.R = cfg.R;
  st.workers = cfg.workers;

  const McResult res = run_monte_carlo(dgp, st);

  write_csv((dir / "mc_metrics.csv").string(),
            {"model", "dgp", "K", "sigma_eps", "T", "R", "failures", "avg_sigma",
             "mse", "mse_active", "mse_inactive", "var", "bias2", "tpr", "fpr",
             "mcc"},
            {{cfg.model, std::to_string(cfg.dgp), std::to_string(cfg.K),
              format_double(cfg.sigma_eps), std::to_string(cfg.T),
              std::to_string(cfg.R), std::to_string(res.failures),
              format_double(res.avg_sigma), format_double(res.metrics.mse),
              format_double(res.metrics.mse_active),
              format_double(res.metrics.mse_inactive),
              format_double(res.metrics.var), format_double(res.metrics.bias2),
              format_double(res.metrics.tpr), format_double(res.metrics.fpr),
              format_double(res.metrics.mcc)}});

  write_csv((dir / "mc_scores.csv").string(),
            {"model", "n", "rmsfe", "avg_log_score", "avg_crps"},
            {{cfg.model, std::to_string(res.scores.n), format_double(res.scores.rmsfe),
              format_double(res.scores.avg_log_score),
              format_double(res.scores.avg_crps)}});

  std::vector<std::vector<std::string>> sel_rows;
  for (long k = 0; k < res.selection_rate.size(); ++k) {
    sel_rows.push_back({std::to_string(k + 1),
                        format_double(dgp.resolved_beta()[k]),
                        format_double(res.selection_rate[k])});
  }
  write_csv((dir / "mc_selection_rate.csv").string(),
            {"predictor", "beta_true", "selection_rate"}, sel_rows);

  write_manifest(cfg, dir,
                 json{{"failures", res.failures},
                      {"tpr", res.metrics.tpr},
                      {"fpr", res.metrics.fpr},
                      {"mcc", res.metrics.mcc}});

  std::printf(
      "montecarlo: model=%s dgp=%d K=%d sigma_eps=%.2f R=%d | TPR=%.3f FPR=%.3f "
      "MCC=%.3f MSE=%.3e (failures=%d)\n",
      cfg.model.c_str(), cfg.dgp, cfg.K, cfg.sigma_eps, cfg.R, res.metrics.tpr,
      res.metrics.fpr, res.metrics.mcc, res.metrics.mse, res.failures);
  return 0;
}

int run_command(const RunConfig& cfg) {
  try {
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "fit") return cmd_fit(cfg);
    if (cfg.command == "forecast") return cmd_forecast(cfg);
    if (cfg.command == "evaluate") return cmd_evaluate(cfg);
    if (cfg.command == "montecarlo") return cmd_montecarlo(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace bmidas::cli
