#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bmidas/errors.hpp"
#include "cli/commands.hpp"
#include "cli/csv.hpp"
#include "cli/ingest.hpp"

using namespace bmidas;
using namespace bmidas::cli;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = BMIDAS_FIXTURE_DIR;

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("bmidas_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out);
  out << text;
}

}  // namespace

TEST_CASE("quarterly/monthly toy fixture aligns with no row loss at C = 3") {
  const MixedFreqPanel panel =
      ingest_csv(kFixtures + "/toy_y.csv", kFixtures + "/toy_x.csv", 3, 3, 0.0);
  CHECK(panel.n_obs() == 8);
  CHECK(panel.n_predictors() == 2);
  CHECK(panel.head() == 0);
  CHECK(panel.first_usable() == 0);
  // lag-0 of the first quarter is the March observation
  CHECK(panel.x(0, panel.lag0_index(0)) == doctest::Approx(0.2));
}

TEST_CASE("ingest -> serialize -> ingest round trip is exact") {
  const MixedFreqPanel a =
      ingest_csv(kFixtures + "/toy_y.csv", kFixtures + "/toy_x.csv", 3, 3, 0.0);
  const fs::path dir = temp_dir("roundtrip");
  write_panel(a, (dir / "y.csv").string(), (dir / "x.csv").string());
  const MixedFreqPanel b =
      ingest_csv((dir / "y.csv").string(), (dir / "x.csv").string(), 3, 3, 0.0);
  CHECK(b.y_dates == a.y_dates);
  CHECK(b.x_dates == a.x_dates);
  CHECK(b.x_names == a.x_names);
  CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ingest rejects bad panels") {
  const fs::path dir = temp_dir("badpanels");
  SUBCASE("missing value names the cell") {
    write_file(dir / "y.csv", "date,y\n1,0.5\n2,\n3,1.0\n");
    write_file(dir / "x.csv", "date,x1\n1,0.1\n2,0.2\n3,0.3\n");
    try {
      (void)ingest_csv((dir / "y.csv").string(), (dir / "x.csv").string(), 1, 2, 0.0);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("row 3") != std::string::npos);
      CHECK(msg.find("column y") != std::string::npos);
    }
  }
  SUBCASE("duplicate dates") {
    write_file(dir / "y.csv", "date,y\n1,0.5\n1,0.7\n");
    write_file(dir / "x.csv", "date,x1\n1,0.1\n2,0.2\n");
    CHECK_THROWS_AS((void)ingest_csv((dir / "y.csv").string(),
                                     (dir / "x.csv").string(), 1, 2, 0.0),
                    ConfigError);
  }
  SUBCASE("frequency mismatch") {
    write_file(dir / "y.csv", "date,y\n1,0.5\n2,0.7\n3,0.2\n4,0.9\n");
    write_file(dir / "x.csv", "date,x1\n1,0.1\n2,0.2\n3,0.3\n");  // needs 12 at m=3
    try {
      (void)ingest_csv((dir / "y.csv").string(), (dir / "x.csv").string(), 3, 2, 0.0);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("frequency mismatch") != std::string::npos);
    }
  }
  SUBCASE("off-grid horizon") {
    CHECK_THROWS_AS((void)ingest_csv(kFixtures + "/toy_y.csv",
                                     kFixtures + "/toy_x.csv", 3, 3, 0.4),
                    ConfigError);
    const MixedFreqPanel p = ingest_csv(kFixtures + "/toy_y.csv",
                                        kFixtures + "/toy_x.csv", 3, 3, 1.0 / 3.0);
    CHECK(p.h_steps == 1);
  }
  SUBCASE("unreadable file is an io error") {
    CHECK_THROWS_AS((void)read_csv((dir / "absent.csv").string()), IoError);
  }
}

TEST_CASE("fit command is byte-deterministic and writes complete artifacts") {
  const fs::path data = temp_dir("fitdata");
  RunConfig sim;
  sim.command = "simulate";
  sim.K = 3;
  sim.T = 60;
  sim.C = 6;
  sim.dgp = 1;
  sim.extra_rows = 0;
  sim.seed = 11;
  sim.out_dir = (data / "sim").string();
  REQUIRE(run_command(sim) == 0);

  auto make_fit = [&](const std::string& tag) {
    RunConfig fit;
    fit.command = "fit";
    fit.y_path = (data / "sim" / "y.csv").string();
    fit.x_path = (data / "sim" / "x.csv").string();
    fit.model = "agl_ss";
    fit.m = 3;
    fit.C = 6;
    fit.p = 3;
    fit.r = 2;
    fit.iterations = 600;
    fit.burn_in = 300;
    fit.thin = 3;
    fit.seed = 12;
    fit.out_dir = (data / tag).string();
    return fit;
  };
  REQUIRE(run_command(make_fit("fit1")) == 0);
  REQUIRE(run_command(make_fit("fit2")) == 0);

  CHECK(slurp(data / "fit1" / "draws.csv") == slurp(data / "fit2" / "draws.csv"));
  CHECK(slurp(data / "fit1" / "selection.csv") ==
        slurp(data / "fit2" / "selection.csv"));

  const CsvTable draws = read_csv((data / "fit1" / "draws.csv").string());
  CHECK(draws.rows.size() == 100);
  CHECK(draws.col("theta_g1_1") == 0);
  CHECK(draws.col("sigma2") >= 0);
  CHECK(draws.col("pi0") >= 0);
  CHECK(draws.col("gamma_3") >= 0);
  CHECK(draws.col("lambda_1") >= 0);

  const CsvTable sel = read_csv((data / "fit1" / "selection.csv").string());
  CHECK(sel.rows.size() == 3);
  CHECK(sel.col("included") >= 0);
  CHECK(sel.col("inclusion_prob") >= 0);

  CHECK(fs::exists(data / "fit1" / "manifest.json"));
  CHECK(fs::exists(data / "fit1" / "resolved.cfg"));
}

TEST_CASE("binary draw persistence") {
  const fs::path data = temp_dir("binfit");
  RunConfig sim;
  sim.command = "simulate";
  sim.K = 2;
  sim.T = 40;
  sim.C = 6;
  sim.extra_rows = 0;
  sim.seed = 21;
  sim.out_dir = (data / "sim").string();
  REQUIRE(run_command(sim) == 0);

  RunConfig fit;
  fit.command = "fit";
  fit.y_path = (data / "sim" / "y.csv").string();
  fit.x_path = (data / "sim" / "x.csv").string();
  fit.model = "agl";
  fit.m = 3;
  fit.C = 6;
  fit.iterations = 200;
  fit.burn_in = 100;
  fit.thin = 2;
  fit.seed = 22;
  fit.binary_draws = true;
  fit.out_dir = (data / "fit").string();
  REQUIRE(run_command(fit) == 0);

  std::ifstream in(data / "fit" / "draws.bin", std::ios::binary);
  REQUIRE(in);
  char magic[8];
  std::int64_t rows = 0, cols = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&rows), 8);
  in.read(reinterpret_cast<char*>(&cols), 8);
  CHECK(std::string(magic, 8) == "BMDRWS01");
  CHECK(rows == 50);
  // theta(4) + tau2(2) + sigma2 + lambda(2), no spike columns for agl
  CHECK(cols == 9);
}

TEST_CASE("exit codes map error classes") {
  RunConfig bad;
  bad.command = "fit";
  bad.y_path = "/nonexistent/y.csv";
  bad.x_path = "/nonexistent/x.csv";
  bad.out_dir = (fs::temp_directory_path() / "bmidas_test_exit").string();
  CHECK(run_command(bad) == 4);  // unreadable input

  RunConfig unknown = bad;
  unknown.command = "transmogrify";
  CHECK(run_command(unknown) == 2);

  const fs::path data = temp_dir("exitcfg");
  RunConfig cfg;
  cfg.command = "montecarlo";
  cfg.model = "unheard_of";
  cfg.out_dir = (data / "out").string();
  CHECK(run_command(cfg) == 2);
}

TEST_CASE("forecast and evaluate pipeline") {
  const fs::path data = temp_dir("fcast");
  RunConfig sim;
  sim.command = "simulate";
  sim.K = 3;
  sim.T = 70;
  sim.C = 6;
  sim.extra_rows = 0;
  sim.seed = 31;
  sim.out_dir = (data / "sim").string();
  REQUIRE(run_command(sim) == 0);

  auto forecast_cfg = [&](const std::string& model, const std::string& tag) {
    RunConfig fc;
    fc.command = "forecast";
    fc.y_path = (data / "sim" / "y.csv").string();
    fc.x_path = (data / "sim" / "x.csv").string();
    fc.model = model;
    fc.m = 3;
    fc.C = 6;
    fc.iterations = 400;
    fc.burn_in = 200;
    fc.thin = 2;
    fc.holdout = 8;
    fc.recursive = false;
    fc.seed = 32;
    fc.out_dir = (data / tag).string();
    return fc;
  };
  REQUIRE(run_command(forecast_cfg("agl_ss", "f_ss")) == 0);
  REQUIRE(run_command(forecast_cfg("agl", "f_agl")) == 0);

  const CsvTable fc = read_csv((data / "f_ss" / "forecasts.csv").string());
  CHECK(fc.rows.size() == 8);
  CHECK(fc.col("crps") >= 0);
  CHECK(fc.col("log_score") >= 0);

  RunConfig ev;
  ev.command = "evaluate";
  ev.forecasts_a = (data / "f_ss" / "forecasts.csv").string();
  ev.forecasts_b = (data / "f_agl" / "forecasts.csv").string();
  ev.loss = "crps";
  ev.dmw_h_steps = 1;
  ev.out_dir = (data / "eval").string();
  REQUIRE(run_command(ev) == 0);
  const CsvTable table = read_csv((data / "eval" / "evaluation.csv").string());
  REQUIRE(table.rows.size() == 1);
  const double p = parse_double(table.rows[0][table.col("dmw_pvalue")], "p");
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
}

TEST_CASE("montecarlo command writes aggregate tables") {
  const fs::path data = temp_dir("mccmd");
  RunConfig mc;
  mc.command = "montecarlo";
  mc.dgp = 1;
  mc.K = 4;
  mc.T = 50;
  mc.C = 6;
  mc.R = 2;
  mc.workers = 2;
  mc.iterations = 300;
  mc.burn_in = 150;
  mc.thin = 3;
  mc.seed = 41;
  mc.model = "agl_ss";
  mc.out_dir = (data / "mc").string();
  REQUIRE(run_command(mc) == 0);
  const CsvTable metrics = read_csv((data / "mc" / "mc_metrics.csv").string());
  REQUIRE(metrics.rows.size() == 1);
  CHECK(metrics.col("tpr") >= 0);
  CHECK(metrics.col("mcc") >= 0);
  const CsvTable rates = read_csv((data / "mc" / "mc_selection_rate.csv").string());
  CHECK(rates.rows.size() == 4);
  CHECK(fs::exists(data / "mc" / "mc_scores.csv"));
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789, -2.5e300}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}
