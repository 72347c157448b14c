#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "msgp/config.hpp"
#include "msgp/diagnostics.hpp"
#include "msgp/solver.hpp"

namespace fs = std::filesystem;
using namespace msgp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeAbort = 2;
constexpr int kExitAcceptanceFail = 3;

struct Options {
  std::string config_path;
  std::string out_override;
  int workers = 1;
  bool quiet = false;
};

std::ostream& info(const Options& opt) {
  static std::ofstream devnull;
  return opt.quiet ? devnull : std::cout;
}

/// Runs every seed, at most `workers` concurrently; results in seed order.
std::vector<RunRecord> run_seeds(const ExperimentConfig& cfg, int workers) {
  std::vector<RunRecord> records(cfg.seeds.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.seeds.size() || failed.load()) return;
      try {
        records[i] = run(cfg.solver, cfg.problem, cfg.seeds[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  const int k = std::max(1, std::min<int>(workers, static_cast<int>(cfg.seeds.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) throw std::runtime_error(first_error);
  return records;
}

std::string trajectory_path(const ExperimentConfig& cfg, std::uint64_t seed) {
  return cfg.output_dir + "/trajectory_seed" + std::to_string(seed) + ".csv";
}

void write_trajectories(const ExperimentConfig& cfg,
                        const std::vector<RunRecord>& records) {
  fs::create_directories(cfg.output_dir);
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::ofstream out(trajectory_path(cfg, cfg.seeds[i]));
    write_csv(records[i], cfg.problem.dimension, out);
  }
}

int cmd_run(const Options& opt) {
  ExperimentConfig cfg = load_config(opt.config_path);
  if (!opt.out_override.empty()) cfg.output_dir = opt.out_override;
  validate_config(cfg.solver, cfg.problem);

  const auto records = run_seeds(cfg, opt.workers);
  write_trajectories(cfg, records);

  std::ofstream summary(cfg.output_dir + "/summary.csv");
  summary << "seed";
  for (std::size_t d = 0; d < cfg.problem.dimension; ++d) summary << ",x_" << d;
  summary << ",y,z,iterations,clamp_events\n";
  std::ofstream log(cfg.output_dir + "/run.log");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& last = records[i].rows.back();
    summary << cfg.seeds[i];
    for (double xi : last.x) summary << "," << format_double(xi);
    summary << "," << format_double(last.y) << "," << format_double(last.z)
            << "," << records[i].iterations << "," << records[i].clamp_events
            << "\n";
    log << "seed " << cfg.seeds[i] << ": " << records[i].wall_seconds << " s\n";
  }
  info(opt) << "wrote " << records.size() << " trajectories + summary to "
            << cfg.output_dir << "\n";
  return kExitOk;
}

int cmd_validate(const Options& opt) {
  ExperimentConfig cfg = load_config(opt.config_path);
  bool all_pass = true;
  auto row = [&](const std::string& name, bool pass, const std::string& note) {
    all_pass = all_pass && pass;
    info(opt) << (pass ? "PASS  " : "FAIL  ") << name
              << (note.empty() ? "" : "  (" + note + ")") << "\n";
  };

  {
    const auto grid = make_grid(-10.0, 10.0, 0.05);
    const auto report = validate_axioms(cfg.solver.reg, grid, 1e-12);
    for (const auto& check : report.checks)
      row("regularizer " + check.name, check.pass,
          check.pass ? "" : "worst violation " + format_double(check.worst_violation));
  }

  if (cfg.exponents) {
    const auto rep = check_pathwise_feasible(*cfg.exponents, cfg.solver.p);
    std::string note;
    for (const auto& v : rep.violations) note += (note.empty() ? "" : "; ") + v;
    row("stepsize pathwise feasibility", rep.feasible, note);
  } else {
    row("stepsize pathwise feasibility", true, "non-subharmonic; not applicable");
  }

  if (cfg.solver.p > 1.0) {
    if (!cfg.problem.bounds) {
      row("bounded cost range", false, "p > 1 needs finite (m_l, m_h)");
    } else {
      row("bounded cost range", true, "");
      const auto [ml, mh] = *cfg.problem.bounds;
      const double eps = cfg.solver.reg.value(ml - mh);
      const bool eps_ok = eps > std::pow(cfg.solver.z_floor, 1.0 / cfg.solver.p);
      row("regularizer slack epsilon > 0", eps_ok,
          eps_ok ? "" : "R(m_l - m_h) = 0; apply slack_adjust");
      bool init_ok = true;
      std::string note;
      try {
        validate_config(cfg.solver, cfg.problem);
      } catch (const std::exception& e) {
        init_ok = false;
        note = e.what();
      }
      row("initial-value rules", init_ok, note);
    }
    RngStream rng(cfg.seeds.front(), 3);
    const auto kr = check_kappa_condition(cfg.problem, cfg.solver.reg,
                                          cfg.solver.p, 20000, 5, rng);
    row("cost mass above kappa_R", kr.pass, kr.detail);
  } else {
    bool init_ok = true;
    std::string note;
    try {
      validate_config(cfg.solver, cfg.problem);
    } catch (const std::exception& e) {
      init_ok = false;
      note = e.what();
    }
    row("solver configuration", init_ok, note);
  }

  return all_pass ? kExitOk : kExitAcceptanceFail;
}

int cmd_newsvendor(const Options& opt) {
  ExperimentConfig cfg = load_config(opt.config_path);
  if (!opt.out_override.empty()) cfg.output_dir = opt.out_override;
  if (!cfg.newsvendor_params || !cfg.newsvendor_cases)
    throw std::invalid_argument(
        "config: newsvendor command needs a newsvendor problem and a "
        "newsvendor_cases section");
  const auto& nc = *cfg.newsvendor_cases;

  struct Case {
    std::string name;
    double c;
    double p;
    RiskRegularizer reg;
  };
  const std::vector<Case> cases = {
      {"risk_neutral", 0.0, 1.0, positive_part()},
      {"nv_piecewise", nc.c, nc.p, nc.nv_reg},
      {"upper_semideviation", nc.c, nc.p, positive_part()},
  };

  const auto* interval = std::get_if<Interval>(&cfg.problem.feasible_set);
  if (!interval)
    throw std::invalid_argument("config: newsvendor feasible set must be 1-D");
  std::vector<Vec> grid;
  for (double x = interval->a; x <= interval->b + 1e-12; x += nc.grid_step)
    grid.push_back({std::min(x, interval->b)});

  fs::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir + "/newsvendor_comparison.csv");
  out << "case,final_x,oracle_x,oracle_value\n";

  std::vector<std::pair<std::string, double>> optima;
  for (const auto& cs : cases) {
    SolverConfig sc = cfg.solver;
    sc.c = cs.c;
    sc.p = cs.p;
    sc.reg = cs.reg;
    const RunRecord rec = run(sc, cfg.problem, cfg.seeds.front());
    const double final_x = rec.rows.back().xs[0];
    const auto [xs, value] = grid_oracle(cfg.problem, cs.reg, cs.p, cs.c, grid,
                                         nc.oracle_samples, nc.oracle_seed);
    out << cs.name << "," << format_double(final_x) << ","
        << format_double(xs[0]) << "," << format_double(value) << "\n";
    optima.emplace_back(cs.name, xs[0]);
    info(opt) << cs.name << ": solver " << final_x << ", oracle " << xs[0]
              << "\n";
  }

  auto sorted = optima;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  info(opt) << "ordering of optima:";
  for (const auto& [name, x] : sorted) info(opt) << " " << name;
  info(opt) << "\n";
  return kExitOk;
}

int cmd_rate(const Options& opt) {
  ExperimentConfig cfg = load_config(opt.config_path);
  if (!opt.out_override.empty()) cfg.output_dir = opt.out_override;
  if (!cfg.rate) throw std::invalid_argument("config: missing rate section");
  if (cfg.seeds.size() < 10)
    throw std::invalid_argument("config: rate command needs >= 10 seeds");
  if (!cfg.predicted_exponent)
    throw std::invalid_argument(
        "config: rate command needs a schedule preset with a predicted "
        "exponent");
  validate_config(cfg.solver, cfg.problem);

  Vec x_star;
  if (cfg.rate->x_star) {
    x_star = *cfg.rate->x_star;
  } else if (cfg.newsvendor_params && cfg.solver.c == 0.0) {
    x_star = {newsvendor_closed_form(*cfg.newsvendor_params)};
  } else {
    throw std::invalid_argument(
        "config: rate.x_star required unless the optimum has a closed form");
  }

  const auto records = run_seeds(cfg, opt.workers);

  int n_min = cfg.rate->n_min;
  if (n_min <= 0 && cfg.exponents) n_min = rate_onset(cfg.exponents->tau2);
  n_min = std::max(n_min, cfg.solver.record_every);
  const int re = cfg.solver.record_every;
  auto raw = log_checkpoints(n_min, cfg.solver.horizon, cfg.rate->checkpoints);
  std::vector<int> checkpoints;
  for (int n : raw) {
    const int r = std::max(((n + re / 2) / re) * re, re);
    if (r <= cfg.solver.horizon &&
        (checkpoints.empty() || r > checkpoints.back()))
      checkpoints.push_back(r);
  }

  const auto table = estimate_solution_error(records, x_star, checkpoints,
                                             cfg.rate->use_smoothed);
  const SlopeFit fit = fit_loglog_slope(table, n_min);
  const double theory = *cfg.predicted_exponent;
  const bool pass = fit.slope <= -(theory - cfg.rate->slack);

  fs::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir + "/rate_summary.csv");
  out << "slope,theory_exponent,slack,r_squared,n_min,n_max,pass\n";
  out << format_double(fit.slope) << "," << format_double(theory) << ","
      << format_double(cfg.rate->slack) << "," << format_double(fit.r_squared)
      << "," << fit.n_range.first << "," << fit.n_range.second << ","
      << (pass ? 1 : 0) << "\n";
  std::ofstream tbl(cfg.output_dir + "/rate_table.csv");
  tbl << "n,mean_sq_error,std_error\n";
  for (const auto& row : table)
    tbl << row.n << "," << format_double(row.mean_sq_error) << ","
        << format_double(row.std_error) << "\n";

  info(opt) << "fitted slope " << fit.slope << " vs theory -" << theory
            << " (slack " << cfg.rate->slack << "): "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitAcceptanceFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MESSAGE^p mean-semideviation experiment runner"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const char* name : {"run", "validate", "newsvendor", "rate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", opt.config_path, "experiment config (JSON)")
        ->required();
    sub->add_option("--out", opt.out_override, "output directory override");
    sub->add_option("--workers", opt.workers, "concurrent seed runs");
    sub->add_flag("--quiet", opt.quiet, "suppress progress output");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (command == "run") return cmd_run(opt);
    if (command == "validate") return cmd_validate(opt);
    if (command == "newsvendor") return cmd_newsvendor(opt);
    return cmd_rate(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "runtime abort: " << e.what() << "\n";
    return kExitRuntimeAbort;
  }
}
