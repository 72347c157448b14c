#include "msgp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace msgp {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

DemandDistribution parse_demand(const json& j) {
  const std::string name = need(j, "name").get<std::string>();
  if (name == "uniform")
    return uniform_demand(need(j, "a").get<double>(), need(j, "b").get<double>());
  if (name == "rayleigh") return rayleigh_demand(need(j, "scale").get<double>());
  if (name == "exponential")
    return exponential_demand(need(j, "rate").get<double>());
  bad("unknown demand distribution '" + name + "'");
}

NewsvendorParams parse_newsvendor_params(const json& j) {
  NewsvendorParams params{need(j, "Kp").get<double>(),
                          need(j, "Ku").get<double>(),
                          need(j, "Kh").get<double>(),
                          need(j, "alpha").get<double>(),
                          need(j, "h").get<double>(),
                          parse_demand(need(j, "demand"))};
  return params;
}

RiskRegularizer parse_regularizer(const json& j) {
  const std::string name = need(j, "name").get<std::string>();
  if (name == "positive_part") return positive_part();
  if (name == "entropic") return entropic(need(j, "t").get<double>());
  if (name == "gaussian_antiderivative") return gaussian_antiderivative();
  if (name == "newsvendor_piecewise")
    return newsvendor_piecewise(
        need(j, "psi1").get<double>(), need(j, "psi2").get<double>(),
        need(j, "t1").get<double>(), need(j, "t2").get<double>(),
        need(j, "Ku").get<double>());
  if (name == "slack_adjust")
    return slack_adjust(parse_regularizer(need(j, "base")),
                        need(j, "eta").get<double>());
  bad("unknown regularizer '" + name + "'");
}

StepsizeSchedule parse_schedule(const json& j) {
  StepsizeSchedule s;
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "subharmonic") {
    s.rule = Subharmonic{need(j, "tau").get<double>(),
                         j.value("initial", 1.0)};
  } else if (kind == "strongly_convex_alpha") {
    s.rule = StronglyConvexAlpha{need(j, "sigma").get<double>()};
  } else if (kind == "constant") {
    s.rule = Constant{need(j, "value").get<double>()};
  } else {
    bad("unknown schedule kind '" + kind + "'");
  }
  return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("parse error: ") + e.what());
  }

  ExperimentConfig cfg;

  const json& pj = need(j, "problem");
  const std::string pname = need(pj, "name").get<std::string>();
  if (pname == "quadratic_1d") {
    cfg.problem = quadratic_1d(
        need(pj, "sigma").get<double>(), need(pj, "noise_scale").get<double>(),
        need(pj, "lo").get<double>(), need(pj, "hi").get<double>());
  } else if (pname == "newsvendor") {
    cfg.newsvendor_params = parse_newsvendor_params(pj);
    cfg.problem = newsvendor(*cfg.newsvendor_params);
  } else {
    bad("unknown problem '" + pname + "'");
  }

  cfg.solver.reg = parse_regularizer(need(j, "regularizer"));
  cfg.solver.p = need(j, "p").get<double>();
  cfg.solver.c = need(j, "c").get<double>();
  if (!(cfg.solver.c >= 0.0 && cfg.solver.c <= 1.0))
    bad("c must lie in [0, 1]");
  if (!(cfg.solver.p >= 1.0)) bad("p must be >= 1");

  cfg.sigma = cfg.problem.strong_convexity.value_or(1.0);
  const json& sj = need(j, "schedules");
  if (sj.contains("preset")) {
    const std::string preset = sj["preset"].get<std::string>();
    const double eps = sj.value("epsilon", 0.0);
    const double delta = sj.value("delta", 0.5);
    if (preset == "sc-eps") {
      if (sj.contains("sigma")) cfg.sigma = sj["sigma"].get<double>();
      SchedulePreset sp =
          strongly_convex_preset(cfg.solver.p, cfg.sigma, eps, delta);
      cfg.solver.alpha = sp.alpha;
      cfg.solver.beta = sp.beta;
      cfg.solver.gamma = sp.gamma;
      cfg.exponents = sp.exponents;
      cfg.predicted_exponent = sp.predicted_exponent;
    } else if (preset == "convex-eps") {
      const double zeta = sj.value("zeta", 0.5 * delta);
      ExponentTriple t =
          convex_preset_exponents(cfg.solver.p, eps, delta, zeta);
      cfg.solver.alpha.rule = Subharmonic{t.tau1, 1.0};
      cfg.solver.beta.rule = Subharmonic{t.tau2, 1.0};
      cfg.solver.gamma.rule = cfg.solver.p > 1.0
                                  ? StepsizeSchedule{Subharmonic{t.tau3, 1.0}}.rule
                                  : StepsizeSchedule{Constant{1.0}}.rule;
      cfg.exponents = t;
      cfg.predicted_exponent = convex_rate_exponent(t, cfg.solver.p);
    } else {
      bad("unknown schedule preset '" + preset + "'");
    }
  } else {
    cfg.solver.alpha = parse_schedule(need(sj, "alpha"));
    cfg.solver.beta = parse_schedule(need(sj, "beta"));
    cfg.solver.gamma = sj.contains("gamma") ? parse_schedule(sj["gamma"])
                                            : StepsizeSchedule{Constant{1.0}};
    ExponentTriple t;
    bool all_subharmonic = true;
    auto tau_of = [&all_subharmonic](const StepsizeSchedule& s) {
      if (const auto* sub = std::get_if<Subharmonic>(&s.rule)) return sub->tau;
      all_subharmonic = false;
      return 0.0;
    };
    t.tau1 = tau_of(cfg.solver.alpha);
    t.tau2 = tau_of(cfg.solver.beta);
    t.tau3 = tau_of(cfg.solver.gamma);
    if (all_subharmonic) cfg.exponents = t;
  }

  cfg.solver.x0 = need(j, "x0").get<Vec>();
  cfg.solver.y0 = j.value("y0", 0.0);
  cfg.solver.z0 = j.value("z0", 1.0);
  cfg.solver.horizon = need(j, "horizon").get<int>();
  cfg.solver.record_every = j.value("record_every", 1);
  cfg.solver.smoothing = j.value("smoothing", false);
  cfg.solver.z_floor = j.value("z_floor", 1e-12);

  cfg.seeds = need(j, "seeds").get<std::vector<std::uint64_t>>();
  if (cfg.seeds.empty()) bad("seeds must be nonempty");
  cfg.output_dir = j.value("output_dir", std::string("out"));

  if (j.contains("rate")) {
    const json& rj = j["rate"];
    ExperimentConfig::RateSection rate;
    if (rj.contains("x_star")) rate.x_star = rj["x_star"].get<Vec>();
    rate.slack = rj.value("slack", 0.2);
    rate.n_min = rj.value("n_min", 0);
    rate.checkpoints = rj.value("checkpoints", 12);
    rate.use_smoothed = rj.value("use_smoothed", false);
    cfg.rate = rate;
  }

  if (j.contains("newsvendor_cases")) {
    const json& nj = j["newsvendor_cases"];
    if (!cfg.newsvendor_params)
      bad("newsvendor_cases requires the newsvendor problem");
    ExperimentConfig::NewsvendorSection nc;
    nc.c = nj.value("c", 0.5);
    nc.p = nj.value("p", 1.0);
    nc.nv_reg = nj.contains("nv_reg")
                    ? parse_regularizer(nj["nv_reg"])
                    : newsvendor_piecewise(0.25, 0.5, 0.1, 0.2,
                                           cfg.newsvendor_params->Ku);
    nc.grid_step = nj.value("grid_step", 2e-3);
    nc.oracle_samples = nj.value("oracle_samples", 200000);
    nc.oracle_seed = nj.value("oracle_seed", std::uint64_t{99});
    cfg.newsvendor_cases = nc;
  }

  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace msgp
