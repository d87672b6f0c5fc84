#include "rsfd/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rsfd {
namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

const std::set<std::string> kExperiments{"solve",      "convergence-temporal",
                                         "convergence-spatial", "iterations",
                                         "spectrum",   "stability"};

CoefficientExpr parse_coefficient(const json& j) {
  require_keys(j, {"quadratic", "exp_decay", "constant", "scale"}, "coefficient");
  CoefficientExpr expr;
  expr.quadratic = j.value("quadratic", std::vector<double>{});
  expr.exp_decay = j.value("exp_decay", 0.0);
  expr.constant = j.value("constant", 0.0);
  expr.scale = j.value("scale", 1.0);
  return expr;
}

json coefficient_to_json(const CoefficientExpr& expr) {
  return json{{"quadratic", expr.quadratic},
              {"exp_decay", expr.exp_decay},
              {"constant", expr.constant},
              {"scale", expr.scale}};
}

ProblemConfig parse_problem(const json& j) {
  ProblemConfig p;
  if (j.contains("name")) {
    require_keys(j, {"name", "alphas"}, "problem");
    p.name = j.at("name").get<std::string>();
    p.alphas = j.at("alphas").get<std::vector<double>>();
    return p;
  }
  require_keys(j,
               {"alphas", "domain", "diffusion", "final_time", "exact", "coefficient"},
               "problem");
  p.alphas = j.at("alphas").get<std::vector<double>>();
  const json& dom = j.at("domain");
  require_keys(dom, {"lower", "upper"}, "problem.domain");
  p.lower = dom.at("lower").get<std::vector<double>>();
  p.upper = dom.at("upper").get<std::vector<double>>();
  p.diffusion = j.at("diffusion").get<std::vector<double>>();
  p.final_time = j.at("final_time").get<double>();
  const json& exact = j.at("exact");
  require_keys(exact, {"scale", "polynomials"}, "problem.exact");
  p.exact_scale = exact.at("scale").get<double>();
  p.exact_polynomials = exact.at("polynomials").get<std::vector<std::vector<double>>>();
  p.coefficient = parse_coefficient(j.at("coefficient"));
  return p;
}

json problem_to_json(const ProblemConfig& p) {
  if (!p.name.empty()) return json{{"name", p.name}, {"alphas", p.alphas}};
  return json{{"alphas", p.alphas},
              {"domain", {{"lower", p.lower}, {"upper", p.upper}}},
              {"diffusion", p.diffusion},
              {"final_time", p.final_time},
              {"exact", {{"scale", p.exact_scale}, {"polynomials", p.exact_polynomials}}},
              {"coefficient", coefficient_to_json(p.coefficient)}};
}

GridConfig parse_grid(const json& j) {
  require_keys(j, {"n", "M"}, "grid");
  GridConfig g;
  g.interior = j.at("n").get<std::vector<int>>();
  g.time_steps = j.at("M").get<int>();
  return g;
}

json grid_to_json(const GridConfig& g) {
  return json{{"n", g.interior}, {"M", g.time_steps}};
}

SolverConfig parse_solver(const json& j) {
  require_keys(j, {"method", "preconditioner", "tol", "maxit", "average"}, "solver");
  SolverConfig s;
  s.method = j.value("method", std::string("pcg"));
  s.preconditioner = j.value("preconditioner", std::string("tau"));
  s.tol = j.value("tol", 1e-9);
  s.maxit = j.value("maxit", 0);
  s.average = j.value("average", std::string("arithmetic"));
  if (s.method != "cg" && s.method != "pcg")
    throw std::invalid_argument("config: solver method must be cg or pcg");
  if (s.method == "cg") s.preconditioner = "none";
  const std::set<std::string> pcs{"tau", "strang", "chan", "none"};
  if (!pcs.contains(s.preconditioner))
    throw std::invalid_argument("config: unknown preconditioner '" + s.preconditioner + "'");
  if (s.average != "arithmetic" && s.average != "geometric")
    throw std::invalid_argument("config: average must be arithmetic or geometric");
  return s;
}

json solver_to_json(const SolverConfig& s) {
  return json{{"method", s.method},
              {"preconditioner", s.preconditioner},
              {"tol", s.tol},
              {"maxit", s.maxit},
              {"average", s.average}};
}

}  // namespace

SpaceTimeFn CoefficientExpr::function() const {
  CoefficientExpr expr = *this;
  return [expr](std::span<const double> x, double t) {
    double v = expr.constant + expr.exp_decay * std::exp(-t);
    for (size_t i = 0; i < expr.quadratic.size() && i < x.size(); ++i)
      v += expr.quadratic[i] * x[i] * x[i];
    return expr.scale * v;
  };
}

ExperimentConfig parse_config(const json& j) {
  require_keys(j,
               {"experiment", "problem", "grids", "solvers", "levels",
                "stability_steps", "output_dir"},
               "top level");
  ExperimentConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  if (!kExperiments.contains(c.experiment))
    throw std::invalid_argument("config: unknown experiment '" + c.experiment + "'");
  c.problem = parse_problem(j.at("problem"));
  for (const json& g : j.at("grids")) c.grids.push_back(parse_grid(g));
  if (c.grids.empty()) throw std::invalid_argument("config: need at least one grid");
  if (j.contains("solvers"))
    for (const json& s : j.at("solvers")) c.solvers.push_back(parse_solver(s));
  if (c.solvers.empty()) c.solvers.push_back(SolverConfig{});
  c.levels = j.value("levels", 1);
  if (c.levels < 1) throw std::invalid_argument("config: levels must be positive");
  c.stability_steps = j.value("stability_steps", std::vector<int>{});
  c.output_dir = j.value("output_dir", std::string("out"));
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json grids = json::array();
  for (const auto& g : c.grids) grids.push_back(grid_to_json(g));
  json solvers = json::array();
  for (const auto& s : c.solvers) solvers.push_back(solver_to_json(s));
  return json{{"experiment", c.experiment},
              {"problem", problem_to_json(c.problem)},
              {"grids", grids},
              {"solvers", solvers},
              {"levels", c.levels},
              {"stability_steps", c.stability_steps},
              {"output_dir", c.output_dir}};
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json j;
  in >> j;
  return parse_config(j);
}

ProblemSpec build_problem(const ProblemConfig& config) {
  if (config.name == "example1") return example1(config.alphas);
  if (config.name == "example2") return example2(config.alphas);
  if (!config.name.empty())
    throw std::invalid_argument("config: unknown problem '" + config.name + "'");

  std::vector<FractionalOrder> orders;
  for (double a : config.alphas) orders.emplace_back(a);
  SeparableExact exact{config.exact_scale, config.exact_polynomials};
  return make_manufactured(Domain(config.lower, config.upper), std::move(orders),
                           config.diffusion, config.final_time, std::move(exact),
                           config.coefficient.function());
}

MarchOptions build_march_options(const SolverConfig& config) {
  MarchOptions options;
  if (config.method == "cg" || config.preconditioner == "none") {
    options.precond = PrecondChoice::none;
  } else if (config.preconditioner == "tau") {
    options.precond = PrecondChoice::tau;
  } else if (config.preconditioner == "strang") {
    options.precond = PrecondChoice::strang;
  } else {
    options.precond = PrecondChoice::chan;
  }
  options.tol = config.tol;
  options.maxit = config.maxit;
  options.average =
      config.average == "geometric" ? AverageRule::geometric : AverageRule::arithmetic;
  return options;
}

std::string config_schema() {
  return R"(Experiment configuration (JSON object). Keys:

  experiment        one of: solve, convergence-temporal, convergence-spatial,
                    iterations, spectrum, stability
  problem           either a built-in:
                      {"name": "example1" | "example2", "alphas": [..]}
                    (alphas: one fractional order in (1,2) per dimension;
                     example1 is 2D, example2 is 3D)
                    or an inline manufactured problem:
                      {"alphas": [..],
                       "domain": {"lower": [..], "upper": [..]},
                       "diffusion": [..],            (positive constants K_i)
                       "final_time": T,
                       "exact": {"scale": A, "polynomials": [[c0, c1, ...], ..]},
                       "coefficient": {"quadratic": [..], "exp_decay": e,
                                       "constant": c, "scale": s}}
                    The exact solution is A e^{-t} prod_i P_i(s_i) with
                    P_i the polynomial in the affine coordinate of dimension i;
                    each P_i must vanish to order >= 2 at both endpoints.
                    The coefficient function is
                    r(x,t) = s (sum_i quadratic_i x_i^2 + e exp(-t) + c).
  grids             array of {"n": [n_1, .., n_d], "M": steps}; `iterations`
                    runs every grid, other experiments use the first.
  solvers           array of {"method": "cg"|"pcg",
                              "preconditioner": "tau"|"strang"|"chan"|"none",
                              "tol": 1e-9, "maxit": 0, "average":
                              "arithmetic"|"geometric"}; `iterations` runs
                    every solver, other experiments use the first.
                    maxit 0 means the product of the interior point counts.
  levels            number of refinement levels (convergence experiments).
  stability_steps   time-step indices for the stability experiment;
                    empty = {0, M/2, M-1}.
  output_dir        directory for CSV outputs (overridden by --out).

Outputs are CSV files with a header row; see the repository README for the
column schemas.
)";
}

}  // namespace rsfd
