// Command-line front end for the scale-free covariance selection library:
// generate ground-truth graphs, simulate Gaussian data, solve for sparse
// precision matrices, score reconstructions, sweep ROC curves and benchmark
// the proximal operator. All randomness flows from the --seed flags through
// the library's fixed mt19937_64-based generator, so identical invocations
// write identical files.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "sfsel/sfsel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

double env_or(const char* name, double fallback) {
  const char* v = std::getenv(name);
  return v ? std::stod(v) : fallback;
}

int env_or(const char* name, int fallback) {
  const char* v = std::getenv(name);
  return v ? std::stoi(v) : fallback;
}

struct SolverFlags {
  double alpha = 0.5;
  double rho = 0.5;
  double eps = env_or("SFSEL_EPS", 1e-5);
  int max_iter = env_or("SFSEL_MAX_ITER", 2000);
  double eta = env_or("SFSEL_ETA", 0.9);
  double sym_tol = env_or("SFSEL_SYM_TOL", 1e-6);
  double round_tol = env_or("SFSEL_ROUND_TOL", 1e-15);
  int max_outer = env_or("SFSEL_MAX_OUTER", 10000);

  std::string weights_family = "sqrt";
  double wepsilon = 1.0;
  double wbeta = 0.0;
  double wscale = 1.0;
  double wratio = 0.5;

  double rw_beta = 0.0;
  double rw_epsilon = 0.1;
  int rw_outer = 10;

  sfsel::SolveConfig config() const {
    sfsel::SolveConfig cfg;
    cfg.alpha = alpha;
    cfg.rho = rho;
    cfg.eps = eps;
    cfg.max_iter = max_iter;
    cfg.eta = eta;
    cfg.sym_tol = sym_tol;
    cfg.round_tol = round_tol;
    cfg.max_outer = max_outer;
    return cfg;
  }

  sfsel::WeightSequence weights(int n) const {
    sfsel::WeightParams p{wepsilon, wbeta, wscale, wratio};
    return sfsel::make_weights(sfsel::weight_family_from_string(weights_family), p,
                               std::max(1, n - 1));
  }

  sfsel::RewConfig rew_config() const {
    sfsel::RewConfig rc;
    rc.alpha = alpha;
    rc.beta = rw_beta;
    rc.epsilon = rw_epsilon;
    rc.outer_iters = rw_outer;
    rc.inner = config();
    return rc;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f, bool with_alpha = true) {
  if (with_alpha) cmd->add_option("--alpha", f.alpha, "regularizer strength");
  cmd->add_option("--rho", f.rho, "ADMM step size");
  cmd->add_option("--eps", f.eps, "ADMM stopping threshold");
  cmd->add_option("--max-iter", f.max_iter, "ADMM iteration cap");
  cmd->add_option("--eta", f.eta, "dual decomposition step size");
  cmd->add_option("--sym-tol", f.sym_tol, "dual decomposition symmetry tolerance");
  cmd->add_option("--round-tol", f.round_tol, "zero-rounding threshold");
  cmd->add_option("--max-outer", f.max_outer, "dual decomposition sweep cap");
  cmd->add_option("--weights", f.weights_family,
                  "weight family: log, smoothed-log, sqrt, linear, geometric");
  cmd->add_option("--wepsilon", f.wepsilon, "log-family offset");
  cmd->add_option("--wbeta", f.wbeta, "linear smoothing term");
  cmd->add_option("--wscale", f.wscale, "weight scale");
  cmd->add_option("--wratio", f.wratio, "geometric ratio");
  cmd->add_option("--rw-beta", f.rw_beta, "reweighted method: diagonal L1 strength");
  cmd->add_option("--rw-epsilon", f.rw_epsilon, "reweighted method: log offset");
  cmd->add_option("--rw-outer", f.rw_outer, "reweighted method: outer iterations");
}

sfsel::Matrix load_covariance(const std::string& path) {
  sfsel::Matrix c = sfsel::read_matrix_csv(path);
  if (c.rows() != c.cols()) throw sfsel::io_error("covariance is not square: " + path);
  return c;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1)
    throw std::invalid_argument("alpha grid requires 0 < min <= max and count >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int k = 0; k < count; ++k) out[k] = std::exp(std::log(lo) + step * k);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"scale-free covariance selection"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a ground-truth graph");
  std::string gen_model = "ba";
  int gen_nodes = 60;
  int gen_m = 2;
  double gen_exponent = 2.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--model", gen_model, "ba or powerlaw")->check(CLI::IsMember({"ba", "powerlaw"}));
  gen->add_option("--nodes", gen_nodes, "node count");
  gen->add_option("--m", gen_m, "BA attachment count");
  gen->add_option("--exponent", gen_exponent, "power-law exponent");
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--out", gen_out, "output graph JSON")->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "sample data and write the covariance");
  std::string sim_graph, sim_out;
  int sim_samples = 500;
  std::uint64_t sim_seed = 0;
  double sim_edge_weight = -0.2, sim_base = 0.5;
  bool sim_raw = false;
  sim->add_option("--graph", sim_graph, "graph JSON")->required();
  sim->add_option("--samples", sim_samples, "sample count");
  sim->add_option("--seed", sim_seed, "sampling seed")->required();
  sim->add_option("--edge-weight", sim_edge_weight, "precision edge weight");
  sim->add_option("--base", sim_base, "precision diagonal base");
  sim->add_flag("--raw", sim_raw, "skip unit-diagonal normalization");
  sim->add_option("--out", sim_out, "output covariance CSV")->required();

  // solve
  auto* sol = app.add_subcommand("solve", "estimate a sparse precision matrix");
  std::string sol_cov, sol_method = "sf", sol_out, sol_result, sol_fixture, sol_trace;
  SolverFlags sol_flags;
  sol->add_option("--cov", sol_cov, "covariance CSV")->required();
  sol->add_option("--method", sol_method, "sf, l1 or rw")->check(CLI::IsMember({"sf", "l1", "rw"}));
  sol->add_option("--out", sol_out, "output precision CSV")->required();
  sol->add_option("--result", sol_result, "output result JSON (default: <out>.json)");
  sol->add_option("--trace", sol_trace, "output per-iteration residual CSV");
  sol->add_option("--record-prox-fixture", sol_fixture,
                  "record the final proximal-operator input (sf only)");
  add_solver_flags(sol, sol_flags);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "score a precision matrix against a graph");
  std::string ev_precision, ev_graph, ev_out;
  ev->add_option("--precision", ev_precision, "precision CSV")->required();
  ev->add_option("--graph", ev_graph, "ground-truth graph JSON")->required();
  ev->add_option("--out", ev_out, "output metrics JSON")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "ROC curve over an alpha grid");
  std::string sw_cov, sw_graph, sw_method = "sf", sw_out, sw_summary;
  std::vector<double> sw_alphas;
  double sw_alpha_min = 0.01, sw_alpha_max = 1.0;
  int sw_alpha_count = 20, sw_jobs = 1;
  SolverFlags sw_flags;
  sw->add_option("--cov", sw_cov, "covariance CSV")->required();
  sw->add_option("--graph", sw_graph, "ground-truth graph JSON")->required();
  sw->add_option("--method", sw_method, "sf, l1 or rw")->check(CLI::IsMember({"sf", "l1", "rw"}));
  sw->add_option("--alphas", sw_alphas, "explicit alpha list")->delimiter(',');
  sw->add_option("--alpha-min", sw_alpha_min, "grid lower end");
  sw->add_option("--alpha-max", sw_alpha_max, "grid upper end");
  sw->add_option("--alpha-count", sw_alpha_count, "grid size");
  sw->add_option("--jobs", sw_jobs, "parallel solves");
  sw->add_option("--out", sw_out, "output curve CSV")->required();
  sw->add_option("--summary", sw_summary, "output summary JSON (default: <out>.json)");
  add_solver_flags(sw, sw_flags, /*with_alpha=*/false);

  // prox-bench
  auto* pb = app.add_subcommand("prox-bench", "compare prox solvers on a recorded fixture");
  std::string pb_fixture, pb_dd, pb_sg;
  int pb_sg_iters = 0;
  double pb_sym_tol = env_or("SFSEL_SYM_TOL", 1e-6);
  double pb_eta = env_or("SFSEL_ETA", 0.9);
  int pb_max_outer = env_or("SFSEL_MAX_OUTER", 10000);
  pb->add_option("--fixture", pb_fixture, "fixture JSON from solve --record-prox-fixture")->required();
  pb->add_option("--out-dd", pb_dd, "dual decomposition trace CSV")->required();
  pb->add_option("--out-subgrad", pb_sg, "subgradient trace CSV")->required();
  pb->add_option("--subgrad-iters", pb_sg_iters, "subgradient budget (default 10 * max-outer)");
  pb->add_option("--sym-tol", pb_sym_tol, "dual decomposition symmetry tolerance");
  pb->add_option("--eta", pb_eta, "dual decomposition step size");
  pb->add_option("--max-outer", pb_max_outer, "dual decomposition sweep cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // normalize CLI11's error codes onto the stable contract: help is
    // success, any usage problem is 1
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) {
    const sfsel::GroundTruthGraph g =
        gen_model == "ba" ? sfsel::generate_ba(gen_nodes, gen_m, gen_seed)
                          : sfsel::generate_powerlaw_config(gen_nodes, gen_exponent, gen_seed);
    sfsel::write_graph_json(gen_out, g);
    return kExitOk;
  }

  if (sim->parsed()) {
    const sfsel::GroundTruthGraph g = sfsel::read_graph_json(sim_graph);
    const sfsel::Matrix precision = sfsel::build_precision(g, sim_edge_weight, sim_base);
    const sfsel::DataMatrix data = sfsel::sample_gaussian(precision, sim_samples, sim_seed);
    sfsel::write_matrix_csv(sim_out, sfsel::empirical_covariance(data, !sim_raw));
    return kExitOk;
  }

  if (sol->parsed()) {
    const sfsel::Matrix c = load_covariance(sol_cov);
    const int n = static_cast<int>(c.rows());
    sfsel::SolveResult result;
    if (sol_method == "rw") {
      result = sfsel::reweighted_l1_solve(c, sol_flags.rew_config());
    } else if (sol_method == "l1") {
      result = sfsel::admm_covsel(c, sfsel::L1Penalty{}, sol_flags.config());
    } else {
      const sfsel::WeightSequence w = sol_flags.weights(n);
      result = sfsel::admm_covsel(c, sfsel::OmegaPenalty{w}, sol_flags.config());
      if (!sol_fixture.empty())
        sfsel::write_prox_fixture(sol_fixture, result.last_prox_input,
                                  sol_flags.alpha / sol_flags.rho, w);
    }
    sfsel::write_matrix_csv(sol_out, result.precision);
    sfsel::write_solve_result_json(sol_result.empty() ? sol_out + ".json" : sol_result, result,
                                   sol_method, sol_flags.alpha);
    if (!sol_trace.empty()) sfsel::write_residual_trace_csv(sol_trace, result.trace);
    if (!result.converged) {
      std::cerr << "solve: not converged after " << result.iterations << " iterations\n";
      return kExitNumerical;
    }
    return kExitOk;
  }

  if (ev->parsed()) {
    const sfsel::Matrix precision = sfsel::read_matrix_csv(ev_precision);
    const sfsel::GroundTruthGraph g = sfsel::read_graph_json(ev_graph);
    if (precision.rows() != g.n()) throw sfsel::io_error("evaluate: dimension mismatch");
    sfsel::write_metrics_json(ev_out, sfsel::edge_errors(sfsel::EdgeSet::from_support(precision),
                                                         g.edges));
    return kExitOk;
  }

  if (sw->parsed()) {
    const sfsel::Matrix c = load_covariance(sw_cov);
    const sfsel::GroundTruthGraph g = sfsel::read_graph_json(sw_graph);
    if (c.rows() != g.n()) throw sfsel::io_error("sweep: dimension mismatch");
    const std::vector<double> alphas =
        sw_alphas.empty() ? log_spaced(sw_alpha_min, sw_alpha_max, sw_alpha_count) : sw_alphas;

    sfsel::RocCurve curve;
    if (sw_method == "rw") {
      curve = sfsel::roc_sweep_with(
          g,
          [&](double alpha) {
            sfsel::RewConfig rc = sw_flags.rew_config();
            rc.alpha = alpha;
            return sfsel::reweighted_l1_solve(c, rc);
          },
          alphas, sw_jobs);
    } else {
      const sfsel::Regularizer reg =
          sw_method == "l1"
              ? sfsel::Regularizer{sfsel::L1Penalty{}}
              : sfsel::Regularizer{sfsel::OmegaPenalty{sw_flags.weights(static_cast<int>(c.rows()))}};
      curve = sfsel::roc_sweep(c, g, reg, sw_flags.config(), alphas, sw_jobs);
    }
    sfsel::write_roc_csv(sw_out, curve);
    sfsel::write_roc_summary_json(sw_summary.empty() ? sw_out + ".json" : sw_summary, curve,
                                  sw_method);
    return kExitOk;
  }

  if (pb->parsed()) {
    const sfsel::ProxFixture fixture = sfsel::read_prox_fixture(pb_fixture);
    sfsel::ProxParams params = fixture.params();
    params.sym_tol = pb_sym_tol;
    params.eta = pb_eta;
    params.max_outer = pb_max_outer;

    std::vector<sfsel::ProxTracePoint> dd_trace;
    sfsel::prox_omega_detailed(fixture.z, params, fixture.weights, &dd_trace);
    sfsel::write_prox_trace_csv(pb_dd, dd_trace);

    const int sg_iters = pb_sg_iters > 0 ? pb_sg_iters : 10 * params.max_outer;
    const sfsel::SubgradResult sg =
        sfsel::prox_omega_subgrad(fixture.z, fixture.shrink_scale, fixture.weights, sg_iters);
    sfsel::write_subgrad_trace_csv(pb_sg, sg.trace);
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sfsel::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
