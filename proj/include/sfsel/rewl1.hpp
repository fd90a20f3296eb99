#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sfsel/covsel.hpp"

namespace sfsel {

struct RewConfig {
  double alpha = 0.0;    // strength of the per-node log penalty
  double beta = 0.0;     // diagonal L1 strength
  double epsilon = 0.1;  // log offset, > 0
  int outer_iters = 10;
  double weight_change_tol = 1e-4;  // early exit when node weights stop moving
  SolveConfig inner;                // inner ADMM settings (inner.alpha is unused)

  void validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("rewl1: alpha must be >= 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("rewl1: beta must be >= 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("rewl1: epsilon must be > 0");
    if (outer_iters < 1) throw std::invalid_argument("rewl1: outer_iters must be >= 1");
    inner.validate();
  }
};

// L1 norm of row v with the diagonal excluded, the continuous stand-in for
// the degree of node v.
inline Vector offdiag_row_norms(const Matrix& x) {
  Vector norms = x.cwiseAbs().rowwise().sum();
  norms -= x.diagonal().cwiseAbs();
  return norms;
}

// The reweighted-L1 objective: Gaussian loss plus a log penalty on each
// node's off-diagonal row norm and an L1 penalty on the diagonal.
inline double reweighted_objective(const Matrix& x, const Matrix& c, const RewConfig& cfg) {
  double f = detail::gaussian_loss(x, c);
  const Vector norms = offdiag_row_norms(x);
  for (Eigen::Index v = 0; v < x.rows(); ++v)
    f += cfg.alpha * std::log(norms[v] + cfg.epsilon) + cfg.beta * std::abs(x(v, v));
  return f;
}

// Double-loop minimization of the reweighted objective. Each outer step
// linearizes the log terms at the current iterate, giving node weights
// lambda_v = alpha / (norm_v + epsilon); the edge (i, j) then carries weight
// lambda_i + lambda_j, split evenly over the two ordered entries, and the
// resulting weighted-L1 problem is solved by ADMM. The linearized problem
// majorizes the objective up to a constant, so the objective is
// non-increasing across outer iterations.
inline SolveResult reweighted_l1_solve(const Matrix& c, const RewConfig& cfg) {
  cfg.validate();
  detail::check_covariance(c);
  const Eigen::Index n = c.rows();

  // Warm start: the plain-L1 problem with the weight the linearization
  // gives at X = 0.
  SolveConfig warm_cfg = cfg.inner;
  warm_cfg.alpha = cfg.alpha / cfg.epsilon;
  SolveResult result = admm_covsel(c, L1Penalty{}, warm_cfg);
  if (!result.converged)
    throw std::runtime_error("reweighted_l1: warm-start ADMM did not converge");
  int total_iterations = result.iterations;

  result.outer_objectives.push_back(reweighted_objective(result.precision, c, cfg));

  Vector lambda_prev;
  for (int t = 0; t < cfg.outer_iters; ++t) {
    const Vector norms = offdiag_row_norms(result.precision);
    Vector lambda(n);
    for (Eigen::Index v = 0; v < n; ++v) lambda[v] = cfg.alpha / (norms[v] + cfg.epsilon);
    if (t > 0 && (lambda - lambda_prev).cwiseAbs().maxCoeff() < cfg.weight_change_tol) break;
    lambda_prev = lambda;

    Matrix offdiag_weights(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) offdiag_weights(i, j) = 0.5 * (lambda[i] + lambda[j]);
    const Vector diag_weights = Vector::Constant(n, cfg.beta);

    SolveResult inner = admm_covsel_weighted_l1(c, offdiag_weights, diag_weights, cfg.inner);
    if (!inner.converged)
      throw std::runtime_error("reweighted_l1: inner ADMM did not converge at outer iteration " +
                               std::to_string(t));
    total_iterations += inner.iterations;

    std::vector<double> outer_trace = std::move(result.outer_objectives);
    outer_trace.push_back(reweighted_objective(inner.precision, c, cfg));
    result = std::move(inner);
    result.outer_objectives = std::move(outer_trace);
  }

  result.iterations = total_iterations;
  result.objective = reweighted_objective(result.precision, c, cfg);
  return result;
}

}  // namespace sfsel
