#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "sfsel/edge_set.hpp"
#include "sfsel/prox.hpp"
#include "sfsel/regularizer.hpp"
#include "sfsel/weights.hpp"

namespace sfsel {

struct SolveConfig {
  double alpha = 0.0;  // regularizer strength
  double rho = 0.5;    // ADMM step size
  double eps = 1e-5;   // stopping threshold on both ADMM residuals
  int max_iter = 2000;

  // inner dual-decomposition settings (omega regularizer only)
  double eta = 0.9;
  double sym_tol = 1e-6;
  double round_tol = 1e-15;
  int max_outer = 10000;

  ProxParams prox_params(double shrink_scale) const {
    return ProxParams{shrink_scale, eta, sym_tol, round_tol, max_outer};
  }

  void validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("solve: alpha must be >= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("solve: rho must be > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("solve: eps must be > 0");
    if (max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");
    prox_params(0.0).validate();
  }
};

struct L1Penalty {};
struct OmegaPenalty {
  WeightSequence weights;
};
using Regularizer = std::variant<L1Penalty, OmegaPenalty>;

struct IterationResidual {
  double primal;  // ||X - Y||_F
  double dual;    // ||Y - Y_prev||_F
};

struct SolveResult {
  Matrix precision;          // the sparse iterate Y
  EdgeSet edge_set{0};       // support of the off-diagonal of precision
  int iterations = 0;
  bool converged = false;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<IterationResidual> trace;

  // diagnostics
  double stationarity_residual = 0.0;  // max |rho*l' - 1/l' - l| over all eigen-prox calls
  double min_x_eigenvalue = std::numeric_limits<double>::infinity();
  Matrix last_prox_input;              // argument of the final Y-update (benchmark support)
  Matrix last_prox_dual;               // dual witness of the final omega prox (omega runs only)
  std::vector<double> outer_objectives;  // reweighted solves only
};

// Proximal map of <X, C> - log det X against rho/2 ||X - M'||^2, expressed
// through the spectrum of M = rho * (Y - U) - C: each eigenvalue moves to
// the positive root of rho * l'^2 - l * l' - 1 = 0, which keeps the result
// strictly positive definite. The two algebraic forms below are the same
// root; the branch avoids cancellation on either sign of l.
inline Matrix prox_logdet(const Matrix& m, double rho, double* stationarity_residual = nullptr,
                          double* min_eigenvalue = nullptr) {
  if (!(rho > 0.0)) throw std::invalid_argument("prox_logdet: rho must be > 0");
  if (!m.allFinite()) throw std::invalid_argument("prox_logdet: non-finite input");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("prox_logdet: eigendecomposition failed");
  Vector lam = es.eigenvalues();
  Vector lam_new(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double l = lam[i];
    const double root = std::sqrt(l * l + 4.0 * rho);
    lam_new[i] = l >= 0.0 ? (l + root) / (2.0 * rho) : 2.0 / (root - l);
  }
  if (stationarity_residual) {
    double r = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      r = std::max(r, std::abs(rho * lam_new[i] - 1.0 / lam_new[i] - lam[i]));
    *stationarity_residual = r;
  }
  if (min_eigenvalue) *min_eigenvalue = lam_new.minCoeff();
  return es.eigenvectors() * lam_new.asDiagonal() * es.eigenvectors().transpose();
}

// Entrywise soft threshold of the off-diagonal; thresholds is a matrix of
// per-entry amounts (diagonal entries of thresholds are ignored).
inline Matrix soft_threshold_offdiag(const Matrix& z, const Matrix& thresholds) {
  Matrix out = z;
  const Eigen::Index n = z.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double t = thresholds(i, j);
      const double zi = z(i, j);
      out(i, j) = std::abs(zi) > t ? zi - t * sign(zi) : 0.0;
    }
  return out;
}

inline Matrix soft_threshold_diag(const Matrix& z, const Vector& thresholds) {
  Matrix out = z;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double t = thresholds[i];
    const double zi = z(i, i);
    out(i, i) = std::abs(zi) > t ? zi - t * sign(zi) : 0.0;
  }
  return out;
}

namespace detail {

inline double gaussian_loss(const Matrix& x, const Matrix& c) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  const Vector& lam = es.eigenvalues();
  if (lam.minCoeff() <= 0.0) return std::numeric_limits<double>::infinity();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) logdet += std::log(lam[i]);
  return x.cwiseProduct(c).sum() - logdet;
}

inline void check_covariance(const Matrix& c) {
  if (!c.allFinite()) throw std::invalid_argument("solve: covariance has non-finite entries");
  require_symmetric(c, 1e-9);
  if (c.diagonal().minCoeff() <= 0.0)
    throw std::invalid_argument("solve: covariance diagonal must be positive");
}

// Shared ADMM loop; the regularizer enters only through its proximal map
// and its penalty value at the solution.
template <class YUpdate, class PenaltyValue>
SolveResult admm_loop(const Matrix& c, const SolveConfig& cfg, YUpdate&& y_update,
                      PenaltyValue&& penalty_value) {
  cfg.validate();
  check_covariance(c);
  const Eigen::Index n = c.rows();

  SolveResult result;
  Matrix y = Matrix::Identity(n, n);
  Matrix u = Matrix::Zero(n, n);
  Matrix x(n, n), y_prev(n, n);
  result.trace.reserve(64);

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    double stat = 0.0, min_eig = 0.0;
    x = prox_logdet(cfg.rho * (y - u) - c, cfg.rho, &stat, &min_eig);
    x = 0.5 * (x + x.transpose());
    result.stationarity_residual = std::max(result.stationarity_residual, stat);
    result.min_x_eigenvalue = std::min(result.min_x_eigenvalue, min_eig);

    y_prev = y;
    result.last_prox_input = x + u;
    y = y_update(result.last_prox_input);
    u += x - y;

    const double primal = (x - y).norm();
    const double dual = (y - y_prev).norm();
    result.trace.push_back({primal, dual});
    result.iterations = iter;
    if (primal < cfg.eps && dual < cfg.eps) {
      result.converged = true;
      break;
    }
  }

  result.precision = y;
  result.edge_set = EdgeSet::from_support(y);
  result.objective = gaussian_loss(y, c) + penalty_value(y);
  return result;
}

}  // namespace detail

// Weighted-L1 covariance selection: ADMM on <X, C> - log det X plus
// sum_{i != j} W_ij |X_ij| + sum_v dw_v |X_vv|, where W gives per-entry
// off-diagonal weights (counted once per ordered pair). Used directly by the
// reweighted method; the plain L1 solver is the constant-weight case.
inline SolveResult admm_covsel_weighted_l1(const Matrix& c, const Matrix& offdiag_weights,
                                           const Vector& diag_weights, const SolveConfig& cfg) {
  const Matrix thresholds = offdiag_weights / cfg.rho;
  const Vector diag_thresholds = diag_weights / cfg.rho;
  return detail::admm_loop(
      c, cfg,
      [&](const Matrix& z) {
        return soft_threshold_diag(soft_threshold_offdiag(z, thresholds), diag_thresholds);
      },
      [&](const Matrix& y) {
        double p = 0.0;
        for (Eigen::Index i = 0; i < y.rows(); ++i)
          for (Eigen::Index j = 0; j < y.cols(); ++j)
            p += i == j ? diag_weights[i] * std::abs(y(i, i))
                        : offdiag_weights(i, j) * std::abs(y(i, j));
        return p;
      });
}

// Covariance selection with the chosen regularizer: L1 penalizes each
// off-diagonal entry by alpha (diagonal free); omega applies the degree
// prior relaxation through the dual-decomposition prox. The reported
// precision matrix is the sparse iterate Y, whose zeros are exact.
inline SolveResult admm_covsel(const Matrix& c, const Regularizer& reg, const SolveConfig& cfg) {
  if (std::holds_alternative<L1Penalty>(reg)) {
    const Eigen::Index n = c.rows();
    return admm_covsel_weighted_l1(c, Matrix::Constant(n, n, cfg.alpha), Vector::Zero(n), cfg);
  }
  const WeightSequence& w = std::get<OmegaPenalty>(reg).weights;
  const ProxParams prox = cfg.prox_params(cfg.alpha / cfg.rho);
  Matrix dual_witness;
  SolveResult result = detail::admm_loop(
      c, cfg,
      [&](const Matrix& z) {
        ProxResult pr = prox_omega_detailed(z, prox, w);
        dual_witness = std::move(pr.dual);
        return std::move(pr.x);
      },
      [&](const Matrix& y) { return cfg.alpha * omega(y, w); });
  result.last_prox_dual = std::move(dual_witness);
  return result;
}

}  // namespace sfsel
