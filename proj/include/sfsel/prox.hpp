#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfsel/regularizer.hpp"
#include "sfsel/weights.hpp"

namespace sfsel {

struct ProxParams {
  double shrink_scale = 0.0;  // alpha / rho
  double eta = 0.9;           // dual step size, in (0, 1)
  double sym_tol = 1e-6;      // ||X - X^T||_F stopping threshold
  double round_tol = 1e-15;   // off-diagonal entries below this are rounded to 0
  int max_outer = 10000;

  void validate() const {
    if (!(shrink_scale >= 0.0)) throw std::invalid_argument("prox: shrink_scale must be >= 0");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("prox: eta must be in (0, 1)");
    if (!(sym_tol > 0.0)) throw std::invalid_argument("prox: sym_tol must be > 0");
    if (!(round_tol > 0.0)) throw std::invalid_argument("prox: round_tol must be > 0");
    if (max_outer < 1) throw std::invalid_argument("prox: max_outer must be >= 1");
  }
};

class prox_convergence_error : public std::runtime_error {
 public:
  prox_convergence_error(int iterations, double residual)
      : std::runtime_error("prox_omega: symmetry residual " + std::to_string(residual) +
                           " after " + std::to_string(iterations) + " iterations"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

// Pool-adjacent-violators bookkeeping for one row subproblem. Entries are
// appended in sort order; whenever the running values stop decreasing, the
// offending sets are joined and take the average of their members. Each set
// keeps its head (first member in sort order) and a running sum, so a merge
// is O(1). On exit the pooled values, read head to tail, are strictly
// decreasing across sets.
class PoolGroups {
 public:
  struct Group {
    std::size_t head;
    std::size_t count;
    double sum;
    double mean() const { return sum / static_cast<double>(count); }
  };

  void reset(std::size_t capacity) {
    groups_.clear();
    groups_.reserve(capacity);
    next_ = 0;
  }

  void append(double u) {
    groups_.push_back({next_++, 1, u});
    while (groups_.size() >= 2) {
      Group& cur = groups_[groups_.size() - 1];
      Group& prev = groups_[groups_.size() - 2];
      if (cur.mean() < prev.mean()) break;
      prev.count += cur.count;
      prev.sum += cur.sum;
      groups_.pop_back();
    }
  }

  const std::vector<Group>& groups() const { return groups_; }

 private:
  std::vector<Group> groups_;
  std::size_t next_ = 0;
};

namespace detail {

struct RowWorkspace {
  std::vector<Eigen::Index> order;
  PoolGroups pools;
};

// Row subproblem: minimize s * sum_k diff(k) |x_(k)| + 1/2 ||x - (z - v)||^2
// with the diagonal position excluded from the sort (it passes through
// unchanged). Shift, sort by descending magnitude, subtract the rank
// weights, pool adjacent violators, clip at zero and restore signs.
inline void prox_row_into(const Vector& z, const Vector& v, Eigen::Index diag,
                          const ProxParams& p, const WeightSequence& w, RowWorkspace& ws,
                          Vector& shift, Vector& out) {
  const Eigen::Index n = z.size();
  if (v.size() != n) throw std::invalid_argument("prox_row: length mismatch");
  if (diag < 0 || diag >= n) throw std::invalid_argument("prox_row: diagonal index out of range");
  if (n - 1 > w.max_degree()) throw std::out_of_range("prox_row: row longer than max_degree + 1");

  shift = z - v;
  out.resize(n);
  out[diag] = shift[diag];

  const std::size_t m = static_cast<std::size_t>(n - 1);
  ws.order.clear();
  ws.order.reserve(m);
  for (Eigen::Index j = 0; j < n; ++j)
    if (j != diag) ws.order.push_back(j);
  std::stable_sort(ws.order.begin(), ws.order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(shift[a]) > std::abs(shift[b]);
  });

  ws.pools.reset(m);
  for (std::size_t k = 0; k < m; ++k)
    ws.pools.append(std::abs(shift[ws.order[k]]) - p.shrink_scale * w.diff(static_cast<int>(k)));

  for (const auto& g : ws.pools.groups()) {
    const double value = std::max(g.mean(), 0.0);
    for (std::size_t pos = g.head; pos < g.head + g.count; ++pos) {
      const Eigen::Index j = ws.order[pos];
      out[j] = sign(shift[j]) * value;
    }
  }
}

}  // namespace detail

inline Vector prox_row(const Vector& z, const Vector& v, Eigen::Index diag,
                       const ProxParams& p, const WeightSequence& w) {
  p.validate();
  detail::RowWorkspace ws;
  Vector shift, out;
  detail::prox_row_into(z, v, diag, p, w, ws, shift, out);
  return out;
}

inline double prox_objective(const Matrix& x, const Matrix& z, double shrink_scale,
                             const WeightSequence& w) {
  return shrink_scale * omega(x, w) + 0.5 * (x - z).squaredNorm();
}

struct ProxTracePoint {
  int iteration;
  double objective;     // prox objective at the symmetrized iterate
  double sym_residual;  // ||X - X^T||_F
};

struct ProxResult {
  Matrix x;               // symmetrized, rounded minimizer
  Matrix dual;            // anti-symmetric duals consistent with the accepted row solves
  int outer_iterations = 0;
  double sym_residual = 0.0;
};

// Dual decomposition for argmin_X shrink_scale * omega(X) + 1/2 ||X - Z||^2
// over symmetric X. Rows are solved independently against the duals of the
// symmetry constraint; the duals move by eta * (X - X^T) until X is
// symmetric to sym_tol. Within a sweep the row subproblems read only Z and
// the fixed duals and write disjoint rows, so the result does not depend on
// the order they run in. Throws prox_convergence_error when max_outer
// sweeps do not reach sym_tol.
inline ProxResult prox_omega_detailed(const Matrix& z, const ProxParams& p, const WeightSequence& w,
                                      std::vector<ProxTracePoint>* trace = nullptr) {
  p.validate();
  require_symmetric(z);
  const Eigen::Index n = z.rows();
  if (n - 1 > w.max_degree()) throw std::out_of_range("prox_omega: matrix larger than max_degree + 1");

  if (p.shrink_scale == 0.0) return {z, Matrix::Zero(n, n), 0, 0.0};

  Matrix x = z;
  Matrix v = Matrix::Zero(n, n);
  Matrix v_used = v;
  detail::RowWorkspace ws;
  Vector zi(n), vi(n), shift(n), xi(n);

  int iter = 0;
  double residual = 0.0;
  bool converged = false;
  while (iter < p.max_outer) {
    ++iter;
    v_used = v;
    for (Eigen::Index i = 0; i < n; ++i) {
      zi = z.row(i);
      vi = v.row(i);
      detail::prox_row_into(zi, vi, i, p, w, ws, shift, xi);
      x.row(i) = xi;
    }
    Matrix r = x - x.transpose();
    residual = r.norm();
    v += p.eta * r;
    if (trace) {
      const Matrix xs = 0.5 * (x + x.transpose());
      trace->push_back({iter, prox_objective(xs, z, p.shrink_scale, w), residual});
    }
    if (residual < p.sym_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw prox_convergence_error(iter, residual);

  Matrix xs = 0.5 * (x + x.transpose());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && std::abs(xs(i, j)) < p.round_tol) xs(i, j) = 0.0;
  xs.diagonal() = z.diagonal();
  return {std::move(xs), std::move(v_used), iter, residual};
}

inline Matrix prox_omega(const Matrix& z, const ProxParams& p, const WeightSequence& w) {
  return prox_omega_detailed(z, p, w).x;
}

// Residual of the optimality conditions for
//   min_X shrink_scale * omega(X) + 1/2 ||X - Z||^2,   X = X^T
// at the point x, using the anti-symmetric dual witness v. Each row implies
// a subgradient d = (z_i - v_i - x_i) / shrink_scale that must lie in the
// subdifferential of the ordered-weighted row norm at x_i. Membership is
// checked group by group: nonzero groups need their (sign-corrected) duals
// to sum to the group's weight budget and to satisfy the sorted prefix
// bounds; entries at zero only need the prefix bounds over the trailing
// ranks. The returned value is the largest per-entry violation, scaled back
// to gradient units; it is 0 at an exact minimizer.
inline double prox_certificate_residual(const Matrix& x, const Matrix& v, const Matrix& z,
                                        double shrink_scale, const WeightSequence& w,
                                        double group_tol = 1e-6) {
  const Eigen::Index n = x.rows();
  if (shrink_scale == 0.0) return (x - z).cwiseAbs().maxCoeff();

  double residual = 0.0;
  std::vector<Eigen::Index> order;
  std::vector<double> duals;
  for (Eigen::Index i = 0; i < n; ++i) {
    residual = std::max(residual, std::abs(x(i, i) - z(i, i)));
    order.clear();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(x(i, a)) > std::abs(x(i, b));
    });
    const std::size_t m = order.size();

    std::size_t a = 0;
    while (a < m) {
      const double mag = std::abs(x(i, order[a]));
      std::size_t b = a + 1;
      if (mag <= group_tol) {
        b = m;  // trailing zero block
      } else {
        while (b < m && mag - std::abs(x(i, order[b])) <= group_tol) ++b;
      }

      duals.clear();
      double dual_sum = 0.0;
      for (std::size_t k = a; k < b; ++k) {
        const Eigen::Index j = order[k];
        double d = (z(i, j) - v(i, j) - x(i, j)) / shrink_scale;
        d = mag <= group_tol ? std::abs(d) : d * sign(x(i, j));
        duals.push_back(d);
        dual_sum += d;
      }
      std::sort(duals.begin(), duals.end(), std::greater<double>());

      const std::size_t count = b - a;
      if (mag > group_tol) {
        double diff_sum = 0.0;
        for (std::size_t k = a; k < b; ++k) diff_sum += w.diff(static_cast<int>(k));
        residual = std::max(residual, shrink_scale * std::abs(dual_sum - diff_sum) /
                                          static_cast<double>(count));
      }
      double dual_prefix = 0.0, diff_prefix = 0.0;
      for (std::size_t t = 0; t < count; ++t) {
        dual_prefix += duals[t];
        diff_prefix += w.diff(static_cast<int>(a + t));
        const double excess = dual_prefix - diff_prefix;
        if (excess > 0.0)
          residual = std::max(residual, shrink_scale * excess / static_cast<double>(t + 1));
      }
      a = b;
    }
  }
  return residual;
}

struct SubgradTracePoint {
  int iteration;
  double objective;
};

struct SubgradResult {
  Matrix x_best;
  double objective_best = 0.0;
  std::vector<SubgradTracePoint> trace;
};

// Subgradient-descent baseline on the same prox objective, kept for the
// convergence comparison: it is simple but needs far more iterations than
// the dual decomposition to reach a usable accuracy. The default step
// schedule is 1/sqrt(t+1); iterates are re-symmetrized every step.
inline SubgradResult prox_omega_subgrad(const Matrix& z, double shrink_scale,
                                        const WeightSequence& w, int iters,
                                        std::function<double(int)> step = {}) {
  require_symmetric(z);
  if (iters < 1) throw std::invalid_argument("prox_omega_subgrad: iters must be >= 1");
  if (!step) step = [](int t) { return 1.0 / std::sqrt(static_cast<double>(t) + 1.0); };

  SubgradResult result;
  result.trace.reserve(static_cast<std::size_t>(iters) + 1);
  Matrix x = z;
  result.x_best = x;
  result.objective_best = prox_objective(x, z, shrink_scale, w);
  result.trace.push_back({0, result.objective_best});

  for (int t = 0; t < iters; ++t) {
    const Matrix g = shrink_scale * omega_subgradient(x, w) + (x - z);
    x -= step(t) * g;
    x = 0.5 * (x + x.transpose());
    const double obj = prox_objective(x, z, shrink_scale, w);
    result.trace.push_back({t + 1, obj});
    if (obj < result.objective_best) {
      result.objective_best = obj;
      result.x_best = x;
    }
  }
  return result;
}

}  // namespace sfsel
