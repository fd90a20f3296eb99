#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sfsel/covsel.hpp"
#include "sfsel/synth.hpp"

namespace sfsel {

struct EdgeMetrics {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long tn = 0;
  long hamming = 0;  // fp + fn
};

// Confusion counts over all unordered node pairs.
inline EdgeMetrics edge_errors(const EdgeSet& estimate, const EdgeSet& truth) {
  if (estimate.n() != truth.n()) throw std::invalid_argument("edge_errors: node count mismatch");
  const int n = truth.n();
  EdgeMetrics m;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool est = estimate.contains(i, j);
      const bool tru = truth.contains(i, j);
      if (est && tru)
        ++m.tp;
      else if (est && !tru)
        ++m.fp;
      else if (!est && tru)
        ++m.fn;
      else
        ++m.tn;
    }
  m.hamming = m.fp + m.fn;
  return m;
}

inline EdgeMetrics edge_errors(const SolveResult& estimate, const GroundTruthGraph& truth) {
  return edge_errors(estimate.edge_set, truth.edges);
}

struct RocPoint {
  double alpha = 0.0;
  long fp = 0;
  long tp = 0;
  double fp_rate = 0.0;
  double tp_rate = 0.0;
  bool solved = false;
  std::string error;  // empty when solved
};

struct RocCurve {
  std::vector<RocPoint> points;  // sorted by alpha descending
  double auc = 0.0;
  int failures = 0;
};

// Trapezoid AUC over (fp_rate, tp_rate) with the (0,0) and (1,1) corners
// added, so a curve that never leaves the origin still scores 0.5.
inline double roc_auc(const std::vector<RocPoint>& points) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(points.size() + 2);
  pts.emplace_back(0.0, 0.0);
  pts.emplace_back(1.0, 1.0);
  for (const auto& p : points)
    if (p.solved) pts.emplace_back(p.fp_rate, p.tp_rate);
  std::sort(pts.begin(), pts.end());
  double auc = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    auc += (pts[k + 1].first - pts[k].first) * (pts[k].second + pts[k + 1].second) * 0.5;
  return auc;
}

// One covariance-selection solve per alpha, scored against the ground
// truth. Failed solves are recorded and skipped by the AUC. Points are
// solved in parallel when jobs > 1; the output is the same regardless of
// scheduling. The solver callback must be safe to invoke concurrently.
template <class Solver>
RocCurve roc_sweep_with(const GroundTruthGraph& truth, Solver&& solver,
                        const std::vector<double>& alphas, int jobs = 1) {
  if (alphas.empty()) throw std::invalid_argument("roc_sweep: alphas must be nonempty");
  for (double a : alphas)
    if (!(a > 0.0)) throw std::invalid_argument("roc_sweep: alphas must be positive");

  std::vector<double> sorted_alphas = alphas;
  std::sort(sorted_alphas.begin(), sorted_alphas.end(), std::greater<double>());

  const long positives = truth.edges.size();
  const long pairs = static_cast<long>(truth.n()) * (truth.n() - 1) / 2;
  const long negatives = pairs - positives;

  RocCurve curve;
  curve.points.resize(sorted_alphas.size());

  auto solve_point = [&](std::size_t k) {
    RocPoint& pt = curve.points[k];
    pt.alpha = sorted_alphas[k];
    try {
      const SolveResult res = solver(pt.alpha);
      const EdgeMetrics m = edge_errors(res.edge_set, truth.edges);
      pt.fp = m.fp;
      pt.tp = m.tp;
      pt.fp_rate = negatives > 0 ? static_cast<double>(m.fp) / negatives : 0.0;
      pt.tp_rate = positives > 0 ? static_cast<double>(m.tp) / positives : 0.0;
      pt.solved = true;
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(sorted_alphas.size())));
  if (workers == 1) {
    for (std::size_t k = 0; k < sorted_alphas.size(); ++k) solve_point(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t)
      threads.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < curve.points.size(); k = next.fetch_add(1))
          solve_point(k);
      });
    for (auto& th : threads) th.join();
  }

  for (const auto& p : curve.points)
    if (!p.solved) ++curve.failures;
  curve.auc = roc_auc(curve.points);
  return curve;
}

inline RocCurve roc_sweep(const Matrix& c, const GroundTruthGraph& truth, const Regularizer& reg,
                          const SolveConfig& base_cfg, const std::vector<double>& alphas,
                          int jobs = 1) {
  return roc_sweep_with(
      truth,
      [&](double alpha) {
        SolveConfig cfg = base_cfg;
        cfg.alpha = alpha;
        return admm_covsel(c, reg, cfg);
      },
      alphas, jobs);
}

// Degree -> node count, including isolated nodes.
inline std::map<int, long> degree_histogram(const EdgeSet& es) {
  std::map<int, long> hist;
  for (int d : es.degrees()) ++hist[d];
  return hist;
}

}  // namespace sfsel
