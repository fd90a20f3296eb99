#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sfsel/eval.hpp"
#include "sfsel/rng.hpp"
#include "sfsel/synth.hpp"

namespace {

using sfsel::EdgeMetrics;
using sfsel::EdgeSet;
using sfsel::GroundTruthGraph;
using sfsel::L1Penalty;
using sfsel::Matrix;
using sfsel::RocPoint;
using sfsel::SolveConfig;
using sfsel::edge_errors;
using sfsel::roc_auc;
using sfsel::roc_sweep;

EdgeSet random_graph(int n, double p, sfsel::Rng& rng) {
  EdgeSet es(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform01() < p) es.add(i, j);
  return es;
}

TEST(EdgeErrors, KnownCases) {
  sfsel::Rng rng(401);
  const EdgeSet truth = random_graph(8, 0.4, rng);

  const EdgeMetrics same = edge_errors(truth, truth);
  EXPECT_EQ(same.fp, 0);
  EXPECT_EQ(same.fn, 0);
  EXPECT_EQ(same.hamming, 0);

  const EdgeMetrics none = edge_errors(EdgeSet(8), truth);
  EXPECT_EQ(none.tp, 0);
  EXPECT_EQ(none.fn, truth.size());
  EXPECT_EQ(none.hamming, truth.size());

  EdgeSet complete(8);
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) complete.add(i, j);
  const EdgeMetrics full = edge_errors(complete, truth);
  EXPECT_EQ(full.tp, truth.size());
  EXPECT_EQ(full.fp, 28 - truth.size());

  EXPECT_THROW(edge_errors(EdgeSet(7), truth), std::invalid_argument);
}

TEST(EdgeErrors, CountingIdentities) {
  sfsel::Rng rng(409);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_index(10));
    const EdgeSet truth = random_graph(n, rng.uniform01(), rng);
    const EdgeSet est = random_graph(n, rng.uniform01(), rng);
    const EdgeMetrics m = edge_errors(est, truth);
    ASSERT_EQ(m.tp + m.fn, truth.size());
    ASSERT_EQ(m.tp + m.fp + m.fn + m.tn, static_cast<long>(n) * (n - 1) / 2);
    ASSERT_EQ(m.hamming, m.fp + m.fn);
  }
}

TEST(RocAuc, DegenerateCurves) {
  std::vector<RocPoint> origin(3);
  for (auto& p : origin) {
    p.solved = true;
    p.fp_rate = 0.0;
    p.tp_rate = 0.0;
  }
  EXPECT_NEAR(roc_auc(origin), 0.5, 1e-15);

  std::vector<RocPoint> perfect(1);
  perfect[0].solved = true;
  perfect[0].fp_rate = 0.0;
  perfect[0].tp_rate = 1.0;
  EXPECT_NEAR(roc_auc(perfect), 1.0, 1e-15);
}

TEST(RocAuc, InvariantToDuplicatesAndOrder) {
  std::vector<RocPoint> pts(3);
  pts[0] = {0.5, 2, 3, 0.2, 0.6, true, ""};
  pts[1] = {0.2, 5, 4, 0.5, 0.8, true, ""};
  pts[2] = {0.5, 2, 3, 0.2, 0.6, true, ""};  // duplicate of the first
  const double a = roc_auc(pts);
  std::swap(pts[0], pts[1]);
  EXPECT_EQ(roc_auc(pts), a);
  pts.push_back(pts.back());
  EXPECT_EQ(roc_auc(pts), a);
}

TEST(RocSweep, HugeAlphaGivesOriginPoint) {
  sfsel::Rng rng(419);
  const auto g = sfsel::generate_ba(12, 2, 2);
  const Matrix precision = sfsel::build_precision(g);
  const Matrix c =
      sfsel::empirical_covariance(sfsel::sample_gaussian(precision, 400, 3), true);
  SolveConfig cfg;
  const auto curve = roc_sweep(c, g, L1Penalty{}, cfg, {50.0});
  ASSERT_EQ(curve.points.size(), 1u);
  EXPECT_TRUE(curve.points[0].solved);
  EXPECT_EQ(curve.points[0].fp, 0);
  EXPECT_EQ(curve.points[0].tp, 0);
  EXPECT_NEAR(curve.auc, 0.5, 1e-15);
}

TEST(RocSweep, ParallelMatchesSerial) {
  const auto g = sfsel::generate_ba(15, 2, 5);
  const Matrix precision = sfsel::build_precision(g);
  const Matrix c =
      sfsel::empirical_covariance(sfsel::sample_gaussian(precision, 300, 6), true);
  SolveConfig cfg;
  const std::vector<double> alphas{0.4, 0.2, 0.1, 0.05};
  const auto serial = roc_sweep(c, g, L1Penalty{}, cfg, alphas, 1);
  const auto parallel = roc_sweep(c, g, L1Penalty{}, cfg, alphas, 3);
  ASSERT_EQ(serial.points.size(), parallel.points.size());
  EXPECT_EQ(serial.auc, parallel.auc);
  for (std::size_t k = 0; k < serial.points.size(); ++k) {
    EXPECT_EQ(serial.points[k].alpha, parallel.points[k].alpha);
    EXPECT_EQ(serial.points[k].fp, parallel.points[k].fp);
    EXPECT_EQ(serial.points[k].tp, parallel.points[k].tp);
  }
  // points arrive sorted by alpha descending
  for (std::size_t k = 0; k + 1 < serial.points.size(); ++k)
    EXPECT_GT(serial.points[k].alpha, serial.points[k + 1].alpha);
}

TEST(RocSweep, NestedSupportsGiveMonotoneCounts) {
  const auto g = sfsel::generate_ba(15, 2, 8);
  const Matrix precision = sfsel::build_precision(g);
  const Matrix c =
      sfsel::empirical_covariance(sfsel::sample_gaussian(precision, 300, 9), true);
  SolveConfig cfg;
  std::vector<double> alphas;
  for (int k = 0; k < 8; ++k) alphas.push_back(0.5 * std::pow(0.6, k));
  const auto curve = roc_sweep(c, g, L1Penalty{}, cfg, alphas);

  // recompute supports to know where nesting actually holds
  std::vector<EdgeSet> supports;
  for (const auto& pt : curve.points) {
    SolveConfig c2 = cfg;
    c2.alpha = pt.alpha;
    supports.push_back(sfsel::admm_covsel(c, L1Penalty{}, c2).edge_set);
  }
  for (std::size_t k = 0; k + 1 < supports.size(); ++k) {
    bool nested = true;
    for (const auto& e : supports[k].edges())
      if (!supports[k + 1].contains(e.first, e.second)) nested = false;
    if (nested) {
      EXPECT_LE(curve.points[k].tp, curve.points[k + 1].tp);
      EXPECT_LE(curve.points[k].fp, curve.points[k + 1].fp);
    }
  }
}

TEST(RocSweep, RecordsFailuresAndContinues) {
  const auto g = sfsel::generate_ba(10, 2, 4);
  const Matrix precision = sfsel::build_precision(g);
  const Matrix c =
      sfsel::empirical_covariance(sfsel::sample_gaussian(precision, 200, 5), true);
  int calls = 0;
  const auto curve = sfsel::roc_sweep_with(
      g,
      [&](double alpha) {
        ++calls;
        if (alpha > 0.3) throw std::runtime_error("boom");
        SolveConfig cfg;
        cfg.alpha = alpha;
        return sfsel::admm_covsel(c, L1Penalty{}, cfg);
      },
      {0.5, 0.1});
  EXPECT_EQ(calls, 2);
  EXPECT_EQ(curve.failures, 1);
  EXPECT_FALSE(curve.points[0].solved);
  EXPECT_EQ(curve.points[0].error, "boom");
  EXPECT_TRUE(curve.points[1].solved);
}

TEST(DegreeHistogram, KnownShapes) {
  const auto empty_hist = sfsel::degree_histogram(EdgeSet(5));
  ASSERT_EQ(empty_hist.size(), 1u);
  EXPECT_EQ(empty_hist.at(0), 5);

  EdgeSet star(4);
  star.add(0, 1);
  star.add(0, 2);
  star.add(0, 3);
  const auto h = sfsel::degree_histogram(star);
  EXPECT_EQ(h.at(1), 3);
  EXPECT_EQ(h.at(3), 1);

  // sum of degree * count = 2 |E|
  sfsel::Rng rng(431);
  const EdgeSet g = random_graph(9, 0.5, rng);
  long acc = 0;
  for (const auto& [d, c] : sfsel::degree_histogram(g)) acc += static_cast<long>(d) * c;
  EXPECT_EQ(acc, 2 * g.size());
}

TEST(DegreeHistogram, BaPooledTailIsHeavy) {
  std::map<int, long> pooled;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (const auto& [d, c] : sfsel::degree_histogram(sfsel::generate_ba(500, 2, seed).edges))
      pooled[d] += c;
  int max_degree = pooled.rbegin()->first;
  // median degree is m = 2 by construction; the tail reaches far beyond it
  EXPECT_GE(max_degree, 10 * 2);
}

}  // namespace
