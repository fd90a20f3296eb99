#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <queue>
#include <vector>

#include "sfsel/synth.hpp"

namespace {

using sfsel::DataMatrix;
using sfsel::GroundTruthGraph;
using sfsel::Matrix;
using sfsel::Vector;
using sfsel::build_precision;
using sfsel::empirical_covariance;
using sfsel::generate_ba;
using sfsel::generate_powerlaw_config;
using sfsel::sample_gaussian;

bool connected(const sfsel::EdgeSet& es) {
  const int n = es.n();
  std::vector<std::vector<int>> adj(n);
  for (const auto& [i, j] : es.edges()) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int visited = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++visited;
        q.push(u);
      }
  }
  return visited == n;
}

// Power-law exponent estimated from the pooled log-log survival curve:
// survival ~ d^{1 - gamma} for density exponent gamma. The fit stops where
// the survival probability drops below 0.5%, before the finite-size cutoff
// bends the curve.
double survival_exponent(const std::vector<int>& degrees, int d_min) {
  int d_max = 0;
  for (int d : degrees) d_max = std::max(d_max, d);
  std::vector<double> xs, ys;
  const double total = static_cast<double>(degrees.size());
  const long min_count = static_cast<long>(0.005 * total);
  for (int d = d_min; d <= d_max; ++d) {
    long count = 0;
    for (int v : degrees)
      if (v >= d) ++count;
    if (count < min_count) break;
    xs.push_back(std::log(static_cast<double>(d)));
    ys.push_back(std::log(static_cast<double>(count) / total));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return 1.0 - slope;
}

TEST(GenerateBa, TreeForMOne) {
  const auto g = generate_ba(5, 1, 9);
  EXPECT_EQ(g.edges.size(), 4);
  EXPECT_TRUE(connected(g.edges));
}

TEST(GenerateBa, ExactEdgeCount) {
  const auto g = generate_ba(60, 2, 7);
  EXPECT_EQ(g.edges.size(), 2 * (60 - 2));  // m(n - m) = 116
  EXPECT_EQ(g.n(), 60);
  EXPECT_EQ(g.model, "ba");
}

TEST(GenerateBa, DeterministicInSeed) {
  const auto a = generate_ba(40, 2, 123);
  const auto b = generate_ba(40, 2, 123);
  const auto c = generate_ba(40, 2, 124);
  EXPECT_EQ(a.edges.edges(), b.edges.edges());
  EXPECT_NE(a.edges.edges(), c.edges.edges());
}

TEST(GenerateBa, RejectsBadSizes) {
  EXPECT_THROW(generate_ba(3, 3, 1), std::invalid_argument);
  EXPECT_THROW(generate_ba(5, 0, 1), std::invalid_argument);
}

TEST(GenerateBa, DegreeTailExponent) {
  std::vector<int> pooled;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = generate_ba(500, 2, seed);
    const auto deg = g.edges.degrees();
    pooled.insert(pooled.end(), deg.begin(), deg.end());
  }
  const double gamma = survival_exponent(pooled, 2);
  EXPECT_GT(gamma, 2.4);
  EXPECT_LT(gamma, 3.6);
}

TEST(GeneratePowerlaw, SimpleGraph) {
  const auto g = generate_powerlaw_config(60, 2.0, 5);
  EXPECT_EQ(g.n(), 60);
  EXPECT_GT(g.edges.size(), 0);
  for (const auto& [i, j] : g.edges.edges()) {
    ASSERT_NE(i, j);
    ASSERT_GE(i, 0);
    ASSERT_LT(j, 60);
  }
  EXPECT_EQ(g.model, "powerlaw");
}

TEST(GeneratePowerlaw, HugeExponentGivesMatching) {
  // exponent 50 makes every degree 1: the wiring is a perfect matching
  const auto g = generate_powerlaw_config(60, 50.0, 11);
  EXPECT_EQ(g.edges.size(), 30);
  for (int d : g.edges.degrees()) ASSERT_EQ(d, 1);
}

TEST(GeneratePowerlaw, DeterministicInSeed) {
  const auto a = generate_powerlaw_config(50, 2.0, 77);
  const auto b = generate_powerlaw_config(50, 2.0, 77);
  EXPECT_EQ(a.edges.edges(), b.edges.edges());
}

TEST(GeneratePowerlaw, DegreeSequenceChiSquared) {
  // pooled sampled degrees (before wiring) against the truncated power law;
  // greedy binning to expected count >= 5 gives 31 bins, and the 1% critical
  // value for 30 degrees of freedom is 50.892.
  const int n = 60, max_degree = 59;
  const double exponent = 2.0;
  std::vector<long> counts(max_degree + 1, 0);
  long total = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    sfsel::Rng rng(seed);
    for (int d : sfsel::sample_powerlaw_degrees(n, exponent, max_degree, rng)) {
      ++counts[d];
      ++total;
    }
  }
  std::vector<double> pmf(max_degree + 1, 0.0);
  double z = 0.0;
  for (int d = 1; d <= max_degree; ++d) z += std::pow(d, -exponent);
  for (int d = 1; d <= max_degree; ++d) pmf[d] = std::pow(d, -exponent) / z;

  std::vector<std::pair<double, double>> bins;  // (observed, expected)
  double obs = 0.0, exp = 0.0;
  for (int d = 1; d <= max_degree; ++d) {
    obs += counts[d];
    exp += total * pmf[d];
    if (exp >= 5.0) {
      bins.emplace_back(obs, exp);
      obs = exp = 0.0;
    }
  }
  if (exp > 0.0) {
    bins.back().first += obs;
    bins.back().second += exp;
  }
  ASSERT_EQ(bins.size(), 31u);
  double chi2 = 0.0;
  for (const auto& [o, e] : bins) chi2 += (o - e) * (o - e) / e;
  EXPECT_LT(chi2, 50.892);
}

TEST(BuildPrecision, EdgelessAndSingleEdge) {
  GroundTruthGraph empty{sfsel::EdgeSet(3), "ba", {}, 0};
  const Matrix x = build_precision(empty);
  EXPECT_LT((x - 0.5 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);

  GroundTruthGraph pair{sfsel::EdgeSet(2), "ba", {}, 0};
  pair.edges.add(0, 1);
  const Matrix y = build_precision(pair);
  EXPECT_NEAR(y(0, 0), 0.7, 1e-15);
  EXPECT_NEAR(y(1, 1), 0.7, 1e-15);
  EXPECT_NEAR(y(0, 1), -0.2, 1e-15);
}

TEST(BuildPrecision, DiagonalTracksDegreeAndDominates) {
  const auto g = generate_ba(30, 2, 3);
  const Matrix x = build_precision(g);
  const auto deg = g.edges.degrees();
  for (int v = 0; v < 30; ++v) {
    ASSERT_NEAR(x(v, v), 0.5 + 0.2 * deg[v], 1e-12);
    double off = 0.0;
    for (int j = 0; j < 30; ++j)
      if (j != v) off += std::abs(x(v, j));
    ASSERT_GT(std::abs(x(v, v)), off);  // strict diagonal dominance
  }
}

TEST(BuildPrecision, RejectsIndefiniteParameters) {
  const auto g = generate_ba(10, 2, 3);
  EXPECT_THROW(build_precision(g, -0.2, -1.0), std::domain_error);
}

TEST(SampleGaussian, IdentityPrecisionCovariance) {
  const Matrix eye = Matrix::Identity(10, 10);
  const DataMatrix d = sample_gaussian(eye, 5000, 21);
  EXPECT_EQ(d.samples.rows(), 5000);
  const Matrix c = empirical_covariance(d, false);
  EXPECT_LT((c - eye).norm(), 0.2);
}

TEST(SampleGaussian, SingleSampleAndDeterminism) {
  const Matrix eye = Matrix::Identity(4, 4);
  const DataMatrix one = sample_gaussian(eye, 1, 5);
  EXPECT_TRUE(one.samples.allFinite());
  const DataMatrix a = sample_gaussian(eye, 50, 6);
  const DataMatrix b = sample_gaussian(eye, 50, 6);
  EXPECT_EQ((a.samples - b.samples).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SampleGaussian, MatchesTargetCovariance) {
  const auto g = generate_ba(12, 2, 9);
  const Matrix precision = build_precision(g);
  const Matrix target = precision.inverse();
  const DataMatrix d = sample_gaussian(precision, 40000, 17);
  const Matrix c = empirical_covariance(d, false);
  EXPECT_LT((c - target).norm() / target.norm(), 0.05);
}

TEST(EmpiricalCovariance, NormalizationAndErrors) {
  DataMatrix degenerate{Matrix::Ones(2, 3), 0};
  EXPECT_THROW(empirical_covariance(degenerate, true), std::domain_error);
  DataMatrix single{Matrix::Ones(1, 3), 0};
  EXPECT_THROW(empirical_covariance(single, false), std::invalid_argument);

  const DataMatrix d = sample_gaussian(build_precision(generate_ba(20, 2, 4)), 500, 8);
  const Matrix c = empirical_covariance(d, true);
  for (int i = 0; i < 20; ++i) ASSERT_EQ(c(i, i), 1.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);  // PSD up to roundoff
}

}  // namespace
