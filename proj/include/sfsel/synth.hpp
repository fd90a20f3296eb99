#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfsel/edge_set.hpp"
#include "sfsel/rng.hpp"

namespace sfsel {

struct GroundTruthGraph {
  EdgeSet edges{0};
  std::string model;                    // "ba" or "powerlaw"
  std::map<std::string, double> params;  // m or exponent
  std::uint64_t seed = 0;

  int n() const { return edges.n(); }
};

// Preferential attachment: m isolated seed nodes, then each arriving node
// draws m distinct neighbours among the existing nodes with probability
// proportional to degree + 1 (so isolated seeds can be picked). Duplicate
// draws within a step are rejected, which makes the edge count exactly
// m * (n - m).
inline GroundTruthGraph generate_ba(int n, int m, std::uint64_t seed) {
  if (m < 1 || n <= m) throw std::invalid_argument("generate_ba: need n > m >= 1");
  Rng rng(seed);
  GroundTruthGraph g{EdgeSet(n), "ba", {{"m", static_cast<double>(m)}}, seed};

  // Each node appears once at birth and once per incident edge, so a
  // uniform pick from the pool is proportional to degree + 1.
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(2 * m * (n - m) + n));
  for (int v = 0; v < m; ++v) pool.push_back(v);

  for (int v = m; v < n; ++v) {
    // v is kept out of the pool until its step is done, so no self-loops.
    for (int e = 0; e < m; ++e) {
      int target = pool[rng.uniform_index(pool.size())];
      while (g.edges.contains(v, target)) target = pool[rng.uniform_index(pool.size())];
      g.edges.add(v, target);
      pool.push_back(target);
    }
    for (int e = 0; e <= m; ++e) pool.push_back(v);  // birth + m incident edges
  }
  return g;
}

// Discrete power-law degrees: P(d) proportional to d^-exponent on
// [1, max_degree].
inline std::vector<int> sample_powerlaw_degrees(int n, double exponent, int max_degree, Rng& rng) {
  if (max_degree < 1) throw std::invalid_argument("sample_powerlaw_degrees: max_degree < 1");
  std::vector<double> cdf(static_cast<std::size_t>(max_degree));
  double total = 0.0;
  for (int d = 1; d <= max_degree; ++d) {
    total += std::pow(static_cast<double>(d), -exponent);
    cdf[d - 1] = total;
  }
  std::vector<int> degrees(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const double u = rng.uniform01() * total;
    int lo = 0, hi = max_degree - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (cdf[mid] < u)
        lo = mid + 1;
      else
        hi = mid;
    }
    degrees[v] = lo + 1;
  }
  return degrees;
}

// Configuration model with a power-law target degree sequence: sample
// degrees, make the stub count even, wire stubs uniformly, then drop
// self-loops and collapse parallel edges.
inline GroundTruthGraph generate_powerlaw_config(int n, double exponent, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("generate_powerlaw_config: need n >= 4");
  if (!(exponent > 1.0)) throw std::invalid_argument("generate_powerlaw_config: exponent must be > 1");
  Rng rng(seed);
  GroundTruthGraph g{EdgeSet(n), "powerlaw", {{"exponent", exponent}}, seed};

  std::vector<int> degrees = sample_powerlaw_degrees(n, exponent, n - 1, rng);
  long stub_count = 0;
  for (int d : degrees) stub_count += d;
  if (stub_count % 2 != 0) {
    bool adjusted = false;
    for (auto& d : degrees) {
      if (d < n - 1) {
        ++d;
        adjusted = true;
        break;
      }
    }
    if (!adjusted) throw std::runtime_error("generate_powerlaw_config: cannot even out degree sum");
    ++stub_count;
  }

  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(stub_count));
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < degrees[v]; ++k) stubs.push_back(v);
  // Fisher-Yates shuffle
  for (std::size_t i = stubs.size(); i > 1; --i)
    std::swap(stubs[i - 1], stubs[rng.uniform_index(i)]);

  for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
    const int a = stubs[k], b = stubs[k + 1];
    if (a == b) continue;
    if (!g.edges.contains(a, b)) g.edges.add(a, b);
  }
  return g;
}

// Ground-truth precision matrix: constant weight on each edge and a
// diagonal of base - (row sum of edge weights), which is strictly
// diagonally dominant (hence positive definite) for the defaults.
inline Matrix build_precision(const GroundTruthGraph& g, double edge_weight = -0.2,
                              double base = 0.5) {
  const int n = g.n();
  Matrix x = Matrix::Zero(n, n);
  for (const auto& [i, j] : g.edges.edges()) {
    x(i, j) = edge_weight;
    x(j, i) = edge_weight;
  }
  for (int v = 0; v < n; ++v) x(v, v) = base - (x.row(v).sum() - x(v, v));
  Eigen::LLT<Matrix> llt(x);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("build_precision: matrix is not positive definite");
  return x;
}

struct DataMatrix {
  Matrix samples;  // N x n
  std::uint64_t seed = 0;
};

// N draws from the zero-mean Gaussian with the given precision: with
// precision = L L^T, solving L^T x = z for standard normal z gives
// cov(x) = precision^{-1}.
inline DataMatrix sample_gaussian(const Matrix& precision, int num_samples, std::uint64_t seed) {
  if (num_samples < 1) throw std::invalid_argument("sample_gaussian: need at least one sample");
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("sample_gaussian: precision is not positive definite");
  const Eigen::Index n = precision.rows();
  Rng rng(seed);
  DataMatrix d{Matrix(num_samples, n), seed};
  Vector z(n);
  for (int s = 0; s < num_samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal();
    d.samples.row(s) = llt.matrixU().solve(z);
  }
  return d;
}

// Empirical covariance (1/N scaling, mean subtracted); with normalize the
// result is rescaled to a correlation-like matrix with unit diagonal.
inline Matrix empirical_covariance(const DataMatrix& d, bool normalize) {
  const Eigen::Index num_samples = d.samples.rows();
  if (num_samples < 2) throw std::invalid_argument("empirical_covariance: need at least 2 samples");
  const Matrix centered = d.samples.rowwise() - d.samples.colwise().mean();
  Matrix c = (centered.transpose() * centered) / static_cast<double>(num_samples);
  c = 0.5 * (c + c.transpose());
  if (normalize) {
    const Eigen::Index n = c.rows();
    Vector scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(c(i, i) > 0.0))
        throw std::domain_error("empirical_covariance: zero variance in coordinate " +
                                std::to_string(i));
      scale[i] = 1.0 / std::sqrt(c(i, i));
    }
    c = scale.asDiagonal() * c * scale.asDiagonal();
    c.diagonal().setOnes();
  }
  return c;
}

}  // namespace sfsel
