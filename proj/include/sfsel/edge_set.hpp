#pragma once

#include <Eigen/Dense>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sfsel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Simple undirected graph on nodes [0, n): no self-loops, no duplicates.
// Edges are stored as ordered pairs (i < j).
class EdgeSet {
 public:
  explicit EdgeSet(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("EdgeSet: negative node count");
  }

  int n() const { return n_; }
  long size() const { return static_cast<long>(edges_.size()); }

  // Returns false when the edge was already present.
  bool add(int i, int j) {
    if (i == j) throw std::invalid_argument("EdgeSet: self-loop");
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("EdgeSet: node out of range");
    if (i > j) std::swap(i, j);
    return edges_.insert({i, j}).second;
  }

  bool contains(int i, int j) const {
    if (i > j) std::swap(i, j);
    return edges_.count({i, j}) > 0;
  }

  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_), 0);
    for (const auto& [i, j] : edges_) {
      ++d[i];
      ++d[j];
    }
    return d;
  }

  int max_degree() const {
    int m = 0;
    for (int d : degrees()) m = std::max(m, d);
    return m;
  }

  // 0/1 adjacency matrix.
  Matrix indicator() const {
    Matrix a = Matrix::Zero(n_, n_);
    for (const auto& [i, j] : edges_) {
      a(i, j) = 1.0;
      a(j, i) = 1.0;
    }
    return a;
  }

  // Support of the off-diagonal of a square matrix (exact nonzeros).
  static EdgeSet from_support(const Matrix& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("EdgeSet: matrix not square");
    const int n = static_cast<int>(x.rows());
    EdgeSet es(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (x(i, j) != 0.0 || x(j, i) != 0.0) es.add(i, j);
    return es;
  }

 private:
  int n_;
  std::set<std::pair<int, int>> edges_;
};

}  // namespace sfsel
