#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sfsel/edge_set.hpp"
#include "sfsel/weights.hpp"

namespace sfsel {

inline void require_symmetric(const Matrix& x, double tol = 1e-12) {
  if (x.rows() != x.cols()) throw std::invalid_argument("matrix not square");
  const double asym = (x - x.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= tol)) throw std::invalid_argument("matrix not symmetric");
}

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Per-row permutation of the off-diagonal column indices, sorted by
// decreasing absolute value of the row entries. Ties are broken by column
// index so the ordering is deterministic; the regularizer's value does not
// depend on the tie rule.
class RowOrdering {
 public:
  explicit RowOrdering(const Matrix& x) {
    const Eigen::Index n = x.rows();
    order_.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& row = order_[static_cast<std::size_t>(i)];
      row.reserve(static_cast<std::size_t>(n - 1));
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) row.push_back(j);
      std::stable_sort(row.begin(), row.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(x(i, a)) > std::abs(x(i, b));
      });
    }
  }

  // Column index holding the rank-th largest |entry| of the given row.
  Eigen::Index column(Eigen::Index row, Eigen::Index rank) const {
    return order_[static_cast<std::size_t>(row)][static_cast<std::size_t>(rank)];
  }

  const std::vector<Eigen::Index>& row(Eigen::Index i) const {
    return order_[static_cast<std::size_t>(i)];
  }

 private:
  std::vector<std::vector<Eigen::Index>> order_;
};

// Combinatorial degree prior F(E) = sum_v h(deg(v)), the negative
// log-likelihood of the degree-parameterized graph family (constant
// dropped).
inline double combinatorial_F(const EdgeSet& es, const WeightSequence& w) {
  double total = 0.0;
  for (int d : es.degrees()) {
    if (d > w.max_degree()) throw std::out_of_range("combinatorial_F: degree exceeds max_degree");
    total += w.h(d);
  }
  return total;
}

// Convex relaxation of F on weighted symmetric matrices: each row's
// off-diagonal entries are sorted by decreasing magnitude and weighted by
// the differences h(k+1) - h(k). Agrees with F on 0/1 adjacency matrices.
inline double omega(const Matrix& x, const WeightSequence& w) {
  require_symmetric(x);
  const Eigen::Index n = x.rows();
  if (n - 1 > w.max_degree()) throw std::out_of_range("omega: matrix larger than max_degree + 1");
  std::vector<double> mags(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) mags[m++] = std::abs(x(i, j));
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    for (std::size_t k = 0; k < m; ++k) total += w.diff(static_cast<int>(k)) * mags[k];
  }
  return total;
}

// One member of the subdifferential of omega with respect to the symmetric
// free variables: the pair (i, j) accumulates sign(X_ij) * diff(rank of j in
// row i) plus the mirrored term from row j. Entries that are exactly zero
// get component 0, which is admissible because every diff is nonnegative.
inline Matrix omega_subgradient(const Matrix& x, const WeightSequence& w) {
  require_symmetric(x);
  const Eigen::Index n = x.rows();
  if (n - 1 > w.max_degree()) throw std::out_of_range("omega: matrix larger than max_degree + 1");
  RowOrdering ordering(x);
  Matrix g = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = ordering.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Eigen::Index j = row[k];
      const double c = sign(x(i, j)) * w.diff(static_cast<int>(k));
      g(i, j) += c;
      g(j, i) += c;
    }
  }
  return g;
}

}  // namespace sfsel
