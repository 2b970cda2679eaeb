#pragma once

#include <Eigen/Dense>
#include <numeric>
#include <vector>

#include "casctree/errors.hpp"

namespace casctree {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Node-to-position map. The matrix form P has P(pos(i), i) = 1, so a matrix
// reordered into "position space" is P * M * P^T.
class Permutation {
 public:
  static Permutation identity(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return Permutation(std::move(p));
  }

  // order[k] = node placed at position k.
  static Permutation from_order(const std::vector<int>& order) {
    std::vector<int> pos(order.size(), -1);
    for (int k = 0; k < static_cast<int>(order.size()); ++k) {
      int node = order[k];
      if (node < 0 || node >= static_cast<int>(order.size()) || pos[node] != -1)
        throw DimensionMismatch(node, static_cast<long>(order.size()));
      pos[node] = k;
    }
    return Permutation(std::move(pos));
  }

  explicit Permutation(std::vector<int> node_to_pos)
      : pos_(std::move(node_to_pos)) {
    std::vector<char> seen(pos_.size(), 0);
    for (int p : pos_) {
      if (p < 0 || p >= static_cast<int>(pos_.size()) || seen[p])
        throw DimensionMismatch(p, static_cast<long>(pos_.size()));
      seen[p] = 1;
    }
  }

  int n() const { return static_cast<int>(pos_.size()); }
  int pos(int node) const { return pos_.at(node); }
  int node(int position) const {
    for (int i = 0; i < n(); ++i)
      if (pos_[i] == position) return i;
    throw DimensionMismatch(position, n());
  }

  std::vector<int> order() const {
    std::vector<int> ord(n());
    for (int i = 0; i < n(); ++i) ord[pos_[i]] = i;
    return ord;
  }

  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (pos_[i] != i) return false;
    return true;
  }

  Permutation inverse() const { return from_order(pos_); }

  Matrix matrix() const {
    Matrix P = Matrix::Zero(n(), n());
    for (int i = 0; i < n(); ++i) P(pos_[i], i) = 1.0;
    return P;
  }

 private:
  std::vector<int> pos_;
};

// Validated correlation matrix: symmetric, unit diagonal, positive definite.
// Construct through validate_corr().
class CorrMatrix {
 public:
  const Matrix& mat() const { return m_; }
  operator const Matrix&() const { return m_; }
  int n() const { return static_cast<int>(m_.rows()); }

 private:
  friend CorrMatrix validate_corr(Matrix m);
  explicit CorrMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

}  // namespace casctree
