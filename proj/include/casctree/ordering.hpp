#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "casctree/treemodel.hpp"
#include "casctree/types.hpp"

namespace casctree {

inline constexpr double kSparseZeroTol = 1e-10;

enum class FactorizationKind {
  lower_cholesky_ordered,  // parent-first permutation, keeps Q sparse
  upper_cholesky,          // no permutation, no sparsity preservation
  symmetric_sqrt
};

// One cascade stage: the tree used, the decomposition C of its covariance
// (Sigma_T = C * C^T) and the sparse inverse Q = C^-1 that maps the stage
// input to the next residual.
struct StageTransform {
  int stage_index = 0;
  FactorizationKind kind = FactorizationKind::lower_cholesky_ordered;
  Permutation perm = Permutation::identity(0);
  Matrix factor;          // L_i in permuted order; U or S for the other kinds
  Matrix transform;       // C_T = P^T L P (resp. U, S)
  Matrix inverse_sparse;  // Q = C_T^-1
  TreeModel tree;
  double kl_after = std::numeric_limits<double>::quiet_NaN();
};

// Parent-first ordering: per component, root = lowest-index node, depth-first
// preorder with children visited in ascending index; components ordered by
// root. Under this ordering the inverse Cholesky factor of Sigma_T has at
// most two nonzeros per row (diagonal + parent column).
Permutation connected_ordering(const TreeModel& tree);

// Ordered lower-Cholesky stage: L = chol(P Sigma_T P^T), C = P^T L P,
// Q computed by triangular substitution and un-permuted.
StageTransform stage_transform(const TreeModel& tree);

// General form used by the cascade: permutation is honored only by the
// lower-Cholesky kind (the others factor in natural order).
StageTransform build_stage(const TreeModel& tree, FactorizationKind kind,
                           const Permutation& perm, int stage_index);

// Bipartite factor-graph description of one stage: one factor per output
// variable carrying its nonzero Q coefficients over the input variables.
// edge_count counts bipartite edges (= nonzeros of Q); coupling_count counts
// the pairwise couplings only (off-diagonal nonzeros, at most n-1 per stage).
struct FactorGraphDoc {
  struct Factor {
    int out_var;                                  // k: factor of X^k
    std::vector<std::pair<int, double>> coeffs;  // (input var j, q_kj), j asc
  };
  int n = 0;
  int stage_index = 0;
  std::string out_label = "x";
  std::string in_label = "z";
  std::vector<Factor> factors;
  int edge_count = 0;
  int coupling_count = 0;

  std::string to_dot() const;
};

FactorGraphDoc to_factor_graph(const StageTransform& st,
                               const std::string& out_label = "x",
                               const std::string& in_label = "z");

}  // namespace casctree
