#pragma once

#include <utility>
#include <vector>

#include "casctree/types.hpp"

namespace casctree {

inline constexpr double kDefaultZeroTol = 1e-12;

struct TreeEdge {
  int u, v;    // zero-based node indices, u < v
  double rho;  // correlation of the source matrix
};

// Spanning tree or forest together with its induced covariance. When built
// from a source whose diagonal is not exactly one (late-stage CAMs under the
// unordered factorizations), `covariance` carries the source variances so the
// pairwise marginals still match exactly; for correlation-matrix sources it
// is unit-diagonal.
struct TreeModel {
  int n = 0;
  std::vector<TreeEdge> edges;
  std::vector<std::vector<int>> components;  // sorted nodes, ordered by min
  Matrix covariance;                         // Sigma_T
};

// Maximum-weight spanning forest under w(u,v) = -1/2 log(1 - rho^2), Kruskal
// with ties broken by (weight desc, lower node pair). Pairs with
// |rho| <= zero_tol are never edges.
TreeModel chow_liu(const Matrix& source, double zero_tol = kDefaultZeroTol);

// Unit-diagonal covariance obeying the path-product rule:
// out(u,v) = product of rho along the unique tree path (0 across components).
Matrix tree_covariance(int n, const std::vector<TreeEdge>& edges);

// Star: every node attached to `center` (zero-based).
TreeModel star_tree(const Matrix& source, int center);

// Center minimizing kl_gauss(source, star covariance); ties to lowest index.
std::pair<int, TreeModel> best_star(const Matrix& source);

}  // namespace casctree
