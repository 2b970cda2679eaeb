#include "casctree/treemodel.hpp"

#include <algorithm>
#include <cmath>

#include "casctree/symcore.hpp"

namespace casctree {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::vector<std::vector<int>> component_partition(int n,
                                                  const std::vector<TreeEdge>& edges) {
  UnionFind uf(n);
  for (const auto& e : edges) uf.unite(e.u, e.v);
  std::vector<std::vector<int>> byroot(n);
  for (int i = 0; i < n; ++i) byroot[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> comps;
  for (auto& c : byroot)
    if (!c.empty()) comps.push_back(std::move(c));
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

// Path products scaled by sqrt of the source variances. Validates acyclicity.
Matrix scaled_tree_covariance(int n, const std::vector<TreeEdge>& edges,
                              const Vector& diag) {
  UnionFind uf(n);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
      throw CyclicEdges();
    if (std::abs(e.rho) >= 1.0) throw InvalidCorrelation(e.u, e.v, e.rho);
    if (!uf.unite(e.u, e.v)) throw CyclicEdges();
  }
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.rho);
    adj[e.v].emplace_back(e.u, e.rho);
  }
  Matrix corr = Matrix::Identity(n, n);
  std::vector<int> stack;
  std::vector<char> seen(n);
  for (int s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& [y, rho] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        corr(s, y) = corr(s, x) * rho;
        stack.push_back(y);
      }
    }
  }
  Vector sd = diag.cwiseSqrt();
  return sd.asDiagonal() * corr * sd.asDiagonal();
}

double correlation(const Matrix& m, const Vector& sd, int u, int v) {
  return m(u, v) / (sd(u) * sd(v));
}

TreeModel assemble(const Matrix& source, std::vector<TreeEdge> edges) {
  const int n = static_cast<int>(source.rows());
  TreeModel t;
  t.n = n;
  t.edges = std::move(edges);
  t.components = component_partition(n, t.edges);
  t.covariance = scaled_tree_covariance(n, t.edges, source.diagonal());
  return t;
}

}  // namespace

TreeModel chow_liu(const Matrix& source, double zero_tol) {
  if (source.rows() != source.cols())
    throw NotSquare(source.rows(), source.cols());
  const int n = static_cast<int>(source.rows());
  Vector sd = source.diagonal().cwiseSqrt();

  struct Cand {
    double w;
    int u, v;
    double rho;
  };
  std::vector<Cand> cands;
  cands.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double rho = correlation(source, sd, u, v);
      if (std::abs(rho) >= 1.0) throw InvalidCorrelation(u, v, rho);
      if (std::abs(rho) <= zero_tol) continue;
      cands.push_back({-0.5 * std::log1p(-rho * rho), u, v, rho});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  UnionFind uf(n);
  std::vector<TreeEdge> edges;
  for (const auto& c : cands)
    if (uf.unite(c.u, c.v)) edges.push_back({c.u, c.v, c.rho});
  return assemble(source, std::move(edges));
}

Matrix tree_covariance(int n, const std::vector<TreeEdge>& edges) {
  return scaled_tree_covariance(n, edges, Vector::Ones(n));
}

TreeModel star_tree(const Matrix& source, int center) {
  if (source.rows() != source.cols())
    throw NotSquare(source.rows(), source.cols());
  const int n = static_cast<int>(source.rows());
  if (center < 0 || center >= n) throw InvalidCenter(center);
  Vector sd = source.diagonal().cwiseSqrt();
  std::vector<TreeEdge> edges;
  edges.reserve(n - 1);
  for (int v = 0; v < n; ++v) {
    if (v == center) continue;
    double rho = correlation(source, sd, center, v);
    if (std::abs(rho) >= 1.0) throw InvalidCorrelation(center, v, rho);
    edges.push_back({std::min(center, v), std::max(center, v), rho});
  }
  return assemble(source, std::move(edges));
}

std::pair<int, TreeModel> best_star(const Matrix& source) {
  const int n = static_cast<int>(source.rows());
  int best = -1;
  double best_kl = 0.0;
  TreeModel best_tree;
  for (int c = 0; c < n; ++c) {
    TreeModel t = star_tree(source, c);
    double kl = kl_gauss(source, t.covariance);
    if (best < 0 || kl < best_kl) {
      best = c;
      best_kl = kl;
      best_tree = std::move(t);
    }
  }
  return {best, std::move(best_tree)};
}

}  // namespace casctree
