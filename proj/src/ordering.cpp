#include "casctree/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "casctree/symcore.hpp"

namespace casctree {

Permutation connected_ordering(const TreeModel& tree) {
  const int n = tree.n;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : tree.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<int> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (const auto& comp : tree.components) {
    int root = comp.front();
    stack.assign(1, root);
    seen[root] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (auto it = adj[x].rbegin(); it != adj[x].rend(); ++it) {
        if (!seen[*it]) {
          seen[*it] = 1;
          stack.push_back(*it);
        }
      }
    }
  }
  return Permutation::from_order(order);
}

StageTransform stage_transform(const TreeModel& tree) {
  return build_stage(tree, FactorizationKind::lower_cholesky_ordered,
                     connected_ordering(tree), 1);
}

StageTransform build_stage(const TreeModel& tree, FactorizationKind kind,
                           const Permutation& perm, int stage_index) {
  StageTransform st;
  st.stage_index = stage_index;
  st.kind = kind;
  st.perm = perm;
  st.tree = tree;
  switch (kind) {
    case FactorizationKind::lower_cholesky_ordered: {
      Matrix permuted = permute_spd(tree.covariance, perm);
      st.factor = cholesky_lower(permuted);
      st.transform = unpermute_spd(st.factor, perm);
      st.inverse_sparse = unpermute_spd(invert_lower(st.factor), perm);
      break;
    }
    case FactorizationKind::upper_cholesky: {
      st.perm = Permutation::identity(tree.n);
      st.factor = cholesky_upper(tree.covariance);
      st.transform = st.factor;
      // U = J L_r J for the reversed lower factor, so U^-1 = J L_r^-1 J
      st.inverse_sparse = invert_lower(Matrix(st.factor.reverse())).reverse();
      break;
    }
    case FactorizationKind::symmetric_sqrt: {
      st.perm = Permutation::identity(tree.n);
      st.factor = symmetric_sqrt(tree.covariance);
      st.transform = st.factor;
      Matrix Linv = invert_lower(cholesky_lower(st.factor));
      st.inverse_sparse = Linv.transpose() * Linv;
      break;
    }
  }
  return st;
}

FactorGraphDoc to_factor_graph(const StageTransform& st,
                               const std::string& out_label,
                               const std::string& in_label) {
  const Matrix& Q = st.inverse_sparse;
  FactorGraphDoc doc;
  doc.n = static_cast<int>(Q.rows());
  doc.stage_index = st.stage_index;
  doc.out_label = out_label;
  doc.in_label = in_label;
  for (int k = 0; k < doc.n; ++k) {
    FactorGraphDoc::Factor f;
    f.out_var = k;
    for (int j = 0; j < doc.n; ++j) {
      if (std::abs(Q(k, j)) > kSparseZeroTol) {
        f.coeffs.emplace_back(j, Q(k, j));
        ++doc.edge_count;
        if (j != k) ++doc.coupling_count;
      }
    }
    doc.factors.push_back(std::move(f));
  }
  return doc;
}

std::string FactorGraphDoc::to_dot() const {
  std::string out = "graph stage_" + std::to_string(stage_index) + " {\n";
  out += "  rankdir=LR;\n  node [shape=circle];\n";
  for (int j = 0; j < n; ++j)
    out += "  " + in_label + std::to_string(j + 1) + ";\n";
  out += "  node [shape=box];\n";
  char buf[64];
  for (const auto& f : factors) {
    std::string label = out_label + std::to_string(f.out_var + 1) + ":";
    for (size_t c = 0; c < f.coeffs.size(); ++c) {
      std::snprintf(buf, sizeof buf, " %.4g", f.coeffs[c].second);
      label += buf;
      if (c + 1 < f.coeffs.size()) label += ",";
    }
    out += "  f" + std::to_string(f.out_var + 1) + " [label=\"" + label +
           "\"];\n";
  }
  for (const auto& f : factors)
    for (const auto& [j, q] : f.coeffs)
      out += "  f" + std::to_string(f.out_var + 1) + " -- " + in_label +
             std::to_string(j + 1) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace casctree
