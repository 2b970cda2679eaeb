#include "casctree/cascade.hpp"

#include <future>

#include "casctree/symcore.hpp"

namespace casctree {

const char* policy_name(TreePolicy p) {
  switch (p) {
    case TreePolicy::chow_liu: return "chow-liu";
    case TreePolicy::star_fixed: return "star-fixed";
    case TreePolicy::star_sweep: return "star-sweep";
  }
  return "?";
}

const char* factorization_name(FactorizationKind k) {
  switch (k) {
    case FactorizationKind::lower_cholesky_ordered: return "chol-ll";
    case FactorizationKind::upper_cholesky: return "chol-uu";
    case FactorizationKind::symmetric_sqrt: return "sym-sqrt";
  }
  return "?";
}

std::optional<TreePolicy> parse_policy(const std::string& s) {
  if (s == "chow-liu") return TreePolicy::chow_liu;
  if (s == "star-fixed") return TreePolicy::star_fixed;
  if (s == "star-sweep") return TreePolicy::star_sweep;
  return std::nullopt;
}

std::optional<FactorizationKind> parse_factorization(const std::string& s) {
  if (s == "chol-ll") return FactorizationKind::lower_cholesky_ordered;
  if (s == "chol-uu") return FactorizationKind::upper_cholesky;
  if (s == "sym-sqrt") return FactorizationKind::symmetric_sqrt;
  return std::nullopt;
}

CamState cam_update(const Matrix& delta_prev, const StageTransform& stage) {
  const Matrix& Q = stage.inverse_sparse;
  if (Q.rows() != delta_prev.rows())
    throw DimensionMismatch(Q.rows(), delta_prev.rows());
  Matrix raw = Q * delta_prev * Q.transpose();
  Matrix delta = 0.5 * (raw + raw.transpose());
  CamState cam;
  cam.i = stage.stage_index;
  cam.kl_to_identity =
      kl_gauss(delta, Matrix::Identity(delta.rows(), delta.cols()));
  cam.delta = std::move(delta);
  return cam;
}

CascadeModel run_cascade(const CorrMatrix& source, TreePolicy policy,
                         FactorizationKind factorization, int max_stages,
                         std::optional<double> kl_threshold) {
  if (max_stages < 1) throw DimensionMismatch(max_stages, 1);
  const int n = source.n();
  CascadeModel model;
  model.n = n;
  model.policy = policy;
  model.factorization = factorization;
  model.composite = Matrix::Identity(n, n);

  Matrix delta = source.mat();
  model.kl_trace.push_back(kl_gauss(delta, Matrix::Identity(n, n)));

  for (int i = 1; i <= max_stages; ++i) {
    if (model.kl_trace.back() <= kEarlyExitKl) break;
    try {
      TreeModel tree;
      switch (policy) {
        case TreePolicy::chow_liu:
          tree = chow_liu(delta);
          break;
        case TreePolicy::star_fixed:
          tree = star_tree(delta, (i - 1) % n);
          break;
        case TreePolicy::star_sweep:
          tree = best_star(delta).second;
          break;
      }
      Permutation perm = (policy == TreePolicy::star_fixed)
                             ? Permutation::identity(n)
                             : connected_ordering(tree);
      StageTransform st = build_stage(tree, factorization, perm, i);
      CamState cam = cam_update(delta, st);
      delta = cam.delta;
      st.kl_after = cam.kl_to_identity;
      model.kl_trace.push_back(cam.kl_to_identity);
      model.composite = model.composite * st.transform;
      model.stages.push_back(std::move(st));
    } catch (const CascadeAborted&) {
      throw;
    } catch (const std::exception& e) {
      throw CascadeAborted(e.what(), model.kl_trace, i);
    }
    if (kl_threshold && model.kl_trace.back() <= *kl_threshold) break;
  }

  model.final_delta = std::move(delta);
  Matrix raw = model.composite * model.composite.transpose();
  model.model_cov = 0.5 * (raw + raw.transpose());
  return model;
}

CascadeModel star_exact_cascade(const CorrMatrix& source) {
  int stages = std::max(1, source.n() - 1);
  return run_cascade(source, TreePolicy::star_fixed,
                     FactorizationKind::lower_cholesky_ordered, stages);
}

std::vector<PolicyTrace> compare_policies(const CorrMatrix& source, int l) {
  std::vector<std::future<PolicyTrace>> jobs;
  for (TreePolicy p : {TreePolicy::chow_liu, TreePolicy::star_fixed,
                       TreePolicy::star_sweep}) {
    for (FactorizationKind k : {FactorizationKind::lower_cholesky_ordered,
                                FactorizationKind::upper_cholesky,
                                FactorizationKind::symmetric_sqrt}) {
      jobs.push_back(std::async(std::launch::async, [&source, p, k, l] {
        PolicyTrace t;
        t.policy = p;
        t.factorization = k;
        try {
          t.kl_trace = run_cascade(source, p, k, l).kl_trace;
        } catch (const CascadeAborted& e) {
          t.kl_trace = e.partial_trace;
          t.error = e.what();
        } catch (const std::exception& e) {
          t.error = e.what();
        }
        return t;
      }));
    }
  }
  std::vector<PolicyTrace> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace casctree
