#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casctree/ordering.hpp"
#include "casctree/treemodel.hpp"
#include "casctree/types.hpp"

namespace casctree {

// Residuals below this are numerically the identity; further stages would
// factor near-identity matrices and only accumulate roundoff.
inline constexpr double kEarlyExitKl = 1e-14;

enum class TreePolicy {
  chow_liu,
  star_fixed,  // center = stage index (cycling), no permutation
  star_sweep   // best_star per stage
};

const char* policy_name(TreePolicy p);
const char* factorization_name(FactorizationKind k);
std::optional<TreePolicy> parse_policy(const std::string& s);
std::optional<FactorizationKind> parse_factorization(const std::string& s);

// Residual state after stage i: Delta_i = Q_i Delta_{i-1} Q_i^T.
struct CamState {
  int i = 0;
  Matrix delta;
  double kl_to_identity = 0.0;
};

struct CascadeModel {
  int n = 0;
  TreePolicy policy = TreePolicy::chow_liu;
  FactorizationKind factorization = FactorizationKind::lower_cholesky_ordered;
  std::vector<StageTransform> stages;
  Matrix composite;              // C_M = C_T1 * C_T2 * ... * C_Tl
  Matrix model_cov;              // C_M * C_M^T
  std::vector<double> kl_trace;  // [i] = kl(source, model after stage i); [0] = kl(source, I)
  Matrix final_delta;
};

// Raised when a stage breaks down numerically; carries the trace up to the
// last completed stage.
struct CascadeAborted : std::runtime_error {
  std::vector<double> partial_trace;
  int failed_stage;
  CascadeAborted(const std::string& cause, std::vector<double> trace, int stage)
      : std::runtime_error("stage " + std::to_string(stage) +
                           " aborted: " + cause),
        partial_trace(std::move(trace)),
        failed_stage(stage) {}
};

CamState cam_update(const Matrix& delta_prev, const StageTransform& stage);

CascadeModel run_cascade(const CorrMatrix& source, TreePolicy policy,
                         FactorizationKind factorization, int max_stages,
                         std::optional<double> kl_threshold = std::nullopt);

// Star construction: center cycles through the nodes with no permutation;
// reaches Delta = I within n-1 stages.
CascadeModel star_exact_cascade(const CorrMatrix& source);

struct PolicyTrace {
  TreePolicy policy;
  FactorizationKind factorization;
  std::vector<double> kl_trace;
  std::string error;  // empty on success
};

// One trace per (policy, factorization) combination, all from the same
// source; per-combination failures are recorded, not fatal.
std::vector<PolicyTrace> compare_policies(const CorrMatrix& source, int l);

}  // namespace casctree
