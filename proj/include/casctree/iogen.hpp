#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "casctree/types.hpp"

namespace casctree {

struct SyntheticSpec {
  int n = 0;
  double density = 0.0;  // target fraction of possible precision-graph edges
  std::uint64_t seed = 0;
};

// Headerless CSV of reals, comma-separated, one row per line. With
// normalize=true the parsed matrix is rescaled D^-1/2 M D^-1/2 before
// validation; otherwise non-unit diagonals are rejected.
CorrMatrix read_matrix(const std::string& path, bool normalize = false);

// Sample covariance (divisor m-1) of an m x n table with variables in
// columns, normalized to unit diagonal and validated.
CorrMatrix empirical_correlation(const Matrix& samples);

// Seeded sparse-precision instance: Erdos-Renyi edge pattern with probability
// `density`, heavy-tailed symmetric edge weights, diagonal = row absolute sum
// + 1 (strict diagonal dominance, hence PD), inverted and normalized to unit
// diagonal. Pure function of the spec.
CorrMatrix generate_synthetic(const SyntheticSpec& spec);

// Identifies the RNG and weight-law revision backing generate_synthetic, for
// reproducibility metadata.
std::string generator_id();

void write_matrix(const Matrix& m, const std::string& path);

// CSV with header "stage,kl_nats", one row per stage including stage 0.
void write_trace(const std::vector<double>& kl_trace, const std::string& path);

// Absolute values of m^-1 as CSV, for sparsity-pattern rendering.
void sparsity_dump(const Matrix& m, const std::string& path);

}  // namespace casctree
