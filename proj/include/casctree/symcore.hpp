#pragma once

#include "casctree/types.hpp"

namespace casctree {

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kUnitDiagTol = 1e-10;

// Symmetrizes by averaging, then checks symmetry (1e-12), unit diagonal
// (1e-10) and positive definiteness (Cholesky pivots).
CorrMatrix validate_corr(Matrix m);

// Lower Cholesky factor L with L*L^T = m. Throws NotPositiveDefinite with the
// index of the first non-positive pivot.
Matrix cholesky_lower(const Matrix& m);

// Upper-triangular U with U*U^T = m, computed by reversing the index order
// around the lower factorization.
Matrix cholesky_upper(const Matrix& m);

// Symmetric S with S*S = m, via eigendecomposition S = V sqrt(Lambda) V^T.
Matrix symmetric_sqrt(const Matrix& m);

// Inverse of a lower-triangular matrix by forward substitution.
Matrix invert_lower(const Matrix& L);

// log|m| for SPD m, via Cholesky: 2 * sum(log(L_ii)).
double log_det_spd(const Matrix& m);

// KL divergence between zero-mean Gaussians N(0, p) and N(0, q) in nats:
// 0.5 * (tr(p q^-1) - n - log|p q^-1|).
double kl_gauss(const Matrix& p, const Matrix& q);

// out(p.pos(i), p.pos(j)) = m(i, j), i.e. P*m*P^T.
Matrix permute_spd(const Matrix& m, const Permutation& p);

// Inverse reordering: out(i, j) = m(p.pos(i), p.pos(j)).
Matrix unpermute_spd(const Matrix& m, const Permutation& p);

}  // namespace casctree
