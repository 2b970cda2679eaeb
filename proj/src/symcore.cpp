#include "casctree/symcore.hpp"

#include <cmath>

namespace casctree {

namespace {

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) throw NotSquare(m.rows(), m.cols());
}

}  // namespace

CorrMatrix validate_corr(Matrix m) {
  require_square(m);
  const int n = static_cast<int>(m.rows());
  Matrix sym = 0.5 * (m + m.transpose());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dev = std::abs(m(i, j) - m(j, i));
      if (dev > kSymmetryTol) throw NotSymmetric(i, j, dev);
    }
  for (int i = 0; i < n; ++i)
    if (std::abs(sym(i, i) - 1.0) > kUnitDiagTol)
      throw NotUnitDiagonal(i, sym(i, i));
  cholesky_lower(sym);  // positive-definite witness
  return CorrMatrix(std::move(sym));
}

Matrix cholesky_lower(const Matrix& m) {
  require_square(m);
  const int n = static_cast<int>(m.rows());
  Matrix L = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) throw NotPositiveDefinite(j);
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

Matrix cholesky_upper(const Matrix& m) {
  require_square(m);
  const int n = static_cast<int>(m.rows());
  Matrix rev = m.reverse();  // both directions
  Matrix Lr = cholesky_lower(rev);
  Matrix U = Lr.reverse();
  // reversal may leave -0.0 above the diagonal; the factor is exact otherwise
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) U(i, j) = 0.0;
  return U;
}

Matrix symmetric_sqrt(const Matrix& m) {
  require_square(m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success) throw NotPositiveDefinite(0);
  const Vector& ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i)
    if (!(ev(i) > 0.0)) throw NotPositiveDefinite(i);
  Matrix S = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
             es.eigenvectors().transpose();
  return 0.5 * (S + S.transpose());
}

Matrix invert_lower(const Matrix& L) {
  require_square(L);
  const int n = static_cast<int>(L.rows());
  Matrix Q = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    Q(j, j) = 1.0 / L(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s += L(i, k) * Q(k, j);
      Q(i, j) = -s / L(i, i);
    }
  }
  return Q;
}

double log_det_spd(const Matrix& m) {
  Matrix L = cholesky_lower(m);
  double ld = 0.0;
  for (int i = 0; i < L.rows(); ++i) ld += std::log(L(i, i));
  return 2.0 * ld;
}

double kl_gauss(const Matrix& p, const Matrix& q) {
  require_square(p);
  require_square(q);
  if (p.rows() != q.rows()) throw DimensionMismatch(p.rows(), q.rows());
  const int n = static_cast<int>(p.rows());
  Matrix Lp = cholesky_lower(0.5 * (p + p.transpose()));
  Matrix Lq = cholesky_lower(0.5 * (q + q.transpose()));
  // tr(p q^-1) = ||Lq^-1 Lp||_F^2, log|p q^-1| = 2 sum(log diag Lp / diag Lq)
  Matrix M = Lq.triangularView<Eigen::Lower>().solve(Lp);
  double tr = M.squaredNorm();
  double ld = 0.0;
  for (int i = 0; i < n; ++i) ld += std::log(Lp(i, i)) - std::log(Lq(i, i));
  return 0.5 * (tr - n - 2.0 * ld);
}

Matrix permute_spd(const Matrix& m, const Permutation& p) {
  require_square(m);
  if (m.rows() != p.n()) throw DimensionMismatch(m.rows(), p.n());
  const int n = p.n();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(p.pos(i), p.pos(j)) = m(i, j);
  return out;
}

Matrix unpermute_spd(const Matrix& m, const Permutation& p) {
  require_square(m);
  if (m.rows() != p.n()) throw DimensionMismatch(m.rows(), p.n());
  const int n = p.n();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(p.pos(i), p.pos(j));
  return out;
}

}  // namespace casctree
