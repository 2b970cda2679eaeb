#include <doctest.h>

#include <cmath>

#include "casctree/iogen.hpp"
#include "casctree/symcore.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace casctree;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE_BEGIN("symcore");

TEST_CASE("validate_corr") {
  SUBCASE("identity accepted") {
    CorrMatrix m = validate_corr(Matrix::Identity(5, 5));
    CHECK(m.n() == 5);
    CHECK(max_abs_diff(m, Matrix::Identity(5, 5)) == 0.0);
  }
  SUBCASE("5-node example accepted") {
    CHECK_NOTHROW(validate_corr(golden::sigma5()));
  }
  SUBCASE("indefinite rejected with pivot") {
    Matrix m(2, 2);
    m << 1, 2, 2, 1;
    CHECK_THROWS_AS(validate_corr(m), NotPositiveDefinite);
    try {
      validate_corr(m);
    } catch (const NotPositiveDefinite& e) {
      CHECK(e.pivot == 1);
    }
  }
  SUBCASE("non-square") {
    CHECK_THROWS_AS(validate_corr(Matrix::Zero(2, 3)), NotSquare);
  }
  SUBCASE("asymmetry beyond 1e-12") {
    Matrix m = Matrix::Identity(3, 3);
    m(0, 1) = 0.5;
    m(1, 0) = 0.5 + 1e-10;
    CHECK_THROWS_AS(validate_corr(m), NotSymmetric);
  }
  SUBCASE("tiny asymmetry averaged away") {
    Matrix m = Matrix::Identity(3, 3);
    m(0, 1) = 0.5;
    m(1, 0) = 0.5 + 1e-13;
    CorrMatrix c = validate_corr(m);
    CHECK(c.mat()(0, 1) == c.mat()(1, 0));
  }
  SUBCASE("non-unit diagonal") {
    Matrix m = Matrix::Identity(3, 3);
    m(2, 2) = 1.1;
    CHECK_THROWS_AS(validate_corr(m), NotUnitDiagonal);
  }
}

TEST_CASE("cholesky_lower") {
  SUBCASE("identity") {
    CHECK(max_abs_diff(cholesky_lower(Matrix::Identity(4, 4)),
                       Matrix::Identity(4, 4)) == 0.0);
  }
  SUBCASE("2x2 closed form") {
    Matrix m(2, 2);
    m << 1, 0.9, 0.9, 1;
    Matrix L = cholesky_lower(m);
    CHECK(L(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(L(1, 0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(L(1, 1) == doctest::Approx(std::sqrt(0.19)).epsilon(1e-12));
    CHECK(max_abs_diff(L * L.transpose(), m) < 1e-12);
  }
  SUBCASE("golden Q1 = inverse of chol(T1)") {
    Matrix L = cholesky_lower(golden::t1());
    Matrix Q = invert_lower(L);
    CHECK(max_abs_diff(Q, golden::q1()) < 1e-9);
    CHECK(max_abs_diff(Q, golden::q1_print()) < 1e-3);
  }
  SUBCASE("reconstruction on random SPD") {
    for (int n : {3, 10, 40}) {
      Matrix m = generate_synthetic({n, 0.6, 11u + n}).mat();
      Matrix L = cholesky_lower(m);
      CHECK((L * L.transpose() - m).norm() / m.norm() < 1e-10);
      Matrix up = L.triangularView<Eigen::StrictlyUpper>();
      CHECK(up.cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("cholesky_upper") {
  SUBCASE("identity") {
    CHECK(max_abs_diff(cholesky_upper(Matrix::Identity(3, 3)),
                       Matrix::Identity(3, 3)) == 0.0);
  }
  SUBCASE("diagonal") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 4;
    m(1, 1) = 1;
    Matrix U = cholesky_upper(m);
    CHECK(U(0, 0) == doctest::Approx(2.0));
    CHECK(U(1, 1) == doctest::Approx(1.0));
  }
  SUBCASE("random 4x4 reconstructs") {
    Matrix m = generate_synthetic({4, 0.9, 5}).mat();
    Matrix U = cholesky_upper(m);
    CHECK((U * U.transpose() - m).norm() / m.norm() < 1e-10);
    Matrix low = U.triangularView<Eigen::StrictlyLower>();
    CHECK(low.cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 4; ++i) CHECK(U(i, i) > 0.0);
  }
}

TEST_CASE("symmetric_sqrt") {
  SUBCASE("identity") {
    CHECK(max_abs_diff(symmetric_sqrt(Matrix::Identity(3, 3)),
                       Matrix::Identity(3, 3)) < 1e-14);
  }
  SUBCASE("diagonal") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 4;
    m(1, 1) = 9;
    Matrix S = symmetric_sqrt(m);
    CHECK(S(0, 0) == doctest::Approx(2.0));
    CHECK(S(1, 1) == doctest::Approx(3.0));
  }
  SUBCASE("random 6x6") {
    Matrix m = generate_synthetic({6, 0.8, 3}).mat();
    Matrix S = symmetric_sqrt(m);
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((S * S - m).norm() / m.norm() < 1e-9);
  }
  SUBCASE("indefinite rejected") {
    Matrix m(2, 2);
    m << 1, 2, 2, 1;
    CHECK_THROWS_AS(symmetric_sqrt(m), NotPositiveDefinite);
  }
}

TEST_CASE("invert_lower") {
  Matrix L = cholesky_lower(golden::t1());
  Matrix Q = invert_lower(L);
  CHECK(max_abs_diff(Q * L, Matrix::Identity(5, 5)) < 1e-12);
}

TEST_CASE("log_det_spd matches eigenvalue sum") {
  for (int n : {5, 30, 100}) {
    Matrix m = generate_synthetic({n, 0.5, 77u + n}).mat();
    CHECK(log_det_spd(m) ==
          doctest::Approx(oracle::log_det_eigen(m)).epsilon(1e-8));
  }
}

TEST_CASE("kl_gauss") {
  Matrix I5 = Matrix::Identity(5, 5);
  SUBCASE("identical distributions") {
    CHECK(kl_gauss(I5, I5) == doctest::Approx(0.0).epsilon(1e-14));
    Matrix m = golden::sigma5();
    CHECK(kl_gauss(m, m) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("golden stage-1 value") {
    CHECK(kl_gauss(golden::sigma5(), golden::t1()) ==
          doctest::Approx(golden::kl_stage1).epsilon(1e-9));
    CHECK(std::abs(kl_gauss(golden::sigma5(), golden::t1()) - 0.375) < 1e-3);
  }
  SUBCASE("2x2 closed form") {
    Matrix m(2, 2);
    m << 1, 0.9, 0.9, 1;
    double kl = kl_gauss(m, Matrix::Identity(2, 2));
    CHECK(kl == doctest::Approx(golden::kl_2x2_rho09).epsilon(1e-12));
    CHECK(kl == doctest::Approx(-0.5 * std::log(0.19)).epsilon(1e-12));
    // numeric cross-check of the log-det route
    double direct = 0.5 * (m.trace() - 2.0 - oracle::log_det_eigen(m));
    CHECK(kl == doctest::Approx(direct).epsilon(1e-10));
  }
  SUBCASE("nonnegative on random pairs") {
    for (int s = 0; s < 10; ++s) {
      Matrix p = generate_synthetic({8, 0.5, 100u + s}).mat();
      Matrix q = generate_synthetic({8, 0.5, 200u + s}).mat();
      CHECK(kl_gauss(p, q) >= 0.0);
      CHECK(kl_gauss(p, q) > 1e-6);  // distinct matrices
    }
  }
  SUBCASE("transformation invariance") {
    Matrix p = generate_synthetic({6, 0.7, 1}).mat();
    Matrix q = generate_synthetic({6, 0.7, 2}).mat();
    Matrix C = cholesky_lower(generate_synthetic({6, 0.9, 3}).mat());
    Matrix pc = C * p * C.transpose();
    Matrix qc = C * q * C.transpose();
    CHECK(kl_gauss(pc, qc) == doctest::Approx(kl_gauss(p, q)).epsilon(1e-8));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(kl_gauss(I5, Matrix::Identity(4, 4)), DimensionMismatch);
  }
  SUBCASE("moment-matched shortcut equals general formula") {
    // tr(p q^-1) = n for a moment-matched tree model, so kl reduces to
    // -1/2 log|p q^-1|
    Matrix p = golden::sigma5();
    Matrix q = golden::t1();
    double shortcut =
        -0.5 * (oracle::log_det_eigen(p) - oracle::log_det_eigen(q));
    CHECK(kl_gauss(p, q) == doctest::Approx(shortcut).epsilon(1e-8));
  }
}

TEST_CASE("permute_spd") {
  SUBCASE("identity permutation") {
    Matrix m = golden::sigma5();
    CHECK(max_abs_diff(permute_spd(m, Permutation::identity(5)), m) == 0.0);
  }
  SUBCASE("round trip") {
    Matrix m = golden::sigma5();
    Permutation p = Permutation::from_order({2, 0, 4, 1, 3});
    CHECK(max_abs_diff(unpermute_spd(permute_spd(m, p), p), m) == 0.0);
  }
  SUBCASE("matches matrix form") {
    Matrix m = golden::sigma5();
    Permutation p = Permutation::from_order(golden::p2_alt_order());
    Matrix P = p.matrix();
    CHECK(max_abs_diff(permute_spd(m, p), P * m * P.transpose()) == 0.0);
  }
  SUBCASE("the alternative stage-2 order gives the frozen Q2") {
    Matrix t2 = tree_covariance(5, golden::stage2_edges());
    Permutation p2 = Permutation::from_order(golden::p2_alt_order());
    Matrix L = cholesky_lower(permute_spd(t2, p2));
    Matrix Q = unpermute_spd(invert_lower(L), p2);
    CHECK(max_abs_diff(Q, golden::q2_alt_order()) < 1e-9);
    CHECK(max_abs_diff(Q, golden::q2_print()) < 1e-3);
  }
}

TEST_CASE("permutation basics") {
  Permutation p = Permutation::from_order({2, 0, 1});
  CHECK(p.pos(2) == 0);
  CHECK(p.pos(0) == 1);
  CHECK(p.node(0) == 2);
  CHECK(p.inverse().pos(0) == 2);
  CHECK(Permutation::identity(4).is_identity());
  CHECK_FALSE(p.is_identity());
  CHECK_THROWS(Permutation::from_order({0, 0, 1}));
}

TEST_SUITE_END();
