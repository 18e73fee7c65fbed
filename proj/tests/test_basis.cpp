#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "obls/quadrature.hpp"

using namespace obls;

namespace {

Eigen::VectorXd pt(double x) {
  Eigen::VectorXd v(1);
  v[0] = x;
  return v;
}

}  // namespace

TEST_CASE("normalized Legendre values match closed forms") {
  // sqrt(2k+1) P_k with P_2 = (3x^2-1)/2, P_3 = (5x^3-3x)/2
  double v[4];
  for (double x : {-0.9, -0.3, 0.0, 0.5, 1.0}) {
    eval_orthonormal_1d(Measure::UniformSymmetric, 3, x, v);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(std::sqrt(3.0) * x));
    CHECK(v[2] == doctest::Approx(std::sqrt(5.0) * 0.5 * (3 * x * x - 1)).epsilon(1e-12));
    CHECK(v[3] == doctest::Approx(std::sqrt(7.0) * 0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-12));
  }
}

TEST_CASE("orthonormal probabilists' Hermite values match closed forms") {
  // h_2 = (x^2-1)/sqrt(2), h_3 = (x^3-3x)/sqrt(6), h_4 = (x^4-6x^2+3)/sqrt(24)
  double v[5];
  for (double x : {-2.0, -0.7, 0.0, 1.3, 3.1}) {
    eval_orthonormal_1d(Measure::GaussianStandard, 4, x, v);
    CHECK(v[1] == doctest::Approx(x));
    CHECK(v[2] == doctest::Approx((x * x - 1) / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(v[3] == doctest::Approx((x * x * x - 3 * x) / std::sqrt(6.0)).epsilon(1e-12));
    CHECK(v[4] ==
          doctest::Approx((x * x * x * x - 6 * x * x + 3) / std::sqrt(24.0)).epsilon(1e-12));
  }
}

TEST_CASE("families are orthonormal under quadrature up to degree 40") {
  for (auto meas : {Measure::UniformSymmetric, Measure::GaussianStandard}) {
    BasisSpec spec(meas, build_index_set(1, IndexRule::TotalDegree, 40));
    CHECK(orthonormality_defect(spec, 41) < 1e-12);
  }
}

TEST_CASE("multivariate basis is the product of univariate factors") {
  BasisSpec spec(Measure::UniformSymmetric, build_index_set(3, IndexRule::HyperbolicCross, 5));
  Eigen::VectorXd x(3);
  x << 0.3, -0.8, 0.55;
  Eigen::VectorXd phi = spec.eval(x);
  double u0[6], u1[6], u2[6];
  eval_orthonormal_1d(Measure::UniformSymmetric, 5, x[0], u0);
  eval_orthonormal_1d(Measure::UniformSymmetric, 5, x[1], u1);
  eval_orthonormal_1d(Measure::UniformSymmetric, 5, x[2], u2);
  for (std::size_t j = 0; j < spec.index_set().size(); ++j) {
    const auto& idx = spec.index_set()[j];
    CHECK(phi[static_cast<Eigen::Index>(j)] ==
          doctest::Approx(u0[idx[0]] * u1[idx[1]] * u2[idx[2]]).epsilon(1e-13));
  }
}

TEST_CASE("mixed measures are kept per dimension") {
  BasisSpec spec({Measure::GaussianStandard, Measure::UniformSymmetric},
                 build_index_set(2, IndexRule::TotalDegree, 2));
  Eigen::VectorXd x(2);
  x << 1.5, 0.5;
  // index (1,1): h_1(x1) * p_1(x2) = x1 * sqrt(3) x2
  Eigen::VectorXd phi = spec.eval(x);
  bool found = false;
  for (std::size_t j = 0; j < spec.index_set().size(); ++j) {
    if (spec.index_set()[j] == std::vector<int>{1, 1}) {
      CHECK(phi[static_cast<Eigen::Index>(j)] ==
            doctest::Approx(1.5 * std::sqrt(3.0) * 0.5).epsilon(1e-13));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("eval_many rows agree with eval") {
  BasisSpec spec(Measure::GaussianStandard, build_index_set(2, IndexRule::TotalDegree, 4));
  Eigen::MatrixXd X(3, 2);
  X << 0.1, -0.4, 1.2, 0.9, -2.0, 0.3;
  Eigen::MatrixXd phi = spec.eval_many(X);
  for (Eigen::Index i = 0; i < 3; ++i)
    CHECK((phi.row(i).transpose() - spec.eval(X.row(i).transpose())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random rotations have orthonormal rows and are seed-deterministic") {
  Eigen::MatrixXd U = random_rotation(7, 123);
  CHECK((U * U.transpose() - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((U - random_rotation(7, 123)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((U - random_rotation(7, 124)).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("rotated basis evaluates to R phi, including rectangular R") {
  BasisSpec base(Measure::GaussianStandard, build_index_set(1, IndexRule::TotalDegree, 6));
  Eigen::MatrixXd U = random_rotation(7, 42);
  BasisSpec full = base.rotated(U);
  BasisSpec trunc = base.rotated(U.topRows(3));
  CHECK(full.size() == 7);
  CHECK(trunc.size() == 3);
  Eigen::VectorXd x = pt(0.77);
  CHECK((full.eval(x) - U * base.eval(x)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((trunc.eval(x) - U.topRows(3) * base.eval(x)).cwiseAbs().maxCoeff() < 1e-13);

  // rotation-invariant norm for square U
  CHECK(full.eval(x).squaredNorm() == doctest::Approx(base.eval(x).squaredNorm()).epsilon(1e-12));
}

TEST_CASE("non-orthonormal rotations are rejected") {
  BasisSpec base(Measure::UniformSymmetric, build_index_set(1, IndexRule::TotalDegree, 3));
  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(2, 4);
  CHECK_THROWS_AS(base.rotated(bad), std::invalid_argument);
  CHECK_THROWS_AS(base.rotated(Eigen::MatrixXd::Identity(5, 5)), std::invalid_argument);
}

TEST_CASE("JSON round-trip preserves the spec") {
  BasisSpec spec(Measure::UniformSymmetric, build_index_set(2, IndexRule::HyperbolicCross, 9));
  BasisSpec back = BasisSpec::from_json(spec.to_json());
  CHECK(back.size() == spec.size());
  CHECK(back.dimension() == 2);
  CHECK(back.index_set().rule() == IndexRule::HyperbolicCross);
  Eigen::VectorXd x(2);
  x << 0.2, -0.6;
  CHECK((back.eval(x) - spec.eval(x)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-finite evaluation throws instead of propagating") {
  BasisSpec spec(Measure::GaussianStandard, build_index_set(1, IndexRule::TotalDegree, 30));
  CHECK_THROWS_AS(spec.eval(pt(1e200)), std::runtime_error);
}

TEST_CASE("measure string round-trip") {
  CHECK(measure_from_string(to_string(Measure::GaussianStandard)) == Measure::GaussianStandard);
  CHECK(measure_from_string(to_string(Measure::UniformSymmetric)) == Measure::UniformSymmetric);
  CHECK_THROWS_AS(measure_from_string("triangular"), std::invalid_argument);
}
