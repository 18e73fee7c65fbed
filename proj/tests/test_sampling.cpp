#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "obls/quadrature.hpp"
#include "obls/rng.hpp"
#include "obls/sampling.hpp"

using namespace obls;

namespace {

BasisSpec legendre(int p) {
  return BasisSpec(Measure::UniformSymmetric, build_index_set(1, IndexRule::TotalDegree, p));
}

BasisSpec hermite(int p) {
  return BasisSpec(Measure::GaussianStandard, build_index_set(1, IndexRule::TotalDegree, p));
}

// two-sample Kolmogorov-Smirnov statistic
double ks_stat(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("weight identity w(x) |phi(x)|^2 = m holds exactly on draws") {
  for (auto spec : {legendre(5), hermite(12)}) {
    OptimalDensity density(spec);
    auto rng = make_rng(7);
    SampleSet s = density.draw_product_sample(rng, 200);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double nrm = spec.eval(s.points.row(i).transpose()).squaredNorm();
      CHECK(s.weights[i] * nrm == doctest::Approx(double(spec.size())).epsilon(1e-12));
    }
  }
}

TEST_CASE("density integrates moments correctly (quadrature oracle)") {
  // E_rho[x^2] = integral of x^2 (1/m) sum phi_j^2 dmu, exact under Gauss quadrature
  BasisSpec spec = legendre(5);
  OptimalDensity density(spec);
  auto rule = gauss_rule(Measure::UniformSymmetric, 10);
  double expected = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    Eigen::VectorXd x(1);
    x[0] = rule.nodes[i];
    expected += rule.weights[i] * rule.nodes[i] * rule.nodes[i] * density.density_wrt_mu(x);
  }
  auto rng = make_rng(11);
  const Eigen::Index n = 200000;
  Eigen::VectorXd draws = density.sample_univariate(rng, n);
  const double mc = draws.array().square().mean();
  // standard error of x^2 is below 0.4/sqrt(n)
  CHECK(std::abs(mc - expected) < 4.0 * 0.4 / std::sqrt(double(n)));
}

TEST_CASE("mixture-of-products multivariate draws match per-coordinate law") {
  BasisSpec spec(Measure::UniformSymmetric, build_index_set(2, IndexRule::HyperbolicCross, 4));
  OptimalDensity density(spec);
  auto rng = make_rng(3);
  Eigen::MatrixXd X = density.sample(rng, 100000);
  // marginal second moment against the quadrature value of the marginal density
  auto rule = gauss_rule(Measure::UniformSymmetric, 12);
  double expected = 0.0;
  // integrate x1^2 * rho(x1, x2) over both coordinates
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
    for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
      Eigen::VectorXd x(2);
      x << rule.nodes[i], rule.nodes[j];
      expected += rule.weights[i] * rule.weights[j] * x[0] * x[0] * density.density_wrt_mu(x);
    }
  CHECK(std::abs(X.col(0).array().square().mean() - expected) < 0.01);
}

TEST_CASE("slice sampler agrees with the inverse-CDF backend (KS test)") {
  BasisSpec spec = hermite(5);
  OptimalDensity density(spec);
  auto rng1 = make_rng(21), rng2 = make_rng(22);
  const Eigen::Index n = 20000;
  Eigen::VectorXd a = density.sample_univariate(rng1, n);
  Eigen::VectorXd b =
      density.sample_univariate(rng2, n, OptimalDensity::UnivariateBackend::Slice);
  // slice draws are thinned but still slightly correlated; use a loose level
  const double d = ks_stat(std::vector<double>(a.begin(), a.end()),
                           std::vector<double>(b.begin(), b.end()));
  CHECK(d < 0.025);
}

TEST_CASE("draws are deterministic given the seed and independent streams differ") {
  BasisSpec spec = legendre(8);
  OptimalDensity density(spec);
  auto r1 = make_rng(5), r2 = make_rng(5), r3 = make_rng(6);
  SampleSet a = density.draw_product_sample(r1, 50);
  SampleSet b = density.draw_product_sample(r2, 50);
  SampleSet c = density.draw_product_sample(r3, 50);
  CHECK((a.points - b.points).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.points - c.points).cwiseAbs().maxCoeff() > 1e-8);
}

TEST_CASE("rotated univariate density is supported, rotated multivariate is not") {
  BasisSpec base = hermite(8);
  BasisSpec rot = base.rotated(random_rotation(9, 1).topRows(4));
  OptimalDensity density(rot);
  auto rng = make_rng(9);
  SampleSet s = density.draw_product_sample(rng, 100);
  CHECK(s.size() == 100);
  for (Eigen::Index i = 0; i < s.size(); ++i)
    CHECK(s.weights[i] * rot.eval(s.points.row(i).transpose()).squaredNorm() ==
          doctest::Approx(4.0).epsilon(1e-12));

  BasisSpec base2(Measure::UniformSymmetric, build_index_set(2, IndexRule::TotalDegree, 2));
  BasisSpec rot2 = base2.rotated(random_rotation(base2.size(), 2));
  CHECK_THROWS_AS(OptimalDensity{rot2}, std::invalid_argument);
}

TEST_CASE("mu_sample has unit weights and in-support points") {
  BasisSpec spec = legendre(4);
  auto rng = make_rng(14);
  SampleSet s = mu_sample(spec, rng, 500);
  CHECK(s.method == SampleMethod::MU);
  CHECK(s.weights.minCoeff() == 1.0);
  CHECK(s.weights.maxCoeff() == 1.0);
  CHECK(s.points.minCoeff() >= -1.0);
  CHECK(s.points.maxCoeff() <= 1.0);
}

TEST_CASE("sample set CSV and JSON round-trips") {
  BasisSpec spec = legendre(3);
  OptimalDensity density(spec);
  auto rng = make_rng(31);
  SampleSet s = density.draw_product_sample(rng, 10);
  s.meta.M = 7;
  s.meta.final_Z = 0.25;

  SampleSet back = SampleSet::from_json(s.to_json());
  CHECK((back.points - s.points).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.weights - s.weights).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.method == s.method);
  CHECK(back.meta.M == 7);
  CHECK(back.meta.final_Z == doctest::Approx(0.25));

  const std::string csv = s.to_csv();
  CHECK(csv.rfind("x1,weight\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("CdfTable inversion is monotone and hits the support") {
  BasisSpec spec = legendre(6);
  OptimalDensity density(spec);
  auto rng = make_rng(8);
  Eigen::VectorXd draws = density.sample_univariate(rng, 5000);
  CHECK(draws.minCoeff() >= -1.0);
  CHECK(draws.maxCoeff() <= 1.0);
}

TEST_CASE("invalid draw counts are rejected") {
  BasisSpec spec = legendre(2);
  OptimalDensity density(spec);
  auto rng = make_rng(1);
  CHECK_THROWS_AS(density.draw_product_sample(rng, 0), std::invalid_argument);
  CHECK_THROWS_AS(mu_sample(spec, rng, 0), std::invalid_argument);
}
