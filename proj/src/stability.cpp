#include "obls/stability.hpp"

#include <cmath>
#include <limits>

#include "obls/rng.hpp"

namespace obls {

GramReport gram_from_design(const Eigen::MatrixXd& phi, const Eigen::VectorXd& weights) {
  if (phi.rows() < 1) throw std::invalid_argument("gram: empty sample");
  if (!phi.allFinite()) throw std::runtime_error("gram: non-finite basis values");
  GramReport r;
  r.n_points = phi.rows();
  r.G = phi.transpose() * (weights / double(phi.rows())).asDiagonal() * phi;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.G, Eigen::EigenvaluesOnly);
  r.lambda_min = es.eigenvalues().minCoeff();
  r.lambda_max = es.eigenvalues().maxCoeff();
  r.Z = std::max(r.lambda_max - 1.0, 1.0 - r.lambda_min);
  return r;
}

GramReport gram(const SampleSet& sample, const BasisSpec& spec) {
  return gram_from_design(spec.eval_many(sample.points), sample.weights);
}

long required_sample_size(double delta, double eta, long m) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("required_sample_size: delta must lie in (0,1)");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("required_sample_size: eta must lie in (0,1)");
  if (m < 1) throw std::invalid_argument("required_sample_size: m must be >= 1");
  const double d_delta = -delta + (1.0 + delta) * std::log1p(delta);
  return static_cast<long>(std::ceil(double(m) * std::log(2.0 * double(m) / eta) / d_delta));
}

ConditioningFailure::ConditioningFailure(std::vector<double> zs)
    : std::runtime_error("conditioning failed after " + std::to_string(zs.size()) +
                         " rejections; delta or n is misconfigured"),
      observed_Z(std::move(zs)) {}

namespace {

struct Candidate {
  SampleSet sample;
  double Z;
};

Candidate best_of_M(const OptimalDensity& density, const BoostConfig& config,
                    std::mt19937_64& rng) {
  const long n = config.sample_size(density.basis_size());
  std::vector<Candidate> minimizers;
  double best = std::numeric_limits<double>::infinity();
  // per-candidate seeds derived from the caller's rng so that the outcome does
  // not depend on how candidates would be scheduled
  const std::uint64_t root = rng();
  for (int i = 0; i < config.M; ++i) {
    auto crng = make_rng(root, static_cast<std::uint64_t>(i));
    SampleSet s = density.draw_product_sample(crng, n);
    const double Z = gram(s, density.spec()).Z;
    if (Z < best) {
      best = Z;
      minimizers.clear();
    }
    if (Z == best) minimizers.push_back(Candidate{std::move(s), Z});
  }
  std::uniform_int_distribution<std::size_t> pick(0, minimizers.size() - 1);
  Candidate out = std::move(minimizers[pick(rng)]);
  out.sample.method = SampleMethod::BLS;
  out.sample.meta.M = config.M;
  out.sample.meta.delta = config.delta;
  out.sample.meta.eta = config.eta;
  return out;
}

}  // namespace

SampleSet boost_resample(const OptimalDensity& density, const BoostConfig& config,
                         std::mt19937_64& rng) {
  if (config.M < 1) throw std::invalid_argument("boost_resample: M must be >= 1");
  Candidate c = best_of_M(density, config, rng);
  c.sample.meta.final_Z = c.Z;
  return std::move(c.sample);
}

SampleSet boost_condition(const OptimalDensity& density, const BoostConfig& config,
                          std::mt19937_64& rng) {
  if (config.M < 1) throw std::invalid_argument("boost_condition: M must be >= 1");
  std::vector<double> observed;
  for (int trial = 1; trial <= config.max_rejections; ++trial) {
    Candidate c = best_of_M(density, config, rng);
    observed.push_back(c.Z);
    if (c.Z <= config.delta) {
      c.sample.method = SampleMethod::CBLS;
      c.sample.meta.rejection_count = trial;
      c.sample.meta.final_Z = c.Z;
      return std::move(c.sample);
    }
  }
  throw ConditioningFailure(std::move(observed));
}

}  // namespace obls
