#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "obls/sampling.hpp"

namespace obls {

/// Empirical Gram matrix G = (1/n) sum w(x^i) phi(x^i) phi(x^i)^T and the
/// stability statistic Z = |G - I|_2.
struct GramReport {
  Eigen::MatrixXd G;
  double Z = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  Eigen::Index n_points = 0;
  bool stable_at(double delta) const { return Z <= delta; }
};

GramReport gram(const SampleSet& sample, const BasisSpec& spec);
/// Same, from a precomputed n x m basis-value matrix.
GramReport gram_from_design(const Eigen::MatrixXd& phi, const Eigen::VectorXd& weights);

/// Sample-size rule n(delta, eta, m) = ceil(d_delta^{-1} m log(2m/eta))
/// with d_delta = -delta + (1+delta) log(1+delta). Throws for delta = 0.
long required_sample_size(double delta, double eta, long m);

struct BoostConfig {
  double delta = 0.9;
  double eta = 0.01;
  int M = 1;
  std::optional<long> n_override;
  int max_rejections = 1000;

  long sample_size(long m) const {
    return n_override ? *n_override : required_sample_size(delta, eta, m);
  }
};

/// Thrown when the conditioning loop exhausts max_rejections.
struct ConditioningFailure : std::runtime_error {
  std::vector<double> observed_Z;
  explicit ConditioningFailure(std::vector<double> zs);
};

/// Best of M independent n-point product samples (method BLS); ties between
/// minimizers broken uniformly at random.
SampleSet boost_resample(const OptimalDensity& density, const BoostConfig& config,
                         std::mt19937_64& rng);

/// Repeats boost_resample until Z <= delta (method cBLS); the rejection count
/// J is recorded in the metadata.
SampleSet boost_condition(const OptimalDensity& density, const BoostConfig& config,
                          std::mt19937_64& rng);

}  // namespace obls
