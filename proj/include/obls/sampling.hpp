#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <json.hpp>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "obls/basis.hpp"

namespace obls {

/// Provenance of a sample set.
enum class SampleMethod {
  MU,    ///< i.i.d. from the reference measure, unit weights
  RHO,   ///< i.i.d. from the optimal measure
  BLS,   ///< best of M resampled candidates
  CBLS,  ///< BLS conditioned on the stability event
  SBLS,  ///< cBLS followed by greedy subsampling
  BaselineGauss,
  BaselineLeja,
  BaselineFekete,
  BaselineMagic
};

std::string to_string(SampleMethod m);
SampleMethod sample_method_from_string(const std::string& name);

struct SampleMetadata {
  int M = 1;
  double delta = 0.0;
  double eta = 0.0;
  std::uint64_t seed = 0;
  int rejection_count = 0;
  std::vector<int> removed_indices;
  double final_Z = std::numeric_limits<double>::quiet_NaN();
};

/// Ordered list of points with their weights and provenance.
struct SampleSet {
  Eigen::MatrixXd points;   // n x d
  Eigen::VectorXd weights;  // n
  SampleMethod method = SampleMethod::RHO;
  SampleMetadata meta;

  Eigen::Index size() const { return points.rows(); }
  int dimension() const { return static_cast<int>(points.cols()); }

  std::string to_csv() const;
  nlohmann::json to_json() const;
  static SampleSet from_json(const nlohmann::json& j);
};

/// Tabulated CDF on a uniform grid with linear inversion.
struct CdfTable {
  Eigen::VectorXd x;
  Eigen::VectorXd cdf;       // normalized, cdf[0]=0, cdf[N-1]=1
  double raw_mass = 0.0;     // un-normalized integral (should be ~1)
  double max_cell_mass = 0.0;
  double invert(double u) const;
};

struct SliceOptions {
  double width = 1.0;
  int burn_in = 50;
  int thin = 4;
};

/// Optimal sampling density d rho = w^{-1} d mu with
/// w(x)^{-1} = (1/m) sum_j phi_j(x)^2, plus cached inverse-CDF structures.
class OptimalDensity {
 public:
  enum class UnivariateBackend { GridInverseCdf, Slice };

  explicit OptimalDensity(BasisSpec spec);

  const BasisSpec& spec() const { return spec_; }
  Eigen::Index basis_size() const { return spec_.size(); }

  /// w(x) = m / |phi(x)|^2; throws if |phi(x)| = 0.
  double weight(const Eigen::VectorXd& x) const;
  double weight1d(double x) const;
  /// density of rho with respect to mu, (1/m) |phi(x)|^2.
  double density_wrt_mu(const Eigen::VectorXd& x) const;

  /// 1-D draws; default backend is deterministic inverse transform on a grid,
  /// slice sampling kept as an alternative.
  Eigen::VectorXd sample_univariate(std::mt19937_64& rng, Eigen::Index count,
                                    UnivariateBackend backend = UnivariateBackend::GridInverseCdf,
                                    const SliceOptions& slice = {}) const;

  /// Exact mixture-of-products draws: pick a multi-index uniformly, then draw
  /// each coordinate from the squared univariate factor. Identical in law to
  /// sequential conditional sampling. Multivariate rotated bases are rejected.
  Eigen::MatrixXd sample(std::mt19937_64& rng, Eigen::Index count) const;

  /// n i.i.d. optimal-measure points with weights attached (method RHO).
  SampleSet draw_product_sample(std::mt19937_64& rng, Eigen::Index n) const;

 private:
  BasisSpec spec_;
  std::map<Measure, std::vector<CdfTable>> degree_tables_;  // per measure kind, degree-indexed
  CdfTable mixture_table_;  // d == 1 only
  bool has_mixture_table_ = false;
};

/// n i.i.d. draws from the reference measure itself, unit weights (method MU).
SampleSet mu_sample(const BasisSpec& spec, std::mt19937_64& rng, Eigen::Index n);

/// One draw from a univariate reference measure.
double draw_measure_1d(Measure measure, std::mt19937_64& rng);

}  // namespace obls
