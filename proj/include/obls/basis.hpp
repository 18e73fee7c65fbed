#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "obls/multi_index.hpp"

namespace obls {

/// Univariate reference measures; each one is a probability measure.
enum class Measure {
  GaussianStandard,  ///< standard Gaussian on R
  UniformSymmetric   ///< uniform on [-1,1], density 1/2
};

std::string to_string(Measure m);
Measure measure_from_string(const std::string& name);

/// Values of the orthonormal family of the given measure at x, degrees 0..max_degree.
/// Hermite is the probabilists' family with the normalized recurrence
/// h_{k+1} = (x h_k - sqrt(k) h_{k-1}) / sqrt(k+1); Legendre is sqrt(2k+1) P_k.
void eval_orthonormal_1d(Measure measure, int max_degree, double x, double* out);

/// Orthonormal tensor-product polynomial basis over a multi-index set,
/// optionally composed with a row-orthonormal rotation.
///
/// Immutable after construction; evaluation is pure and thread-safe.
class BasisSpec {
 public:
  BasisSpec(Measure measure, MultiIndexSet index_set);
  BasisSpec(std::vector<Measure> per_dimension, MultiIndexSet index_set);

  /// Composes the basis with a rotation R (r x m_tensor, orthonormal rows,
  /// checked to 1e-12). The resulting basis is psi = R * phi with r functions.
  /// A square orthogonal U keeps the basis size; r < m_tensor truncates.
  BasisSpec rotated(Eigen::MatrixXd rotation) const;

  int dimension() const { return index_set_.dimension(); }
  /// Number of basis functions m.
  Eigen::Index size() const;
  bool has_rotation() const { return rotation_.has_value(); }
  const Eigen::MatrixXd& rotation() const;
  const MultiIndexSet& index_set() const { return index_set_; }
  Measure measure(int k) const { return measures_.at(static_cast<std::size_t>(k)); }
  const std::vector<Measure>& measures() const { return measures_; }
  /// Rotation seed recorded for serialization round-trips (optional metadata).
  std::optional<std::uint64_t> rotation_seed() const { return rotation_seed_; }

  /// phi(x) as a length-m vector; throws if a non-finite value is produced.
  Eigen::VectorXd eval(const Eigen::VectorXd& x) const;
  /// Row i is phi(x_i) for the i-th row of X (n x d). Returns n x m.
  Eigen::MatrixXd eval_many(const Eigen::MatrixXd& X) const;

  nlohmann::json to_json() const;
  static BasisSpec from_json(const nlohmann::json& j);

 private:
  MultiIndexSet index_set_;
  std::vector<Measure> measures_;
  std::optional<Eigen::MatrixXd> rotation_;
  std::optional<std::uint64_t> rotation_seed_;
};

/// Random orthogonal matrix: left singular vectors of an m x m standard
/// Gaussian matrix drawn with the given seed.
Eigen::MatrixXd random_rotation(Eigen::Index m, std::uint64_t seed);

}  // namespace obls
