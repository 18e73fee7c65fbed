#pragma once

#include <Eigen/Dense>

#include "obls/basis.hpp"

namespace obls {

/// Gauss rule of a univariate probability measure; weights sum to 1.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Count-point Gauss rule from the Jacobi matrix of the three-term recurrence
/// (eigenvalue method). Exact for polynomials of degree <= 2*count - 1.
QuadratureRule gauss_rule(Measure measure, int count);

/// Tensor Gauss rule over the spec's per-dimension measures (full tensor of
/// the univariate rules); suitable for integrating products of basis functions.
struct TensorQuadrature {
  Eigen::MatrixXd nodes;   // n x d
  Eigen::VectorXd weights; // n, sums to 1
};
TensorQuadrature tensor_gauss_rule(const BasisSpec& spec, int order);

/// max |<phi_i, phi_j> - delta_ij| under the order-point Gauss rule.
double orthonormality_defect(const BasisSpec& spec, int order);

}  // namespace obls
