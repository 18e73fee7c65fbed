#pragma once

#include "obls/projection.hpp"
#include "obls/quadrature.hpp"

namespace obls {

/// Uniform 1-D discretization used by the greedy point constructions:
/// [-1, 1] for the uniform measure, [-10, 10] for the Gaussian.
struct CandidateGrid {
  Eigen::VectorXd points;  // sorted ascending
  static CandidateGrid standard(Measure measure, int size = 10000);
};

using WeightFn1d = std::function<double(double)>;

/// Nodes of the count-point Gauss rule, ascending.
Eigen::VectorXd gauss_points(Measure measure, int count);

/// Nodes reordered center-out (by |x|, then sign); gives a usable per-dimension
/// sequence for sparse tensor grids even though Gauss nodes are not nested.
Eigen::VectorXd gauss_sequence(Measure measure, int count);

/// Greedy weighted Leja sequence on the grid: each step maximizes
/// sqrt(w(x)) prod_j |x - x_j| (computed in log space); ties go to the lowest
/// grid index. Prefixes of a longer run coincide with shorter runs.
Eigen::VectorXd weighted_leja(const CandidateGrid& grid, const WeightFn1d& w, int count);

/// Approximate Fekete points: column-pivoted QR on the transposed weighted
/// Vandermonde sqrt(w(x)) phi_j(x); returns the m pivot points, ascending.
Eigen::VectorXd fekete_points(const CandidateGrid& grid, const BasisSpec& spec, const WeightFn1d& w);

/// Magic points (empirical interpolation): greedily pick the grid point
/// maximizing the residual of the next basis function under the current
/// interpolation operator. Depends on the basis ordering; returned in
/// selection order.
Eigen::VectorXd magic_points(const CandidateGrid& grid, const BasisSpec& spec);

/// Solves the m x m collocation system phi_j(x_i) a_j = y_i. Exact on V_m.
/// Throws if the system is singular.
ApproxModel interpolate(const Eigen::MatrixXd& points, const BasisSpec& spec,
                        const Eigen::VectorXd& evaluations);

/// Sparse tensor grid: one point (z^1_{i_1}, ..., z^d_{i_d}) per multi-index.
Eigen::MatrixXd tensor_interpolation_points(const std::vector<Eigen::VectorXd>& per_dim,
                                            const MultiIndexSet& index_set);

/// Unweighted least squares on n i.i.d. reference-measure points.
ApproxModel standard_ls(const BasisSpec& spec, Eigen::Index n, const ScalarFn& u,
                        std::mt19937_64& rng);

}  // namespace obls
