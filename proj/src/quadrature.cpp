#include "obls/quadrature.hpp"

#include <cmath>

namespace obls {

QuadratureRule gauss_rule(Measure measure, int count) {
  if (count < 1) throw std::invalid_argument("gauss_rule: count must be >= 1");
  // Jacobi matrix of the monic recurrence: diagonal 0 for both symmetric
  // measures, off-diagonal sqrt(b_k) with b_k = k for probabilists' Hermite
  // and b_k = k^2/(4k^2-1) for Legendre.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = measure == Measure::GaussianStandard
                         ? double(k)
                         : double(k) * k / (4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  QuadratureRule rule;
  rule.nodes = es.eigenvalues();
  // weights via w_i = 1 / sum_k p_k(x_i)^2; unlike the squared first
  // eigenvector component this stays accurate for the exponentially small
  // Hermite weights at the outer nodes
  rule.weights.resize(count);
  std::vector<double> vals(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    eval_orthonormal_1d(measure, count - 1, rule.nodes[i], vals.data());
    double s = 0.0;
    for (double v : vals) s += v * v;
    rule.weights[i] = 1.0 / s;
  }
  rule.weights /= rule.weights.sum();  // mu_0 = 1 (probability measure)
  return rule;
}

TensorQuadrature tensor_gauss_rule(const BasisSpec& spec, int order) {
  const int d = spec.dimension();
  std::vector<QuadratureRule> rules;
  rules.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) rules.push_back(gauss_rule(spec.measure(k), order));
  Eigen::Index total = 1;
  for (int k = 0; k < d; ++k) total *= order;
  TensorQuadrature tq;
  tq.nodes.resize(total, d);
  tq.weights.resize(total);
  for (Eigen::Index i = 0; i < total; ++i) {
    Eigen::Index rem = i;
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      const Eigen::Index idx = rem % order;
      rem /= order;
      tq.nodes(i, k) = rules[static_cast<std::size_t>(k)].nodes[idx];
      w *= rules[static_cast<std::size_t>(k)].weights[idx];
    }
    tq.weights[i] = w;
  }
  return tq;
}

double orthonormality_defect(const BasisSpec& spec, int order) {
  if (order < spec.index_set().max_component() + 1)
    throw std::invalid_argument("orthonormality_defect: quadrature order too low");
  const TensorQuadrature tq = tensor_gauss_rule(spec, order);
  const Eigen::MatrixXd phi = spec.eval_many(tq.nodes);
  const Eigen::MatrixXd G = phi.transpose() * tq.weights.asDiagonal() * phi;
  return (G - Eigen::MatrixXd::Identity(spec.size(), spec.size())).cwiseAbs().maxCoeff();
}

}  // namespace obls
