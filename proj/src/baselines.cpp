#include "obls/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace obls {

CandidateGrid CandidateGrid::standard(Measure measure, int size) {
  if (size < 2) throw std::invalid_argument("CandidateGrid: size must be >= 2");
  const double R = measure == Measure::GaussianStandard ? 10.0 : 1.0;
  CandidateGrid g;
  g.points = Eigen::VectorXd::LinSpaced(size, -R, R);
  return g;
}

Eigen::VectorXd gauss_points(Measure measure, int count) {
  return gauss_rule(measure, count).nodes;
}

Eigen::VectorXd gauss_sequence(Measure measure, int count) {
  Eigen::VectorXd nodes = gauss_points(measure, count);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double aa = std::abs(nodes[a]), ab = std::abs(nodes[b]);
    if (aa != ab) return aa < ab;
    return nodes[a] > nodes[b];
  });
  Eigen::VectorXd out(count);
  for (int i = 0; i < count; ++i) out[i] = nodes[order[static_cast<std::size_t>(i)]];
  return out;
}

Eigen::VectorXd weighted_leja(const CandidateGrid& grid, const WeightFn1d& w, int count) {
  const Eigen::Index N = grid.points.size();
  if (count < 1 || count > N) throw std::invalid_argument("weighted_leja: bad count");

  // log objective accumulated incrementally: score_i = 0.5 log w(x_i) + sum log |x_i - x_j|
  Eigen::VectorXd score(N);
  for (Eigen::Index i = 0; i < N; ++i) score[i] = 0.5 * std::log(w(grid.points[i]));

  Eigen::VectorXd chosen(count);
  for (int k = 0; k < count; ++k) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < N; ++i)
      if (score[i] > score[best]) best = i;
    chosen[k] = grid.points[best];
    for (Eigen::Index i = 0; i < N; ++i) {
      const double d = std::abs(grid.points[i] - chosen[k]);
      score[i] += d > 0.0 ? std::log(d) : -std::numeric_limits<double>::infinity();
    }
  }
  return chosen;
}

Eigen::VectorXd fekete_points(const CandidateGrid& grid, const BasisSpec& spec,
                              const WeightFn1d& w) {
  if (spec.dimension() != 1) throw std::invalid_argument("fekete_points: univariate only");
  const Eigen::Index N = grid.points.size();
  const Eigen::Index m = spec.size();
  if (N < m) throw std::invalid_argument("fekete_points: grid smaller than basis");

  Eigen::MatrixXd B(m, N);  // transposed weighted Vandermonde
  Eigen::VectorXd x(1);
  for (Eigen::Index i = 0; i < N; ++i) {
    x[0] = grid.points[i];
    B.col(i) = std::sqrt(w(grid.points[i])) * spec.eval(x);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
  if (qr.rank() < m) throw std::runtime_error("fekete_points: grid Vandermonde is rank deficient");
  Eigen::VectorXd out(m);
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index k = 0; k < m; ++k) out[k] = grid.points[perm[k]];
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd magic_points(const CandidateGrid& grid, const BasisSpec& spec) {
  if (spec.dimension() != 1) throw std::invalid_argument("magic_points: univariate only");
  const Eigen::Index N = grid.points.size();
  const Eigen::Index m = spec.size();

  Eigen::MatrixXd X(N, 1);
  X.col(0) = grid.points;
  Eigen::MatrixXd Phi = spec.eval_many(X);  // N x m

  Eigen::VectorXd chosen(m);
  Eigen::MatrixXd V(m, m);  // phi_j at chosen points
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::VectorXd r = Phi.col(k);
    if (k > 0) {
      // subtract the interpolant of phi_k on the current points
      Eigen::VectorXd at_pts(k);
      for (Eigen::Index i = 0; i < k; ++i) at_pts[i] = V(i, k);
      Eigen::VectorXd coef =
          V.topLeftCorner(k, k).colPivHouseholderQr().solve(at_pts);
      r -= Phi.leftCols(k) * coef;
    }
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < N; ++i)
      if (std::abs(r[i]) > std::abs(r[best])) best = i;
    chosen[k] = grid.points[best];
    Eigen::VectorXd xp(1);
    xp[0] = chosen[k];
    V.row(k) = spec.eval(xp).transpose();
  }
  return chosen;
}

ApproxModel interpolate(const Eigen::MatrixXd& points, const BasisSpec& spec,
                        const Eigen::VectorXd& evaluations) {
  const Eigen::Index m = spec.size();
  if (points.rows() != m) throw std::invalid_argument("interpolate: need exactly m points");
  if (evaluations.size() != m) throw std::invalid_argument("interpolate: evaluation count mismatch");
  Eigen::MatrixXd V = spec.eval_many(points);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  qr.setThreshold(1e-12);
  if (qr.rank() < m) throw std::runtime_error("interpolate: singular collocation system");
  ApproxModel model(spec);
  model.coefficients = qr.solve(evaluations);
  model.residual_discrete = 0.0;
  return model;
}

Eigen::MatrixXd tensor_interpolation_points(const std::vector<Eigen::VectorXd>& per_dim,
                                            const MultiIndexSet& index_set) {
  const int d = index_set.dimension();
  if (static_cast<int>(per_dim.size()) != d)
    throw std::invalid_argument("tensor_interpolation_points: dimension mismatch");
  const auto& indices = index_set.indices();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), d);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (int k = 0; k < d; ++k) {
      const int deg = indices[i][static_cast<std::size_t>(k)];
      if (deg >= per_dim[static_cast<std::size_t>(k)].size())
        throw std::invalid_argument("tensor_interpolation_points: sequence too short");
      out(static_cast<Eigen::Index>(i), k) = per_dim[static_cast<std::size_t>(k)][deg];
    }
  return out;
}

ApproxModel standard_ls(const BasisSpec& spec, Eigen::Index n, const ScalarFn& u,
                        std::mt19937_64& rng) {
  if (n < spec.size()) throw std::invalid_argument("standard_ls: n must be >= m");
  SampleSet s = mu_sample(spec, rng, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = u(s.points.row(i).transpose());
  return fit(s, spec, y);
}

}  // namespace obls
