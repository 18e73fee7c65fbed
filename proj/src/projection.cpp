#include "obls/projection.hpp"

#include <cmath>

#include "obls/quadrature.hpp"

namespace obls {

nlohmann::json ApproxModel::to_json() const {
  nlohmann::json j;
  j["spec"] = spec.to_json();
  j["coefficients"] = std::vector<double>(coefficients.begin(), coefficients.end());
  j["method"] = to_string(sample_method);
  j["residual_discrete"] = residual_discrete;
  j["is_zero"] = is_zero;
  j["sample"] = {{"M", sample_meta.M},
                 {"delta", sample_meta.delta},
                 {"eta", sample_meta.eta},
                 {"seed", sample_meta.seed},
                 {"rejection_count", sample_meta.rejection_count},
                 {"final_Z", sample_meta.final_Z}};
  return j;
}

ApproxModel fit(const SampleSet& sample, const BasisSpec& spec,
                const Eigen::VectorXd& evaluations, const NoiseModel& noise,
                std::mt19937_64* rng) {
  const Eigen::Index n = sample.size();
  const Eigen::Index m = spec.size();
  if (evaluations.size() != n) throw std::invalid_argument("fit: evaluation count mismatch");

  Eigen::VectorXd y = evaluations;
  if (noise.active()) {
    if (!rng) throw std::invalid_argument("fit: noisy model requires an rng");
    std::normal_distribution<double> e(0.0, noise.sigma);
    for (Eigen::Index i = 0; i < n; ++i) y[i] += e(*rng);
  }

  const Eigen::VectorXd s = (sample.weights / double(n)).cwiseSqrt();
  Eigen::MatrixXd A = s.asDiagonal() * spec.eval_many(sample.points);
  Eigen::VectorXd b = s.cwiseProduct(y);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < m)
    throw std::runtime_error("fit: weighted Gram matrix is singular (Z >= 1)");

  ApproxModel model(spec);
  model.coefficients = qr.solve(b);
  model.residual_discrete = (A * model.coefficients - b).squaredNorm();
  model.sample_method = sample.method;
  model.sample_meta = sample.meta;
  return model;
}

ApproxModel fit_conditional(const OptimalDensity& density, const BoostConfig& config,
                            const ScalarFn& u, std::mt19937_64& rng) {
  const long n = config.sample_size(density.basis_size());
  SampleSet s = density.draw_product_sample(rng, n);
  GramReport report = gram(s, density.spec());
  if (!report.stable_at(config.delta)) {
    ApproxModel zero(density.spec());
    zero.coefficients = Eigen::VectorXd::Zero(density.basis_size());
    zero.is_zero = true;
    zero.sample_meta = s.meta;
    zero.sample_meta.final_Z = report.Z;
    return zero;
  }
  Eigen::VectorXd y(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) y[i] = u(s.points.row(i).transpose());
  ApproxModel model = fit(s, density.spec(), y);
  model.sample_meta.final_Z = report.Z;
  return model;
}

double test_error(const ApproxModel& model, const ScalarFn& u, const Eigen::MatrixXd& test_points) {
  const Eigen::Index N = test_points.rows();
  if (N < 1) throw std::invalid_argument("test_error: empty test set");
  Eigen::VectorXd pred = model.evaluate_many(test_points);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    const double diff = u(test_points.row(i).transpose()) - pred[i];
    acc += diff * diff;
  }
  return std::sqrt(acc / double(N));
}

namespace {

double boost_factor(const BoundInputs& in) {
  return 1.0 / ((1.0 - in.delta) * (1.0 - std::pow(in.eta, in.M))) * double(in.M);
}

double log_C(double eps, double M) {
  // (1-eps) log(1-eps) -> 0 as eps -> 1
  const double t = 1.0 - eps;
  const double tlogt = t > 0.0 ? t * std::log(t) : 0.0;
  return std::log(M) + tlogt - t * std::log(M - eps);
}

double log_D_tilde(double eps, double M, double base, double alpha) {
  return log_C(eps, M) + (2.0 - 2.0 * eps) * std::log(base) + eps * std::log(alpha);
}

}  // namespace

BoundValue quasi_optimality_constant(const BoundInputs& in, BoundMode mode) {
  const double core = boost_factor(in);
  const double ratio = double(in.n) / double(in.n_min);
  BoundValue out;
  switch (mode) {
    case BoundMode::CBLS:
      out.factor = 1.0 + core;
      break;
    case BoundMode::SBLS:
      out.factor = 1.0 + ratio * core;
      break;
    case BoundMode::Noisy:
      out.factor = 1.0 + 2.0 * ratio * core;
      out.additive =
          2.0 * in.sigma * in.sigma * double(in.m) * double(in.n) / double(in.n_min * in.n_min) * core;
      break;
  }
  return out;
}

ImprovedBound improved_bound_D(const BoundInputs& in) {
  const double M = double(in.M);
  const double c_m = in.c_m >= 0.0 ? in.c_m : double(in.m);
  const double base = in.L * (1.0 + c_m);
  if (!(base > 0.0) || !(in.alpha > 0.0))
    throw std::invalid_argument("improved_bound_D: L(1+c_m) and alpha must be positive");

  auto f = [&](double eps) { return log_D_tilde(eps, M, base, in.alpha); };

  // coarse grid over (0, 1], then golden section around the best cell
  const int N = 2001;
  double best_eps = 1.0, best_val = f(1.0);
  for (int i = 1; i < N; ++i) {
    const double eps = double(i) / double(N - 1);
    const double v = f(eps);
    if (v < best_val) {
      best_val = v;
      best_eps = eps;
    }
  }
  double a = std::max(1e-12, best_eps - 1.0 / double(N - 1));
  double b = std::min(1.0, best_eps + 1.0 / double(N - 1));
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  const double eps_star = 0.5 * (a + b);
  const double v = std::min(f(eps_star), best_val);
  return ImprovedBound{std::exp(v), v == best_val ? best_eps : eps_star};
}

double best_approximation_error(const BasisSpec& spec, const ScalarFn& u) {
  int order = 0;
  for (const auto& idx : spec.index_set().indices())
    for (int v : idx) order = std::max(order, v);
  order += 5;

  auto err_at = [&](int q) {
    TensorQuadrature rule = tensor_gauss_rule(spec, q);
    Eigen::VectorXd uv(rule.nodes.rows());
    for (Eigen::Index i = 0; i < rule.nodes.rows(); ++i)
      uv[i] = u(rule.nodes.row(i).transpose());
    Eigen::MatrixXd phi = spec.eval_many(rule.nodes);
    const double u_sq = rule.weights.dot(uv.cwiseProduct(uv));
    Eigen::VectorXd coeffs = phi.transpose() * rule.weights.cwiseProduct(uv);
    return std::sqrt(std::max(0.0, u_sq - coeffs.squaredNorm()));
  };

  const int d = spec.dimension();
  double prev = err_at(order);
  for (int iter = 0; iter < 8; ++iter) {
    if (std::pow(double(order * 2), d) > 5e6) break;
    order *= 2;
    const double cur = err_at(order);
    if (std::abs(cur - prev) < 1e-10) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace obls
