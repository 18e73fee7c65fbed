#pragma once

#include <functional>

#include "obls/stability.hpp"

namespace obls {

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;

/// Additive observation noise y = u(x) + e, e ~ N(0, sigma^2), sigma = 0 off.
struct NoiseModel {
  double sigma = 0.0;
  bool active() const { return sigma > 0.0; }
  static NoiseModel none() { return {}; }
  static NoiseModel gaussian(double sigma) { return NoiseModel{sigma}; }
};

/// Weighted least-squares approximation: x -> coefficients^T phi(x).
struct ApproxModel {
  BasisSpec spec;
  Eigen::VectorXd coefficients;
  SampleMethod sample_method = SampleMethod::RHO;
  SampleMetadata sample_meta;
  double residual_discrete = 0.0;  // minimized weighted objective
  bool is_zero = false;            // conditional estimator fell back to 0

  explicit ApproxModel(BasisSpec s) : spec(std::move(s)) {}

  double evaluate(const Eigen::VectorXd& x) const { return coefficients.dot(spec.eval(x)); }
  Eigen::VectorXd evaluate_many(const Eigen::MatrixXd& X) const {
    return spec.eval_many(X) * coefficients;
  }
  nlohmann::json to_json() const;
};

/// Weighted least squares on the sample: minimizes (1/n) sum w_i (y_i - v(x_i))^2
/// over V_m via QR on the weighted design matrix. If noise is active, centered
/// Gaussian perturbations are added to the evaluations (rng required then).
/// Throws if the design is rank deficient (Z >= 1).
ApproxModel fit(const SampleSet& sample, const BasisSpec& spec,
                const Eigen::VectorXd& evaluations, const NoiseModel& noise = {},
                std::mt19937_64* rng = nullptr);

/// Draws one fresh optimal-measure sample of the configured size and returns
/// the projection when Z <= delta, the zero model otherwise.
ApproxModel fit_conditional(const OptimalDensity& density, const BoostConfig& config,
                            const ScalarFn& u, std::mt19937_64& rng);

/// Root-mean-square error of the model against u over the given test points
/// (drawn i.i.d. from the reference measure by the caller).
double test_error(const ApproxModel& model, const ScalarFn& u, const Eigen::MatrixXd& test_points);

/// Inputs for the theoretical error-bound evaluators.
struct BoundInputs {
  double delta = 0.9;
  double eta = 0.01;
  int M = 1;
  long m = 1;
  long n = 1;
  long n_min = 1;
  double L = 1.0;     // weighted sup-norm bound on u
  double c_m = -1.0;  // negative means "use the generic bound m"
  double alpha = 1.0; // best-approximation error
  double sigma = 0.0;
};

enum class BoundMode { CBLS, SBLS, Noisy };

/// Quasi-optimality factor of the expected-error bounds, plus the additive
/// noise term (zero except in Noisy mode).
struct BoundValue {
  double factor = 0.0;
  double additive = 0.0;
};
BoundValue quasi_optimality_constant(const BoundInputs& in, BoundMode mode);

/// D(M, L, m, alpha) = inf over eps in (0,1] of
/// C(eps, M) (L (1 + c_m))^(2 - 2 eps) alpha^eps,
/// C(eps, M) = M (1-eps)^(1-eps) / (M-eps)^(1-eps).
/// Numeric minimization: coarse grid then golden section on the log objective.
struct ImprovedBound {
  double value = 0.0;
  double eps_star = 0.0;
};
ImprovedBound improved_bound_D(const BoundInputs& in);

/// || u - P_{V_m} u ||_{L2(mu)} by Gauss quadrature, order doubled until the
/// value moves by less than 1e-10.
double best_approximation_error(const BasisSpec& spec, const ScalarFn& u);

}  // namespace obls
