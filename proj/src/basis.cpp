#include "obls/basis.hpp"

#include <cmath>
#include <random>

namespace obls {

std::string to_string(Measure m) {
  return m == Measure::GaussianStandard ? "gaussian" : "uniform";
}

Measure measure_from_string(const std::string& name) {
  if (name == "gaussian") return Measure::GaussianStandard;
  if (name == "uniform") return Measure::UniformSymmetric;
  throw std::invalid_argument("unknown measure: " + name);
}

void eval_orthonormal_1d(Measure measure, int max_degree, double x, double* out) {
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = measure == Measure::UniformSymmetric ? std::sqrt(3.0) * x : x;
  if (measure == Measure::GaussianStandard) {
    for (int k = 1; k < max_degree; ++k)
      out[k + 1] = (x * out[k] - std::sqrt(double(k)) * out[k - 1]) / std::sqrt(double(k + 1));
  } else {
    // p_k = sqrt(2k+1) P_k, recurrence in normalized form
    for (int k = 1; k < max_degree; ++k) {
      const double a = std::sqrt((2.0 * k + 3.0)) / (k + 1.0);
      out[k + 1] = a * (std::sqrt(2.0 * k + 1.0) * x * out[k] -
                        (k / std::sqrt(2.0 * k - 1.0)) * out[k - 1]);
    }
  }
}

BasisSpec::BasisSpec(Measure measure, MultiIndexSet index_set)
    : BasisSpec(std::vector<Measure>(static_cast<std::size_t>(index_set.dimension()), measure),
                std::move(index_set)) {}

BasisSpec::BasisSpec(std::vector<Measure> per_dimension, MultiIndexSet index_set)
    : index_set_(std::move(index_set)), measures_(std::move(per_dimension)) {
  if (static_cast<int>(measures_.size()) != index_set_.dimension())
    throw std::invalid_argument("BasisSpec: one measure per dimension required");
}

BasisSpec BasisSpec::rotated(Eigen::MatrixXd rotation) const {
  if (rotation_) throw std::invalid_argument("BasisSpec: already rotated");
  const auto m = static_cast<Eigen::Index>(index_set_.size());
  if (rotation.cols() != m || rotation.rows() < 1 || rotation.rows() > m)
    throw std::invalid_argument("BasisSpec: rotation must be r x m with 1 <= r <= m");
  const Eigen::MatrixXd gram = rotation * rotation.transpose();
  const double defect =
      (gram - Eigen::MatrixXd::Identity(rotation.rows(), rotation.rows())).cwiseAbs().maxCoeff();
  if (defect > 1e-12)
    throw std::invalid_argument("BasisSpec: rotation rows are not orthonormal");
  BasisSpec out(*this);
  out.rotation_ = std::move(rotation);
  return out;
}

Eigen::Index BasisSpec::size() const {
  return rotation_ ? rotation_->rows() : static_cast<Eigen::Index>(index_set_.size());
}

const Eigen::MatrixXd& BasisSpec::rotation() const {
  if (!rotation_) throw std::logic_error("BasisSpec: no rotation present");
  return *rotation_;
}

Eigen::VectorXd BasisSpec::eval(const Eigen::VectorXd& x) const {
  const int d = dimension();
  if (x.size() != d) throw std::invalid_argument("BasisSpec::eval: point dimension mismatch");
  const int maxdeg = index_set_.max_component();
  // one contiguous column of univariate values per dimension
  Eigen::MatrixXd uni(maxdeg + 1, d);
  for (int k = 0; k < d; ++k) eval_orthonormal_1d(measures_[k], maxdeg, x[k], uni.col(k).data());
  const auto mt = static_cast<Eigen::Index>(index_set_.size());
  Eigen::VectorXd phi(mt);
  for (Eigen::Index j = 0; j < mt; ++j) {
    double v = 1.0;
    const auto& idx = index_set_[static_cast<std::size_t>(j)];
    for (int k = 0; k < d; ++k) v *= uni(idx[k], k);
    phi[j] = v;
  }
  if (rotation_) phi = (*rotation_) * phi;
  if (!phi.allFinite()) throw std::runtime_error("BasisSpec::eval: non-finite basis value");
  return phi;
}

Eigen::MatrixXd BasisSpec::eval_many(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd out(X.rows(), size());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out.row(i) = eval(X.row(i).transpose()).transpose();
  return out;
}

nlohmann::json BasisSpec::to_json() const {
  nlohmann::json j;
  j["d"] = dimension();
  j["rule"] = to_string(index_set_.rule());
  j["p"] = index_set_.degree();
  nlohmann::json meas = nlohmann::json::array();
  for (auto m : measures_) meas.push_back(to_string(m));
  j["measure"] = meas;
  if (rotation_seed_) j["seed_for_rotation"] = *rotation_seed_;
  return j;
}

BasisSpec BasisSpec::from_json(const nlohmann::json& j) {
  const int d = j.at("d").get<int>();
  auto idx = build_index_set(d, index_rule_from_string(j.at("rule").get<std::string>()),
                             j.at("p").get<int>());
  std::vector<Measure> meas;
  if (j.at("measure").is_string()) {
    meas.assign(static_cast<std::size_t>(d), measure_from_string(j.at("measure").get<std::string>()));
  } else {
    for (const auto& s : j.at("measure")) meas.push_back(measure_from_string(s.get<std::string>()));
  }
  BasisSpec spec(std::move(meas), std::move(idx));
  if (j.contains("seed_for_rotation")) {
    const auto seed = j.at("seed_for_rotation").get<std::uint64_t>();
    spec = spec.rotated(random_rotation(spec.size(), seed));
    spec.rotation_seed_ = seed;
  }
  return spec;
}

Eigen::MatrixXd random_rotation(Eigen::Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd A(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) A(i, j) = gauss(rng);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU);
  return svd.matrixU();
}

}  // namespace obls
