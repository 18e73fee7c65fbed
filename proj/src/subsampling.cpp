#include "obls/subsampling.hpp"

#include <algorithm>
#include <sstream>

namespace obls {

std::string GreedyTrace::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "step,removed_index,Z_after\n";
  for (const auto& s : steps) out << s.step << "," << s.removed_index << "," << s.Z_after << "\n";
  return out.str();
}

Eigen::MatrixXd downdate_gram(const Eigen::MatrixXd& G, const Eigen::VectorXd& phi,
                              double weight, long old_count) {
  if (old_count < 2) throw std::invalid_argument("downdate_gram: old_count must be >= 2");
  const double c = double(old_count) / double(old_count - 1);
  return c * G - (weight / double(old_count - 1)) * (phi * phi.transpose());
}

namespace {

double z_stat(const Eigen::MatrixXd& G, long* eig_count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  if (eig_count) ++*eig_count;
  return std::max(es.eigenvalues().maxCoeff() - 1.0, 1.0 - es.eigenvalues().minCoeff());
}

Eigen::MatrixXd gram_of(const Eigen::MatrixXd& phi, const Eigen::VectorXd& w,
                        const std::vector<long>& kept) {
  const Eigen::Index m = phi.cols();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  for (long k : kept) G.noalias() += w[k] * phi.row(k).transpose() * phi.row(k);
  return G / double(kept.size());
}

// one greedy step; returns position within kept of the point to remove and the
// exact Z of the resulting Gram matrix
struct StepChoice {
  std::size_t pos;
  double Z_after;
};

StepChoice exact_step(const Eigen::MatrixXd& G, const Eigen::MatrixXd& phi,
                      const Eigen::VectorXd& w, const std::vector<long>& kept,
                      GreedyTrace& trace) {
  StepChoice best{0, std::numeric_limits<double>::infinity()};
  const long K = static_cast<long>(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const long k = kept[i];
    const double Z = z_stat(downdate_gram(G, phi.row(k).transpose(), w[k], K), &trace.eig_count);
    ++trace.candidate_evals;
    if (Z < best.Z_after) best = StepChoice{i, Z};
  }
  return best;
}

StepChoice fast_step(const Eigen::MatrixXd& G, const Eigen::MatrixXd& phi,
                     const Eigen::VectorXd& w, const std::vector<long>& kept,
                     GreedyTrace& trace) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  ++trace.eig_count;
  const Eigen::Index m = G.rows();
  const Eigen::VectorXd q_top = es.eigenvectors().col(m - 1);
  const Eigen::VectorXd q_bot = es.eigenvectors().col(0);
  // Rayleigh-quotient lower bounds for the two extremes of G_{K\k} - I differ
  // across k only through w_k (q^T phi_k)^2, so the screen reduces to extremes
  // of those projections: the lambda_max side wants the largest projection on
  // the top eigenvector removed, the -lambda_min side the smallest projection
  // on the bottom one.
  std::size_t k1 = 0, k2 = 0;
  double best1 = -1.0, best2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const long k = kept[i];
    const double p_top = w[k] * std::pow(q_top.dot(phi.row(k)), 2);
    const double p_bot = w[k] * std::pow(q_bot.dot(phi.row(k)), 2);
    ++trace.candidate_evals;
    if (p_top > best1) {
      best1 = p_top;
      k1 = i;
    }
    if (p_bot < best2) {
      best2 = p_bot;
      k2 = i;
    }
  }
  const long K = static_cast<long>(kept.size());
  StepChoice best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t i : {std::min(k1, k2), std::max(k1, k2)}) {
    if (i == best.pos && best.Z_after < std::numeric_limits<double>::infinity()) continue;
    const long k = kept[i];
    const double Z = z_stat(downdate_gram(G, phi.row(k).transpose(), w[k], K), &trace.eig_count);
    if (Z < best.Z_after) best = StepChoice{i, Z};
  }
  return best;
}

}  // namespace

SampleSet greedy_subsample(const SampleSet& sample, const BasisSpec& spec,
                           const GreedyConfig& config, GreedyTrace* trace) {
  const Eigen::Index m = spec.size();
  if (config.stop == GreedyConfig::Stop::StabilityBreak && config.n_min < m)
    throw std::invalid_argument("greedy_subsample: n_min must be >= m");
  if (config.stop == GreedyConfig::Stop::ReachCount &&
      (config.target < 1 || config.target > sample.size()))
    throw std::invalid_argument("greedy_subsample: target out of range");

  GreedyTrace local;
  GreedyTrace& tr = trace ? *trace : local;

  const Eigen::MatrixXd phi = spec.eval_many(sample.points);
  const Eigen::VectorXd& w = sample.weights;
  std::vector<long> kept(sample.size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = static_cast<long>(i);

  Eigen::MatrixXd G = gram_of(phi, w, kept);
  double Z = z_stat(G, &tr.eig_count);
  if (config.stop == GreedyConfig::Stop::StabilityBreak && Z > config.delta)
    throw std::invalid_argument("greedy_subsample: input sample is not stable at delta");

  std::vector<int> removed;
  long step = 0;
  long since_refresh = 0;
  const long floor_count = config.stop == GreedyConfig::Stop::ReachCount
                               ? config.target
                               : std::max(config.n_min, static_cast<long>(m));
  while (static_cast<long>(kept.size()) > floor_count) {
    StepChoice choice = config.variant == GreedyConfig::Variant::Exact
                            ? exact_step(G, phi, w, kept, tr)
                            : fast_step(G, phi, w, kept, tr);
    if (config.stop == GreedyConfig::Stop::StabilityBreak && choice.Z_after > config.delta) break;

    const long k = kept[choice.pos];
    G = downdate_gram(G, phi.row(k).transpose(), w[k], static_cast<long>(kept.size()));
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(choice.pos));
    removed.push_back(static_cast<int>(k));
    Z = choice.Z_after;
    tr.steps.push_back(GreedyStep{++step, k, Z});
    // accumulated rank-one updates drift; rebuild from scratch now and then
    if (++since_refresh == 128) {
      G = gram_of(phi, w, kept);
      since_refresh = 0;
    }
  }

  SampleSet out;
  out.points.resize(static_cast<Eigen::Index>(kept.size()), sample.points.cols());
  out.weights.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.points.row(static_cast<Eigen::Index>(i)) = sample.points.row(kept[i]);
    out.weights[static_cast<Eigen::Index>(i)] = w[kept[i]];
  }
  out.method = SampleMethod::SBLS;
  out.meta = sample.meta;
  out.meta.removed_indices = std::move(removed);
  out.meta.final_Z = z_stat(gram_of(phi, w, kept), &tr.eig_count);
  return out;
}

}  // namespace obls
