#pragma once

#include <string>
#include <vector>

#include "obls/stability.hpp"

namespace obls {

struct GreedyConfig {
  enum class Variant { Exact, Fast };
  enum class Stop { StabilityBreak, ReachCount };

  double delta = 0.9;
  long n_min = 0;  // lower bound on retained points; must be >= m
  Variant variant = Variant::Exact;
  Stop stop = Stop::StabilityBreak;
  long target = 0;  // ReachCount only; removal continues until #K == target
};

struct GreedyStep {
  long step = 0;
  long removed_index = 0;  // index into the *original* sample
  double Z_after = 0.0;
};

/// Removal log plus operation counters used by the complexity checks.
struct GreedyTrace {
  std::vector<GreedyStep> steps;
  long eig_count = 0;        // symmetric eigendecompositions performed
  long candidate_evals = 0;  // candidate screenings (exact Z or dot-product bound)
  std::string to_csv() const;
};

/// Exact rank-one removal of one point from an averaged Gram matrix:
/// G_{K minus k} = (#K/(#K-1)) G - (1/(#K-1)) w phi phi^T.
Eigen::MatrixXd downdate_gram(const Eigen::MatrixXd& G, const Eigen::VectorXd& phi,
                              double weight, long old_count);

/// Greedy point removal (s-BLS). Exact variant evaluates every single-removal
/// Z per step; fast variant screens candidates with rank-one eigenvalue bounds
/// and evaluates only two. StabilityBreak keeps Z <= delta throughout and
/// requires a stable input; ReachCount pushes to the target count even when
/// stability is lost, recording the final Z in the metadata.
SampleSet greedy_subsample(const SampleSet& sample, const BasisSpec& spec,
                           const GreedyConfig& config, GreedyTrace* trace = nullptr);

}  // namespace obls
