#pragma once

#include "obls/baselines.hpp"
#include "obls/subsampling.hpp"

namespace obls {

/// Approximation pipelines compared in the error tables.
enum class DesignMethod {
  SLS,          ///< unweighted least squares on mu points
  OWLS,         ///< weighted least squares on optimal-measure points
  BLS,          ///< best of M candidate samples
  CBLS,         ///< BLS conditioned on Z <= delta
  SBLS,         ///< cBLS then greedy subsampling
  IGauss,       ///< interpolation on Gauss points
  ILeja,        ///< interpolation on weighted Leja points
  IFekete,      ///< interpolation on approximate Fekete points
  IMagic,       ///< interpolation on magic points
  ITensorGauss, ///< sparse tensor grid from Gauss sequences
  ITensorLeja   ///< sparse tensor grid from Leja sequences
};

std::string to_string(DesignMethod m);
DesignMethod design_method_from_string(const std::string& name);

enum class NPolicy { GuaranteedStability, GivenCost };

struct ExperimentConfig {
  std::string example = "u1";  // u1 | u2 | u3 | u4 | u4-noisy
  int dimension = 1;           // u4 family only
  double sigma = 0.0;          // noisy case only
  std::vector<DesignMethod> methods;
  std::vector<int> degrees;
  double delta = 0.9;
  double eta = 0.01;
  int M = 1;
  NPolicy n_policy = NPolicy::GuaranteedStability;
  int replicates = 10;
  int n_test = 1000;
  GreedyConfig::Variant greedy_variant = GreedyConfig::Variant::Exact;
  std::uint64_t seed = 0;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct ReplicateRecord {
  std::string method;
  int degree = 0;
  long m = 0;
  int replicate = 0;
  long n_points = 0;
  double final_Z = std::numeric_limits<double>::quiet_NaN();
  double log10_error = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  std::string status = "ok";  // or the failure message
};

struct CellSummary {
  std::string method;
  int degree = 0;
  long m = 0;
  double q10 = 0.0, q50 = 0.0, q90 = 0.0;  // of log10 error, failures excluded
  long n_min_points = 0, n_max_points = 0;
  double seconds = 0.0;
  int failures = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ReplicateRecord> records;

  std::vector<CellSummary> summarize() const;
  std::string to_csv() const;
  static std::vector<ReplicateRecord> records_from_csv(const std::string& csv);
  nlohmann::json to_json() const;
  std::string to_table() const;  // human-readable layout
};

/// One problem instance: the approximation space and the target function.
struct Problem {
  BasisSpec spec;
  ScalarFn u;
};

/// Builds the (spec, u) pair for an example id at degree p. The rotation of
/// example u3 is redrawn from rotation_seed, so callers pass a per-replicate
/// derived seed there.
Problem make_problem(const std::string& example, int dimension, int degree,
                     std::uint64_t rotation_seed);

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Per-method Z samples for external histogramming.
struct StabilityStudyResult {
  std::vector<std::string> methods;
  std::vector<std::vector<double>> Z;  // parallel to methods
  std::string to_csv() const;
  nlohmann::json to_json() const;
};
StabilityStudyResult run_stability_study(const nlohmann::json& config, std::uint64_t seed);

/// Sorted-point distributions across replicates, plus Gauss reference nodes.
struct PointLocationResult {
  std::vector<Eigen::VectorXd> sorted_points;  // one ascending vector per replicate
  Eigen::VectorXd gauss_reference;
  std::string to_csv() const;
  nlohmann::json to_json() const;
};
PointLocationResult run_point_location_study(const nlohmann::json& config, std::uint64_t seed);

/// Output of the top-level command dispatcher used by the C API and CLI.
struct CommandResult {
  std::string csv;
  nlohmann::json json;
};

/// command is one of "experiment", "stability", "points", "design".
CommandResult run_command(const std::string& command, const nlohmann::json& config,
                          std::uint64_t seed);

}  // namespace obls
