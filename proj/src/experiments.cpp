#include "obls/experiments.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "obls/rng.hpp"

namespace obls {

std::string to_string(DesignMethod m) {
  switch (m) {
    case DesignMethod::SLS: return "sls";
    case DesignMethod::OWLS: return "owls";
    case DesignMethod::BLS: return "bls";
    case DesignMethod::CBLS: return "cbls";
    case DesignMethod::SBLS: return "sbls";
    case DesignMethod::IGauss: return "gauss";
    case DesignMethod::ILeja: return "leja";
    case DesignMethod::IFekete: return "fekete";
    case DesignMethod::IMagic: return "magic";
    case DesignMethod::ITensorGauss: return "tensor-gauss";
    case DesignMethod::ITensorLeja: return "tensor-leja";
  }
  throw std::logic_error("unknown DesignMethod");
}

DesignMethod design_method_from_string(const std::string& name) {
  static const std::map<std::string, DesignMethod> table = {
      {"sls", DesignMethod::SLS},       {"owls", DesignMethod::OWLS},
      {"bls", DesignMethod::BLS},       {"cbls", DesignMethod::CBLS},
      {"sbls", DesignMethod::SBLS},     {"gauss", DesignMethod::IGauss},
      {"leja", DesignMethod::ILeja},    {"fekete", DesignMethod::IFekete},
      {"magic", DesignMethod::IMagic},  {"tensor-gauss", DesignMethod::ITensorGauss},
      {"tensor-leja", DesignMethod::ITensorLeja}};
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown method: " + name);
  return it->second;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.example = j.value("example", std::string("u1"));
  c.dimension = j.value("dimension", 1);
  c.sigma = j.value("sigma", 0.0);
  for (const auto& name : j.at("methods"))
    c.methods.push_back(design_method_from_string(name.get<std::string>()));
  for (const auto& p : j.at("degrees")) c.degrees.push_back(p.get<int>());
  c.delta = j.value("delta", 0.9);
  c.eta = j.value("eta", 0.01);
  c.M = j.value("M", 1);
  const std::string policy = j.value("n_policy", std::string("guaranteed"));
  if (policy == "guaranteed")
    c.n_policy = NPolicy::GuaranteedStability;
  else if (policy == "given-cost")
    c.n_policy = NPolicy::GivenCost;
  else
    throw std::invalid_argument("unknown n_policy: " + policy);
  c.replicates = j.value("replicates", 10);
  c.n_test = j.value("n_test", 1000);
  const std::string variant = j.value("greedy_variant", std::string("exact"));
  if (variant == "exact")
    c.greedy_variant = GreedyConfig::Variant::Exact;
  else if (variant == "fast")
    c.greedy_variant = GreedyConfig::Variant::Fast;
  else
    throw std::invalid_argument("unknown greedy_variant: " + variant);
  c.seed = j.value("seed", std::uint64_t{0});
  if (c.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["example"] = example;
  j["dimension"] = dimension;
  j["sigma"] = sigma;
  std::vector<std::string> ms;
  for (auto m : methods) ms.push_back(to_string(m));
  j["methods"] = ms;
  j["degrees"] = degrees;
  j["delta"] = delta;
  j["eta"] = eta;
  j["M"] = M;
  j["n_policy"] = n_policy == NPolicy::GuaranteedStability ? "guaranteed" : "given-cost";
  j["replicates"] = replicates;
  j["n_test"] = n_test;
  j["greedy_variant"] = greedy_variant == GreedyConfig::Variant::Exact ? "exact" : "fast";
  j["seed"] = seed;
  return j;
}

Problem make_problem(const std::string& example, int dimension, int degree,
                     std::uint64_t rotation_seed) {
  if (example == "u1") {
    BasisSpec spec(Measure::GaussianStandard,
                   build_index_set(1, IndexRule::TotalDegree, degree));
    return Problem{spec, [](const Eigen::VectorXd& x) {
                     return std::exp(-0.25 * (x[0] - 1.0) * (x[0] - 1.0));
                   }};
  }
  if (example == "u2") {
    BasisSpec spec(Measure::UniformSymmetric,
                   build_index_set(1, IndexRule::TotalDegree, degree));
    return Problem{spec, [](const Eigen::VectorXd& x) { return 1.0 / (1.0 + 5.0 * x[0] * x[0]); }};
  }
  if (example == "u3") {
    const int full = 40;
    if (degree > full) throw std::invalid_argument("u3: degree must be <= 40");
    BasisSpec base(Measure::GaussianStandard,
                   build_index_set(1, IndexRule::TotalDegree, full));
    Eigen::MatrixXd U = random_rotation(full + 1, rotation_seed);
    Eigen::VectorXd coeff(full + 1);
    for (int i = 0; i <= full; ++i) coeff[i] = std::exp(-0.5 * double(i));
    BasisSpec spec = base.rotated(U.topRows(degree + 1));
    auto u = [base, U, coeff](const Eigen::VectorXd& x) {
      return coeff.dot(U * base.eval(x));
    };
    return Problem{spec, u};
  }
  if (example == "u4" || example == "u4-noisy") {
    if (dimension < 1) throw std::invalid_argument("u4: dimension must be >= 1");
    BasisSpec spec(Measure::UniformSymmetric,
                   build_index_set(dimension, IndexRule::HyperbolicCross, degree));
    const double c = 0.5 / (2.0 * double(dimension));
    return Problem{spec, [c](const Eigen::VectorXd& x) { return 1.0 / (1.0 - c * x.sum()); }};
  }
  throw std::invalid_argument("unknown example: " + example);
}

namespace {

WeightFn1d weight_from_spec(const BasisSpec& spec) {
  return [spec](double t) {
    Eigen::VectorXd x(1);
    x[0] = t;
    const double s = spec.eval(x).squaredNorm();
    if (s <= 0.0) throw std::runtime_error("weight: basis vanishes at grid point");
    return double(spec.size()) / s;
  };
}

bool is_interpolation(DesignMethod m) {
  switch (m) {
    case DesignMethod::IGauss:
    case DesignMethod::ILeja:
    case DesignMethod::IFekete:
    case DesignMethod::IMagic:
    case DesignMethod::ITensorGauss:
    case DesignMethod::ITensorLeja:
      return true;
    default:
      return false;
  }
}

Eigen::MatrixXd interpolation_points(DesignMethod method, const BasisSpec& spec) {
  const Eigen::Index m = spec.size();
  if (method == DesignMethod::ITensorGauss || method == DesignMethod::ITensorLeja) {
    const int need = spec.index_set().max_component() + 1;
    std::vector<Eigen::VectorXd> seqs;
    for (int k = 0; k < spec.dimension(); ++k) {
      if (method == DesignMethod::ITensorGauss) {
        seqs.push_back(gauss_sequence(spec.measure(k), need));
      } else {
        CandidateGrid grid = CandidateGrid::standard(spec.measure(k));
        BasisSpec spec1(spec.measure(k), build_index_set(1, IndexRule::TotalDegree, need - 1));
        seqs.push_back(weighted_leja(grid, weight_from_spec(spec1), need));
      }
    }
    return tensor_interpolation_points(seqs, spec.index_set());
  }
  if (spec.dimension() != 1)
    throw std::invalid_argument("univariate interpolation method on multivariate basis");
  CandidateGrid grid = CandidateGrid::standard(spec.measure(0));
  Eigen::VectorXd pts;
  switch (method) {
    case DesignMethod::IGauss:
      pts = gauss_points(spec.measure(0), static_cast<int>(m));
      break;
    case DesignMethod::ILeja:
      pts = weighted_leja(grid, weight_from_spec(spec), static_cast<int>(m));
      break;
    case DesignMethod::IFekete:
      pts = fekete_points(grid, spec, weight_from_spec(spec));
      break;
    case DesignMethod::IMagic:
      pts = magic_points(grid, spec);
      break;
    default:
      throw std::logic_error("not an interpolation method");
  }
  return Eigen::Map<Eigen::MatrixXd>(pts.data(), pts.size(), 1);
}

/// Design + fit for one replicate; the caller has already picked the problem.
ApproxModel run_pipeline(DesignMethod method, const Problem& problem,
                         const OptimalDensity* density, const ExperimentConfig& cfg,
                         std::mt19937_64& rng, double* final_Z, long* n_points) {
  const BasisSpec& spec = problem.spec;
  const Eigen::Index m = spec.size();
  const NoiseModel noise = cfg.sigma > 0.0 ? NoiseModel::gaussian(cfg.sigma) : NoiseModel::none();

  if (is_interpolation(method)) {
    Eigen::MatrixXd pts = interpolation_points(method, spec);
    Eigen::VectorXd y(pts.rows());
    for (Eigen::Index i = 0; i < pts.rows(); ++i) y[i] = problem.u(pts.row(i).transpose());
    if (noise.active()) {
      std::normal_distribution<double> e(0.0, noise.sigma);
      for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += e(rng);
    }
    ApproxModel model = interpolate(pts, spec, y);
    *n_points = pts.rows();
    *final_Z = std::numeric_limits<double>::quiet_NaN();
    return model;
  }

  const long n_guaranteed = required_sample_size(cfg.delta, cfg.eta, m);
  const long n = cfg.n_policy == NPolicy::GivenCost ? m : n_guaranteed;

  SampleSet s;
  if (method == DesignMethod::SLS) {
    s = mu_sample(spec, rng, n);
  } else {
    if (!density) throw std::logic_error("density required for optimal-measure methods");
    BoostConfig bc;
    bc.delta = cfg.delta;
    bc.eta = cfg.eta;
    bc.M = cfg.M;
    switch (method) {
      case DesignMethod::OWLS:
        s = density->draw_product_sample(rng, n);
        break;
      case DesignMethod::BLS:
        bc.n_override = n;
        s = boost_resample(*density, bc, rng);
        break;
      case DesignMethod::CBLS:
        bc.n_override = n;
        s = boost_condition(*density, bc, rng);
        break;
      case DesignMethod::SBLS: {
        // subsampling starts from a stable guaranteed-size sample either way
        bc.n_override = n_guaranteed;
        SampleSet big = boost_condition(*density, bc, rng);
        GreedyConfig gc;
        gc.delta = cfg.delta;
        gc.variant = cfg.greedy_variant;
        if (cfg.n_policy == NPolicy::GivenCost) {
          gc.stop = GreedyConfig::Stop::ReachCount;
          gc.target = m;
        } else {
          gc.stop = GreedyConfig::Stop::StabilityBreak;
          gc.n_min = m;
        }
        s = greedy_subsample(big, spec, gc);
        break;
      }
      default:
        throw std::logic_error("unhandled method");
    }
  }

  GramReport report = gram(s, spec);
  *final_Z = report.Z;
  *n_points = s.size();
  Eigen::VectorXd y(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) y[i] = problem.u(s.points.row(i).transpose());
  return fit(s, spec, y, noise, &rng);
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * double(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - double(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.config = config;

  for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
    const DesignMethod method = config.methods[mi];
    for (std::size_t di = 0; di < config.degrees.size(); ++di) {
      const int p = config.degrees[di];
      const std::uint64_t cell_seed =
          mix_seed(config.seed, (std::uint64_t(mi) << 32) | std::uint64_t(di));

      // the problem (and density) is fixed across replicates except for u3,
      // whose rotation is redrawn per trial
      std::unique_ptr<Problem> shared_problem;
      std::unique_ptr<OptimalDensity> shared_density;
      const bool needs_density = !is_interpolation(method) && method != DesignMethod::SLS;
      if (config.example != "u3") {
        shared_problem = std::make_unique<Problem>(
            make_problem(config.example, config.dimension, p, 0));
        if (needs_density)
          shared_density = std::make_unique<OptimalDensity>(shared_problem->spec);
      }

      for (int r = 0; r < config.replicates; ++r) {
        ReplicateRecord rec;
        rec.method = to_string(method);
        rec.degree = p;
        rec.replicate = r;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          std::unique_ptr<Problem> own_problem;
          const Problem* problem = shared_problem.get();
          const OptimalDensity* density = shared_density.get();
          std::unique_ptr<OptimalDensity> own_density;
          if (!problem) {
            own_problem = std::make_unique<Problem>(make_problem(
                config.example, config.dimension, p, mix_seed(cell_seed, 1000003 + r)));
            problem = own_problem.get();
            if (needs_density) {
              own_density = std::make_unique<OptimalDensity>(problem->spec);
              density = own_density.get();
            }
          }
          rec.m = problem->spec.size();
          auto rng = make_rng(cell_seed, std::uint64_t(r));
          ApproxModel model = run_pipeline(method, *problem, density, config, rng,
                                           &rec.final_Z, &rec.n_points);
          auto test_rng = make_rng(cell_seed, 0x7e57ULL * 1000000 + std::uint64_t(r));
          Eigen::MatrixXd test_pts =
              mu_sample(problem->spec, test_rng, config.n_test).points;
          rec.log10_error = std::log10(test_error(model, problem->u, test_pts));
        } catch (const std::exception& e) {
          rec.status = e.what();
        }
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

std::vector<CellSummary> ExperimentResult::summarize() const {
  std::vector<CellSummary> cells;
  for (DesignMethod method : config.methods) {
    for (int p : config.degrees) {
      CellSummary cell;
      cell.method = to_string(method);
      cell.degree = p;
      std::vector<double> errs;
      cell.n_min_points = std::numeric_limits<long>::max();
      cell.n_max_points = 0;
      for (const auto& rec : records) {
        if (rec.method != cell.method || rec.degree != p) continue;
        cell.seconds += rec.seconds;
        cell.m = std::max(cell.m, rec.m);
        if (rec.status != "ok") {
          ++cell.failures;
          continue;
        }
        errs.push_back(rec.log10_error);
        cell.n_min_points = std::min(cell.n_min_points, rec.n_points);
        cell.n_max_points = std::max(cell.n_max_points, rec.n_points);
      }
      if (errs.empty()) cell.n_min_points = 0;
      cell.q10 = quantile(errs, 0.10);
      cell.q50 = quantile(errs, 0.50);
      cell.q90 = quantile(errs, 0.90);
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string ExperimentResult::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "method,degree,m,replicate,n_points,final_Z,log10_error,seconds,status\n";
  for (const auto& r : records) {
    std::string status = r.status;
    for (auto& ch : status)
      if (ch == ',' || ch == '\n') ch = ';';
    out << r.method << "," << r.degree << "," << r.m << "," << r.replicate << "," << r.n_points
        << "," << r.final_Z << "," << r.log10_error << "," << r.seconds << "," << status << "\n";
  }
  return out.str();
}

std::vector<ReplicateRecord> ExperimentResult::records_from_csv(const std::string& csv) {
  std::vector<ReplicateRecord> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    ReplicateRecord r;
    std::getline(ls, r.method, ',');
    std::getline(ls, field, ',');
    r.degree = std::stoi(field);
    std::getline(ls, field, ',');
    r.m = std::stol(field);
    std::getline(ls, field, ',');
    r.replicate = std::stoi(field);
    std::getline(ls, field, ',');
    r.n_points = std::stol(field);
    std::getline(ls, field, ',');
    r.final_Z = std::stod(field);
    std::getline(ls, field, ',');
    r.log10_error = std::stod(field);
    std::getline(ls, field, ',');
    r.seconds = std::stod(field);
    std::getline(ls, r.status);
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json ExperimentResult::to_json() const {
  nlohmann::json j;
  j["config"] = config.to_json();
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    j["records"].push_back({{"method", r.method},
                            {"degree", r.degree},
                            {"m", r.m},
                            {"replicate", r.replicate},
                            {"n_points", r.n_points},
                            {"final_Z", r.final_Z},
                            {"log10_error", r.log10_error},
                            {"seconds", r.seconds},
                            {"status", r.status}});
  }
  j["summary"] = nlohmann::json::array();
  for (const auto& c : summarize()) {
    j["summary"].push_back({{"method", c.method},
                            {"degree", c.degree},
                            {"m", c.m},
                            {"log10_q10", c.q10},
                            {"log10_q50", c.q50},
                            {"log10_q90", c.q90},
                            {"n_min", c.n_min_points},
                            {"n_max", c.n_max_points},
                            {"seconds", c.seconds},
                            {"failures", c.failures}});
  }
  j["table"] = to_table();
  return j;
}

std::string ExperimentResult::to_table() const {
  std::ostringstream out;
  const char* block =
      config.n_policy == NPolicy::GuaranteedStability ? "(a) guaranteed stability" : "(b) given cost n = m";
  out << "example " << config.example << ", " << block << ", M = " << config.M << "\n";
  out << "method        p     m    log10 err [q10; q90]     #K [min; max]   fail\n";
  char line[160];
  for (const auto& c : summarize()) {
    std::snprintf(line, sizeof(line), "%-12s %4d %5ld    [%7.2f; %7.2f]       [%ld; %ld]      %d\n",
                  c.method.c_str(), c.degree, c.m, c.q10, c.q90, c.n_min_points, c.n_max_points,
                  c.failures);
    out << line;
  }
  return out.str();
}

StabilityStudyResult run_stability_study(const nlohmann::json& config, std::uint64_t seed) {
  const Measure measure = measure_from_string(config.value("measure", std::string("uniform")));
  const int p = config.value("p", 5);
  const long n = config.value("n", 100L);
  const int replicates = config.value("replicates", 1000);
  const double delta = config.value("delta", 0.9);
  const double eta = config.value("eta", 0.01);
  const int M = config.value("M", 1);
  std::vector<std::string> methods =
      config.value("methods", std::vector<std::string>{"sls", "owls", "cbls", "sbls"});

  BasisSpec spec(measure, build_index_set(1, IndexRule::TotalDegree, p));
  OptimalDensity density(spec);

  StabilityStudyResult result;
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const DesignMethod method = design_method_from_string(methods[mi]);
    std::vector<double> zs;
    for (int r = 0; r < replicates; ++r) {
      auto rng = make_rng(mix_seed(seed, mi), std::uint64_t(r));
      BoostConfig bc;
      bc.delta = delta;
      bc.eta = eta;
      bc.M = M;
      bc.n_override = n;
      double Z = 0.0;
      switch (method) {
        case DesignMethod::SLS:
          Z = gram(mu_sample(spec, rng, n), spec).Z;
          break;
        case DesignMethod::OWLS:
          Z = gram(density.draw_product_sample(rng, n), spec).Z;
          break;
        case DesignMethod::BLS:
          Z = gram(boost_resample(density, bc, rng), spec).Z;
          break;
        case DesignMethod::CBLS:
          Z = gram(boost_condition(density, bc, rng), spec).Z;
          break;
        case DesignMethod::SBLS: {
          SampleSet s = boost_condition(density, bc, rng);
          GreedyConfig gc;
          gc.delta = delta;
          gc.n_min = spec.size();
          Z = greedy_subsample(s, spec, gc).meta.final_Z;
          break;
        }
        default:
          throw std::invalid_argument("stability study: unsupported method " + methods[mi]);
      }
      zs.push_back(Z);
    }
    result.methods.push_back(methods[mi]);
    result.Z.push_back(std::move(zs));
  }
  return result;
}

std::string StabilityStudyResult::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "method,replicate,Z\n";
  for (std::size_t mi = 0; mi < methods.size(); ++mi)
    for (std::size_t r = 0; r < Z[mi].size(); ++r)
      out << methods[mi] << "," << r << "," << Z[mi][r] << "\n";
  return out.str();
}

nlohmann::json StabilityStudyResult::to_json() const {
  nlohmann::json j;
  for (std::size_t mi = 0; mi < methods.size(); ++mi) j[methods[mi]] = Z[mi];
  return j;
}

PointLocationResult run_point_location_study(const nlohmann::json& config, std::uint64_t seed) {
  const Measure measure = measure_from_string(config.value("measure", std::string("gaussian")));
  const int p = config.value("p", 5);
  const long n = config.value("n", 10L);
  const int replicates = config.value("replicates", 1000);
  const double delta = config.value("delta", 0.9);
  const double eta = config.value("eta", 0.01);
  const int M = config.value("M", 1);
  const std::string method = config.value("method", std::string("cbls"));

  BasisSpec spec(measure, build_index_set(1, IndexRule::TotalDegree, p));
  if (n < spec.size()) throw std::invalid_argument("point study: n must be >= m");
  OptimalDensity density(spec);

  PointLocationResult result;
  result.gauss_reference = gauss_points(measure, static_cast<int>(n));
  for (int r = 0; r < replicates; ++r) {
    auto rng = make_rng(seed, std::uint64_t(r));
    BoostConfig bc;
    bc.delta = delta;
    bc.eta = eta;
    bc.M = M;
    SampleSet s;
    if (method == "cbls") {
      bc.n_override = n;
      s = boost_condition(density, bc, rng);
    } else if (method == "sbls") {
      s = boost_condition(density, bc, rng);
      GreedyConfig gc;
      gc.delta = delta;
      gc.stop = GreedyConfig::Stop::ReachCount;
      gc.target = n;
      s = greedy_subsample(s, spec, gc);
    } else {
      throw std::invalid_argument("point study: method must be cbls or sbls");
    }
    Eigen::VectorXd pts = s.points.col(0);
    std::sort(pts.begin(), pts.end());
    result.sorted_points.push_back(std::move(pts));
  }
  return result;
}

std::string PointLocationResult::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "series,replicate,rank,x\n";
  for (Eigen::Index k = 0; k < gauss_reference.size(); ++k)
    out << "gauss-ref,-1," << k << "," << gauss_reference[k] << "\n";
  for (std::size_t r = 0; r < sorted_points.size(); ++r)
    for (Eigen::Index k = 0; k < sorted_points[r].size(); ++k)
      out << "points," << r << "," << k << "," << sorted_points[r][k] << "\n";
  return out.str();
}

nlohmann::json PointLocationResult::to_json() const {
  nlohmann::json j;
  j["gauss_reference"] =
      std::vector<double>(gauss_reference.begin(), gauss_reference.end());
  j["sorted_points"] = nlohmann::json::array();
  for (const auto& v : sorted_points)
    j["sorted_points"].push_back(std::vector<double>(v.begin(), v.end()));
  return j;
}

namespace {

SampleSet build_design_from_config(const nlohmann::json& config, std::uint64_t seed) {
  BasisSpec spec = [&]() {
    if (config.contains("spec")) return BasisSpec::from_json(config.at("spec"));
    const Measure measure =
        measure_from_string(config.value("measure", std::string("uniform")));
    const int p = config.value("p", 5);
    const int d = config.value("dimension", 1);
    const IndexRule rule =
        index_rule_from_string(config.value("rule", std::string("total_degree")));
    return BasisSpec(measure, build_index_set(d, rule, p));
  }();
  const std::string method = config.value("method", std::string("cbls"));
  BoostConfig bc;
  bc.delta = config.value("delta", 0.9);
  bc.eta = config.value("eta", 0.01);
  bc.M = config.value("M", 1);
  if (config.contains("n")) bc.n_override = config.at("n").get<long>();
  auto rng = make_rng(seed);

  if (method == "sls") return mu_sample(spec, rng, bc.sample_size(spec.size()));
  OptimalDensity density(spec);
  if (method == "owls") return density.draw_product_sample(rng, bc.sample_size(spec.size()));
  if (method == "bls") return boost_resample(density, bc, rng);
  if (method == "cbls") return boost_condition(density, bc, rng);
  if (method == "sbls") {
    SampleSet s = boost_condition(density, bc, rng);
    GreedyConfig gc;
    gc.delta = bc.delta;
    gc.n_min = config.value("n_min", long(spec.size()));
    const std::string variant = config.value("greedy_variant", std::string("exact"));
    gc.variant =
        variant == "fast" ? GreedyConfig::Variant::Fast : GreedyConfig::Variant::Exact;
    if (config.contains("target")) {
      gc.stop = GreedyConfig::Stop::ReachCount;
      gc.target = config.at("target").get<long>();
    }
    return greedy_subsample(s, spec, gc);
  }
  throw std::invalid_argument("design: unsupported method " + method);
}

}  // namespace

CommandResult run_command(const std::string& command, const nlohmann::json& config,
                          std::uint64_t seed) {
  CommandResult out;
  if (command == "experiment") {
    ExperimentConfig cfg = ExperimentConfig::from_json(config);
    cfg.seed = seed;
    ExperimentResult result = run_experiment(cfg);
    out.csv = result.to_csv();
    out.json = result.to_json();
  } else if (command == "stability") {
    StabilityStudyResult result = run_stability_study(config, seed);
    out.csv = result.to_csv();
    out.json = result.to_json();
  } else if (command == "points") {
    PointLocationResult result = run_point_location_study(config, seed);
    out.csv = result.to_csv();
    out.json = result.to_json();
  } else if (command == "design") {
    SampleSet s = build_design_from_config(config, seed);
    out.csv = s.to_csv();
    out.json = s.to_json();
  } else {
    throw std::invalid_argument("unknown command: " + command);
  }
  return out;
}

}  // namespace obls
