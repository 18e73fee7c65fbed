#include "obls/sampling.hpp"

#include <algorithm>
#include <sstream>

#include "obls/quadrature.hpp"

namespace obls {

std::string to_string(SampleMethod m) {
  switch (m) {
    case SampleMethod::MU: return "MU";
    case SampleMethod::RHO: return "RHO";
    case SampleMethod::BLS: return "BLS";
    case SampleMethod::CBLS: return "cBLS";
    case SampleMethod::SBLS: return "sBLS";
    case SampleMethod::BaselineGauss: return "baseline-gauss";
    case SampleMethod::BaselineLeja: return "baseline-leja";
    case SampleMethod::BaselineFekete: return "baseline-fekete";
    case SampleMethod::BaselineMagic: return "baseline-magic";
  }
  throw std::logic_error("unreachable");
}

SampleMethod sample_method_from_string(const std::string& name) {
  static const std::vector<SampleMethod> all = {
      SampleMethod::MU,            SampleMethod::RHO,          SampleMethod::BLS,
      SampleMethod::CBLS,          SampleMethod::SBLS,         SampleMethod::BaselineGauss,
      SampleMethod::BaselineLeja,  SampleMethod::BaselineFekete,
      SampleMethod::BaselineMagic};
  for (auto m : all)
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown sample method: " + name);
}

std::string SampleSet::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  for (int k = 0; k < dimension(); ++k) os << "x" << (k + 1) << ",";
  os << "weight\n";
  for (Eigen::Index i = 0; i < size(); ++i) {
    for (int k = 0; k < dimension(); ++k) os << points(i, k) << ",";
    os << weights[i] << "\n";
  }
  return os.str();
}

nlohmann::json SampleSet::to_json() const {
  nlohmann::json j;
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(size()));
  for (Eigen::Index i = 0; i < size(); ++i) {
    std::vector<double> row(points.row(i).begin(), points.row(i).end());
    pts.push_back(std::move(row));
  }
  j["points"] = pts;
  j["weights"] = std::vector<double>(weights.begin(), weights.end());
  j["method"] = to_string(method);
  nlohmann::json md;
  md["M"] = meta.M;
  md["delta"] = meta.delta;
  md["eta"] = meta.eta;
  md["seed"] = meta.seed;
  md["rejection_count"] = meta.rejection_count;
  md["removed_indices"] = meta.removed_indices;
  if (std::isfinite(meta.final_Z)) md["final_Z"] = meta.final_Z;
  j["metadata"] = md;
  return j;
}

SampleSet SampleSet::from_json(const nlohmann::json& j) {
  SampleSet s;
  const auto& pts = j.at("points");
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  if (n == 0) throw std::invalid_argument("SampleSet: empty points");
  const Eigen::Index d = static_cast<Eigen::Index>(pts[0].size());
  s.points.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < d; ++k) s.points(i, k) = pts[i][k].get<double>();
  const auto& w = j.at("weights");
  s.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s.weights[i] = w[i].get<double>();
  s.method = sample_method_from_string(j.at("method").get<std::string>());
  const auto& md = j.at("metadata");
  s.meta.M = md.at("M").get<int>();
  s.meta.delta = md.at("delta").get<double>();
  s.meta.eta = md.at("eta").get<double>();
  s.meta.seed = md.at("seed").get<std::uint64_t>();
  s.meta.rejection_count = md.at("rejection_count").get<int>();
  s.meta.removed_indices = md.at("removed_indices").get<std::vector<int>>();
  if (md.contains("final_Z")) s.meta.final_Z = md.at("final_Z").get<double>();
  return s;
}

double CdfTable::invert(double u) const {
  const auto* begin = cdf.data();
  const auto* it = std::upper_bound(begin, begin + cdf.size(), u);
  Eigen::Index i = std::max<Eigen::Index>(1, it - begin);
  i = std::min(i, cdf.size() - 1);
  const double c0 = cdf[i - 1], c1 = cdf[i];
  const double t = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
  return x[i - 1] + t * (x[i] - x[i - 1]);
}

namespace {

double mu_density(Measure measure, double x) {
  if (measure == Measure::UniformSymmetric) return (x >= -1.0 && x <= 1.0) ? 0.5 : 0.0;
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

void measure_support(Measure measure, int max_degree, double& a, double& b) {
  if (measure == Measure::UniformSymmetric) {
    a = -1.0;
    b = 1.0;
  } else {
    // cover the oscillatory region of the highest degree plus a safety band;
    // the density is negligible past the turning point sqrt(4k+2)
    b = std::max(12.0, std::sqrt(4.0 * max_degree + 2.0) + 6.0);
    a = -b;
  }
}

CdfTable build_cdf_from_values(const Eigen::VectorXd& x, const Eigen::VectorXd& f) {
  CdfTable t;
  t.x = x;
  const Eigen::Index n_points = x.size();
  const double a = x[0], b = x[n_points - 1];
  t.cdf.resize(n_points);
  t.cdf[0] = 0.0;
  const double h = (b - a) / double(n_points - 1);
  for (Eigen::Index i = 1; i < n_points; ++i)
    t.cdf[i] = t.cdf[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
  t.raw_mass = t.cdf[n_points - 1];
  if (!(t.raw_mass > 0.0))
    throw std::runtime_error("inverse-CDF grid: density mass is zero");
  t.max_cell_mass = 0.0;
  for (Eigen::Index i = 1; i < n_points; ++i)
    t.max_cell_mass = std::max(t.max_cell_mass, (t.cdf[i] - t.cdf[i - 1]) / t.raw_mass);
  t.cdf /= t.raw_mass;
  if (t.max_cell_mass > 5e-3)
    throw std::runtime_error("inverse-CDF grid too coarse: cell mass " +
                             std::to_string(t.max_cell_mass) + " exceeds tolerance 5e-3");
  return t;
}

template <typename F>
CdfTable build_cdf_table(F&& density, double a, double b, Eigen::Index n_points) {
  Eigen::VectorXd x, f(n_points);
  x.setLinSpaced(n_points, a, b);
  for (Eigen::Index i = 0; i < n_points; ++i) f[i] = density(x[i]);
  return build_cdf_from_values(x, f);
}

Eigen::Index grid_size(int max_degree) {
  return std::max<Eigen::Index>(8001, 1000L * max_degree + 1);
}

}  // namespace

OptimalDensity::OptimalDensity(BasisSpec spec) : spec_(std::move(spec)) {
  const int maxdeg = spec_.index_set().max_component();
  if (spec_.has_rotation() && spec_.dimension() > 1)
    throw std::invalid_argument(
        "OptimalDensity: multivariate rotated bases are unsupported; "
        "rotation is only handled for d = 1");
  if (!spec_.has_rotation()) {
    for (int k = 0; k < spec_.dimension(); ++k) {
      const Measure meas = spec_.measure(k);
      if (degree_tables_.count(meas)) continue;
      double a, b;
      measure_support(meas, maxdeg, a, b);
      const Eigen::Index n_points = grid_size(maxdeg);
      Eigen::VectorXd grid;
      grid.setLinSpaced(n_points, a, b);
      // one recurrence sweep per grid point covers every degree at once
      Eigen::MatrixXd dens(n_points, maxdeg + 1);
      std::vector<double> vals(static_cast<std::size_t>(maxdeg) + 1);
      for (Eigen::Index i = 0; i < n_points; ++i) {
        eval_orthonormal_1d(meas, maxdeg, grid[i], vals.data());
        const double md = mu_density(meas, grid[i]);
        for (int deg = 0; deg <= maxdeg; ++deg)
          dens(i, deg) = vals[static_cast<std::size_t>(deg)] * vals[static_cast<std::size_t>(deg)] * md;
      }
      std::vector<CdfTable> tabs;
      tabs.reserve(static_cast<std::size_t>(maxdeg) + 1);
      for (int deg = 0; deg <= maxdeg; ++deg)
        tabs.push_back(build_cdf_from_values(grid, dens.col(deg)));
      degree_tables_.emplace(meas, std::move(tabs));
    }
  }
  if (spec_.dimension() == 1) {
    double a, b;
    measure_support(spec_.measure(0), maxdeg, a, b);
    mixture_table_ = build_cdf_table(
        [&](double x) {
          Eigen::VectorXd pt(1);
          pt[0] = x;
          return density_wrt_mu(pt) * mu_density(spec_.measure(0), x);
        },
        a, b, grid_size(maxdeg));
    has_mixture_table_ = true;
  }
  // w^{-1} integrates to 1 against mu; the Gauss rule of order maxdeg+1 is exact here
  const TensorQuadrature tq = tensor_gauss_rule(spec_, maxdeg + 1);
  double mass = 0.0;
  for (Eigen::Index i = 0; i < tq.weights.size(); ++i)
    mass += tq.weights[i] * density_wrt_mu(tq.nodes.row(i).transpose());
  if (std::abs(mass - 1.0) > 1e-8)
    throw std::runtime_error("OptimalDensity: density does not integrate to 1 (got " +
                             std::to_string(mass) + ")");
}

double OptimalDensity::density_wrt_mu(const Eigen::VectorXd& x) const {
  return spec_.eval(x).squaredNorm() / double(spec_.size());
}

double OptimalDensity::weight(const Eigen::VectorXd& x) const {
  const double sq = spec_.eval(x).squaredNorm();
  if (sq <= 0.0) throw std::domain_error("OptimalDensity::weight: |phi(x)| = 0");
  return double(spec_.size()) / sq;
}

double OptimalDensity::weight1d(double x) const {
  Eigen::VectorXd pt(1);
  pt[0] = x;
  return weight(pt);
}

Eigen::VectorXd OptimalDensity::sample_univariate(std::mt19937_64& rng, Eigen::Index count,
                                                 UnivariateBackend backend,
                                                 const SliceOptions& slice) const {
  if (spec_.dimension() != 1)
    throw std::invalid_argument("sample_univariate: density is not one-dimensional");
  if (count < 1) throw std::invalid_argument("sample_univariate: count must be >= 1");
  Eigen::VectorXd out(count);
  if (backend == UnivariateBackend::GridInverseCdf) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Eigen::Index i = 0; i < count; ++i) out[i] = mixture_table_.invert(unif(rng));
    return out;
  }
  // slice sampling with step-out and shrinkage on the unnormalized target
  const auto target = [&](double x) {
    if (spec_.measure(0) == Measure::UniformSymmetric && (x < -1.0 || x > 1.0)) return 0.0;
    Eigen::VectorXd pt(1);
    pt[0] = x;
    return density_wrt_mu(pt) * mu_density(spec_.measure(0), x);
  };
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double x = 0.0;
  double fx = target(x);
  Eigen::Index kept = 0;
  long it = 0;
  while (kept < count) {
    const double y = unif(rng) * fx;
    double lo = x - slice.width * unif(rng);
    double hi = lo + slice.width;
    while (target(lo) > y) lo -= slice.width;
    while (target(hi) > y) hi += slice.width;
    double xp;
    for (;;) {
      xp = lo + unif(rng) * (hi - lo);
      if (target(xp) > y) break;
      (xp < x ? lo : hi) = xp;
    }
    x = xp;
    fx = target(x);
    ++it;
    if (it > slice.burn_in && (it - slice.burn_in) % std::max(1, slice.thin) == 0)
      out[kept++] = x;
  }
  return out;
}

Eigen::MatrixXd OptimalDensity::sample(std::mt19937_64& rng, Eigen::Index count) const {
  if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
  const int d = spec_.dimension();
  if (d == 1) return sample_univariate(rng, count);
  const auto& idx = spec_.index_set();
  std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd out(count, d);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto& mi = idx[pick(rng)];
    for (int k = 0; k < d; ++k) {
      const auto& tab = degree_tables_.at(spec_.measure(k))[static_cast<std::size_t>(mi[k])];
      out(i, k) = tab.invert(unif(rng));
    }
  }
  return out;
}

SampleSet OptimalDensity::draw_product_sample(std::mt19937_64& rng, Eigen::Index n) const {
  if (n < 1) throw std::invalid_argument("draw_product_sample: n must be >= 1");
  SampleSet s;
  s.method = SampleMethod::RHO;
  s.points = sample(rng, n);
  s.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s.weights[i] = weight(s.points.row(i).transpose());
  return s;
}

double draw_measure_1d(Measure measure, std::mt19937_64& rng) {
  if (measure == Measure::UniformSymmetric) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    return unif(rng);
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  return gauss(rng);
}

SampleSet mu_sample(const BasisSpec& spec, std::mt19937_64& rng, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("mu_sample: n must be >= 1");
  SampleSet s;
  s.method = SampleMethod::MU;
  s.points.resize(n, spec.dimension());
  for (Eigen::Index i = 0; i < n; ++i)
    for (int k = 0; k < spec.dimension(); ++k) s.points(i, k) = draw_measure_1d(spec.measure(k), rng);
  s.weights = Eigen::VectorXd::Ones(n);
  return s;
}

}  // namespace obls
