#include "obls/multi_index.hpp"

#include <algorithm>
#include <functional>

namespace obls {

MultiIndexSet::MultiIndexSet(int dimension, IndexRule rule, int degree,
                             std::vector<std::vector<int>> indices)
    : dimension_(dimension), rule_(rule), degree_(degree), indices_(std::move(indices)) {
  if (dimension_ < 1) throw std::invalid_argument("MultiIndexSet: dimension must be >= 1");
  if (indices_.empty()) throw std::invalid_argument("MultiIndexSet: empty index set");
  for (const auto& idx : indices_) {
    if (static_cast<int>(idx.size()) != dimension_)
      throw std::invalid_argument("MultiIndexSet: index dimension mismatch");
  }
  std::sort(indices_.begin(), indices_.end());
}

int MultiIndexSet::max_component() const {
  int mx = 0;
  for (const auto& idx : indices_)
    for (int c : idx) mx = std::max(mx, c);
  return mx;
}

bool MultiIndexSet::contains(const std::vector<int>& idx) const {
  return std::binary_search(indices_.begin(), indices_.end(), idx);
}

bool MultiIndexSet::is_downward_closed() const {
  for (const auto& idx : indices_) {
    for (int k = 0; k < dimension_; ++k) {
      if (idx[k] == 0) continue;
      auto lower = idx;
      --lower[k];
      if (!contains(lower)) return false;
    }
  }
  return true;
}

namespace {

bool admits(IndexRule rule, int degree, const std::vector<int>& idx) {
  if (rule == IndexRule::TotalDegree) {
    long s = 0;
    for (int c : idx) s += c;
    return s <= degree;
  }
  long prod = 1;
  for (int c : idx) {
    prod *= (c + 1);
    if (prod > degree + 1) return false;
  }
  return true;
}

}  // namespace

MultiIndexSet build_index_set(int dimension, IndexRule rule, int degree) {
  if (dimension < 1) throw std::invalid_argument("build_index_set: dimension must be >= 1");
  if (degree < 0) throw std::invalid_argument("build_index_set: degree must be >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(dimension, 0);
  // depth-first enumeration; both rules are coordinate-wise monotone so each
  // coordinate can be cut off as soon as the rule fails
  std::function<void(int)> rec = [&](int k) {
    if (k == dimension) {
      out.push_back(cur);
      return;
    }
    for (int c = 0;; ++c) {
      cur[k] = c;
      if (!admits(rule, degree, cur)) break;
      rec(k + 1);
    }
    cur[k] = 0;
  };
  rec(0);
  return MultiIndexSet(dimension, rule, degree, std::move(out));
}

std::string to_string(IndexRule rule) {
  return rule == IndexRule::TotalDegree ? "total_degree" : "hyperbolic_cross";
}

IndexRule index_rule_from_string(const std::string& name) {
  if (name == "total_degree") return IndexRule::TotalDegree;
  if (name == "hyperbolic_cross") return IndexRule::HyperbolicCross;
  throw std::invalid_argument("unknown index rule: " + name);
}

}  // namespace obls
