#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace obls {

/// Construction rule for a downward-closed multi-index set.
enum class IndexRule {
  TotalDegree,     ///< sum of components <= p
  HyperbolicCross  ///< prod (i_k + 1) <= p + 1
};

/// Finite set of d-dimensional multi-indices, lexicographically ordered.
class MultiIndexSet {
 public:
  MultiIndexSet(int dimension, IndexRule rule, int degree,
                std::vector<std::vector<int>> indices);

  int dimension() const { return dimension_; }
  IndexRule rule() const { return rule_; }
  int degree() const { return degree_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<std::vector<int>>& indices() const { return indices_; }
  const std::vector<int>& operator[](std::size_t j) const { return indices_[j]; }

  /// Largest component over all indices (max univariate degree needed).
  int max_component() const;
  bool is_downward_closed() const;
  bool contains(const std::vector<int>& idx) const;

 private:
  int dimension_;
  IndexRule rule_;
  int degree_;
  std::vector<std::vector<int>> indices_;
};

/// Builds the index set for the given rule, lexicographic ordering.
MultiIndexSet build_index_set(int dimension, IndexRule rule, int degree);

std::string to_string(IndexRule rule);
IndexRule index_rule_from_string(const std::string& name);

}  // namespace obls
