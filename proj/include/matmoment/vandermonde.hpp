#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "matmoment/errors.hpp"

namespace matmoment {

/// Solves the dual (moment-type) Vandermonde system
///   sum_i nodes[i]^j z[i] = b[j],  j = 0..k-1,
/// by Bjorck-Pereyra progressive elimination in O(k^2) flops. Exploiting the
/// Newton-basis factorization keeps the solve accurate far beyond what the
/// matrix condition number suggests when the nodes are ordered reasonably.
inline Eigen::VectorXd solve_dual_vandermonde(const std::vector<double>& nodes,
                                              Eigen::VectorXd b) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n < 0) throw DimensionError("Vandermonde solve needs at least one node");
  if (b.size() != n + 1) {
    throw DimensionMismatchError("right-hand side length " + std::to_string(b.size()) +
                                 " does not match node count " + std::to_string(n + 1));
  }
  for (int k = 0; k <= n - 1; ++k) {
    for (int i = n; i >= k + 1; --i) {
      b(i) -= nodes[k] * b(i - 1);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    for (int i = k + 1; i <= n; ++i) {
      const double gap = nodes[i] - nodes[i - k - 1];
      if (gap == 0.0) {
        throw DegenerateNodesError("coincident nodes at value " + std::to_string(nodes[i]));
      }
      b(i) /= gap;
    }
    for (int i = k; i <= n - 1; ++i) {
      b(i) -= b(i + 1);
    }
  }
  return b;
}

/// Gautschi-style upper bound on |V^{-1}|_inf for the Vandermonde matrix on
/// the given nodes: max_i prod_{j != i} (1 + |x_j|) / |x_i - x_j|.
inline double vandermonde_inverse_inf_bound(const std::vector<double>& nodes) {
  const std::size_t k = nodes.size();
  if (k <= 1) return 1.0;
  double bound = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const double gap = std::abs(nodes[i] - nodes[j]);
      if (gap == 0.0) return std::numeric_limits<double>::infinity();
      prod *= (1.0 + std::abs(nodes[j])) / gap;
    }
    bound = std::max(bound, prod);
  }
  return bound;
}

/// Exact |V|_inf for the same matrix (max absolute row sum of node powers).
inline double vandermonde_inf_norm(const std::vector<double>& nodes) {
  const std::size_t k = nodes.size();
  if (k == 0) return 0.0;
  double norm = 0.0;
  std::vector<double> pw(k, 1.0);
  for (std::size_t row = 0; row < k; ++row) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += std::abs(pw[j]);
    norm = std::max(norm, sum);
    for (std::size_t j = 0; j < k; ++j) pw[j] *= nodes[j];
  }
  return norm;
}

/// Condition estimate used to gate measure recovery.
inline double vandermonde_condition_bound(const std::vector<double>& nodes) {
  return vandermonde_inf_norm(nodes) * vandermonde_inverse_inf_bound(nodes);
}

}  // namespace matmoment
