#pragma once

// Deterministic random generators shared by the property suites.

#include <Eigen/Core>
#include <Eigen/QR>

#include <algorithm>
#include <random>
#include <vector>

#include "matmoment/matrix.hpp"

namespace matmoment::testgen {

using Rng = std::mt19937_64;

inline Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index p, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::MatrixXd m(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) m(i, j) = dist(rng);
  }
  return m;
}

inline SymmetricMatrix random_symmetric(Rng& rng, Eigen::Index p, double scale = 1.0) {
  return SymmetricMatrix(random_matrix(rng, p, scale));
}

/// Gram matrix A^T A, optionally rank deficient (exactly singular).
inline SymmetricMatrix random_psd(Rng& rng, Eigen::Index p, double scale = 1.0, int rank = -1) {
  const Eigen::Index r = rank < 0 ? p : std::max<Eigen::Index>(1, std::min<Eigen::Index>(rank, p));
  Eigen::MatrixXd a(r, p);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) a(i, j) = dist(rng);
  }
  return SymmetricMatrix(a.transpose() * a);
}

/// Random orthogonal matrix via QR of a Gaussian draw.
inline Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index p) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) g(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ();
}

/// Symmetric matrix with a prescribed spectrum.
inline SymmetricMatrix symmetric_with_spectrum(Rng& rng, const std::vector<double>& eigenvalues) {
  const Eigen::Index p = static_cast<Eigen::Index>(eigenvalues.size());
  const Eigen::MatrixXd q = random_orthogonal(rng, p);
  Eigen::VectorXd d(p);
  for (Eigen::Index i = 0; i < p; ++i) d(i) = eigenvalues[static_cast<std::size_t>(i)];
  return SymmetricMatrix(q * d.asDiagonal() * q.transpose());
}

/// k distinct nodes in [lo, hi] with pairwise separation of at least min_gap.
inline std::vector<double> random_nodes(Rng& rng, int k, double lo, double hi,
                                        double min_gap = 0.1) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> nodes;
  while (static_cast<int>(nodes.size()) < k) {
    const double candidate = dist(rng);
    bool separated = true;
    for (double existing : nodes) {
      if (std::abs(candidate - existing) < min_gap) {
        separated = false;
        break;
      }
    }
    if (separated) nodes.push_back(candidate);
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace matmoment::testgen
