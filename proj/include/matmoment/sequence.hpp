#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include "matmoment/errors.hpp"
#include "matmoment/matrix.hpp"

namespace matmoment {

/// Finite truncation S_0..S_n of a symmetric matrix moment sequence.
///
/// All moments share one dimension p; the truncation order n is length-1.
class MatrixMomentSequence {
 public:
  explicit MatrixMomentSequence(std::vector<SymmetricMatrix> moments)
      : moments_(std::move(moments)) {
    if (moments_.empty()) {
      throw InsufficientMomentsError("a moment sequence needs at least S_0");
    }
    const Eigen::Index p = moments_.front().dim();
    for (const auto& m : moments_) {
      if (m.dim() != p) {
        throw DimensionMismatchError("moment dimension " + std::to_string(m.dim()) +
                                     " differs from S_0 dimension " + std::to_string(p));
      }
    }
  }

  Eigen::Index dim() const { return moments_.front().dim(); }
  std::size_t length() const { return moments_.size(); }

  /// Highest available moment index n.
  int order() const { return static_cast<int>(moments_.size()) - 1; }

  const SymmetricMatrix& moment(std::size_t k) const { return moments_.at(k); }
  const std::vector<SymmetricMatrix>& moments() const { return moments_; }

  /// Scalar sequence of one fixed entry across all moments.
  std::vector<double> entry_sequence(Eigen::Index i, Eigen::Index j) const {
    std::vector<double> out;
    out.reserve(moments_.size());
    for (const auto& m : moments_) out.push_back(m(i, j));
    return out;
  }

  /// Largest |entry| across the whole truncation; scale for residual tests.
  double max_abs() const {
    double s = 0.0;
    for (const auto& m : moments_) s = std::max(s, m.max_abs());
    return s;
  }

 private:
  std::vector<SymmetricMatrix> moments_;
};

/// Square-but-not-necessarily-symmetric sequence ("raw" input mode). Only the
/// entrywise operations (minimal polynomial, measure recovery, reconstruction)
/// accept these; the Hankel positivity tests require symmetry.
using RawMomentSequence = std::vector<Eigen::MatrixXd>;

inline void validate_raw_sequence(const RawMomentSequence& seq) {
  if (seq.empty()) throw InsufficientMomentsError("a moment sequence needs at least S_0");
  const Eigen::Index p = seq.front().rows();
  for (const auto& m : seq) {
    if (m.rows() != m.cols()) {
      throw NonSquareError("raw moment is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
    }
    if (m.rows() != p) {
      throw DimensionMismatchError("raw moment dimension " + std::to_string(m.rows()) +
                                   " differs from S_0 dimension " + std::to_string(p));
    }
  }
}

inline double raw_sequence_max_abs(const RawMomentSequence& seq) {
  double s = 0.0;
  for (const auto& m : seq) {
    if (m.size() > 0) s = std::max(s, m.cwiseAbs().maxCoeff());
  }
  return s;
}

}  // namespace matmoment
