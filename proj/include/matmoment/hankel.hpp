#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matmoment/errors.hpp"
#include "matmoment/matrix.hpp"
#include "matmoment/sequence.hpp"

namespace matmoment {

/// Block Hankel matrix assembled from a moment sequence.
///
/// Block (i,j), 0 <= i,j <= m, is S_{i+j+shift} for the plain forms (shift 0
/// gives H_m, 1 gives EH_m, 2 gives E^2 H_m) or S_{i+j+shift} - S_{i+j+shift+1}
/// for the difference forms ((I-E)H_m at shift 0, (E-E^2)H_m at shift 1).
/// Symmetry is automatic: equal-antidiagonal blocks of symmetric matrices.
class BlockHankel {
 public:
  BlockHankel(SymmetricMatrix data, Eigen::Index block_dim, int blocks_per_side, std::string label)
      : data_(std::move(data)),
        block_dim_(block_dim),
        blocks_per_side_(blocks_per_side),
        label_(std::move(label)) {}

  const SymmetricMatrix& matrix() const { return data_; }
  Eigen::Index block_dim() const { return block_dim_; }
  int blocks_per_side() const { return blocks_per_side_; }

  /// Human-readable name such as "H_2" or "(E-E^2)H_1", used in certificates.
  const std::string& label() const { return label_; }

 private:
  SymmetricMatrix data_;
  Eigen::Index block_dim_;
  int blocks_per_side_;
  std::string label_;
};

/// Builds H_m (shift 0), EH_m (shift 1) or E^2 H_m (shift 2).
inline BlockHankel build_hankel(const MatrixMomentSequence& seq, int m, int shift) {
  if (m < 0) throw InsufficientMomentsError("Hankel order m must be nonnegative");
  if (shift < 0 || shift > 2) throw DimensionMismatchError("shift must be 0, 1 or 2");
  const int needed = 2 * m + shift;
  if (needed > seq.order()) {
    throw InsufficientMomentsError("H_" + std::to_string(m) + " with shift " +
                                   std::to_string(shift) + " needs S_" + std::to_string(needed) +
                                   " but only S_" + std::to_string(seq.order()) + " is available");
  }
  const Eigen::Index p = seq.dim();
  Eigen::MatrixXd data(p * (m + 1), p * (m + 1));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      data.block(i * p, j * p, p, p) = seq.moment(i + j + shift).data();
    }
  }
  static const char* kNames[3] = {"H_", "EH_", "E^2H_"};
  return BlockHankel(SymmetricMatrix(data), p, m + 1, kNames[shift] + std::to_string(m));
}

/// Builds the difference form with block S_{i+j+shift} - S_{i+j+shift+1}:
/// shift 1 (default) is (E-E^2)H_m, shift 0 is (I-E)H_m.
inline BlockHankel build_difference_hankel(const MatrixMomentSequence& seq, int m, int shift = 1) {
  if (m < 0) throw InsufficientMomentsError("Hankel order m must be nonnegative");
  if (shift < 0 || shift > 1) throw DimensionMismatchError("difference shift must be 0 or 1");
  const int needed = 2 * m + shift + 1;
  if (needed > seq.order()) {
    throw InsufficientMomentsError("difference Hankel of order " + std::to_string(m) +
                                   " needs S_" + std::to_string(needed) + " but only S_" +
                                   std::to_string(seq.order()) + " is available");
  }
  const Eigen::Index p = seq.dim();
  Eigen::MatrixXd data(p * (m + 1), p * (m + 1));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      data.block(i * p, j * p, p, p) =
          seq.moment(i + j + shift).data() - seq.moment(i + j + shift + 1).data();
    }
  }
  const std::string label = (shift == 1 ? "(E-E^2)H_" : "(I-E)H_") + std::to_string(m);
  return BlockHankel(SymmetricMatrix(data), p, m + 1, label);
}

enum class ProblemKind { Hamburger, Stieltjes, Hausdorff };

inline const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Hamburger: return "hamburger";
    case ProblemKind::Stieltjes: return "stieltjes";
    case ProblemKind::Hausdorff: return "hausdorff";
  }
  return "unknown";
}

/// Eigenpair of the first Hankel matrix that failed a positivity test.
struct FailingCertificate {
  std::string matrix_name;
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
};

/// Decision for one truncated moment problem. A `true` verdict certifies the
/// truncated problem at the given order only; the full problem quantifies over
/// all Hankel orders. boundary_notes lists Hankel matrices that passed only
/// inside the tolerance band.
struct MomentVerdict {
  ProblemKind problem_kind = ProblemKind::Hamburger;
  int truncation_order = 0;
  bool satisfied = false;
  std::optional<FailingCertificate> failing_certificate;
  std::vector<std::string> boundary_notes;
};

namespace detail {

// Tests the given Hankel matrices in order; records the first failure.
inline MomentVerdict run_psd_battery(ProblemKind kind, int order,
                                     const std::vector<BlockHankel>& hankels,
                                     const Tolerance& tol) {
  MomentVerdict verdict;
  verdict.problem_kind = kind;
  verdict.truncation_order = order;
  verdict.satisfied = true;
  for (const auto& h : hankels) {
    const PsdResult r = is_psd(h.matrix(), tol);
    if (!r.psd) {
      verdict.satisfied = false;
      verdict.failing_certificate =
          FailingCertificate{h.label(), r.witness->eigenvalue, r.witness->eigenvector};
      break;
    }
    if (r.boundary) {
      verdict.boundary_notes.push_back(h.label() + " is PSD only at the tolerance boundary (min eigenvalue " +
                                       std::to_string(r.min_eigenvalue) + ")");
    }
  }
  return verdict;
}

}  // namespace detail

/// Hamburger test (support R): H_m >= 0 at the largest buildable order
/// m = floor(n/2). Smaller orders are leading principal submatrices and
/// therefore implied.
inline MomentVerdict check_hamburger(const MatrixMomentSequence& seq, const Tolerance& tol) {
  const int n = seq.order();
  const int m = n / 2;
  return detail::run_psd_battery(ProblemKind::Hamburger, n, {build_hankel(seq, m, 0)}, tol);
}

/// Stieltjes test (support [0,inf)): H_m and EH_{m'} at the largest buildable
/// orders. Needs at least S_0, S_1.
inline MomentVerdict check_stieltjes(const MatrixMomentSequence& seq, const Tolerance& tol) {
  const int n = seq.order();
  if (n < 1) {
    throw InsufficientMomentsError("Stieltjes test needs at least S_0 and S_1");
  }
  const int m = n / 2;
  const int m_shifted = (n - 1) / 2;
  return detail::run_psd_battery(
      ProblemKind::Stieltjes, n,
      {build_hankel(seq, m, 0), build_hankel(seq, m_shifted, 1)}, tol);
}

/// Hausdorff test (support [0,1]), split by truncation parity:
/// n = 2m:   H_m >= 0 and (E-E^2)H_{m-1} >= 0,
/// n = 2m+1: EH_m >= 0 and (I-E)H_m >= 0.
inline MomentVerdict check_hausdorff(const MatrixMomentSequence& seq, const Tolerance& tol) {
  const int n = seq.order();
  if (n < 1) {
    throw InsufficientMomentsError("Hausdorff test needs at least S_0 and S_1");
  }
  if (n % 2 == 0) {
    const int m = n / 2;  // n >= 2 here, so m - 1 >= 0
    return detail::run_psd_battery(
        ProblemKind::Hausdorff, n,
        {build_hankel(seq, m, 0), build_difference_hankel(seq, m - 1, 1)}, tol);
  }
  const int m = (n - 1) / 2;
  return detail::run_psd_battery(
      ProblemKind::Hausdorff, n,
      {build_hankel(seq, m, 1), build_difference_hankel(seq, m, 0)}, tol);
}

/// Riesz functional L_S(P) = sum_k Tr(A_k S_k) for P = sum_k A_k X^k.
inline double riesz_eval(const MatrixMomentSequence& seq,
                         const std::vector<SymmetricMatrix>& poly_coeffs) {
  if (poly_coeffs.empty()) return 0.0;
  const int degree = static_cast<int>(poly_coeffs.size()) - 1;
  if (degree > seq.order()) {
    throw DegreeTooHighError("polynomial degree " + std::to_string(degree) +
                             " exceeds truncation order " + std::to_string(seq.order()));
  }
  double value = 0.0;
  for (std::size_t k = 0; k < poly_coeffs.size(); ++k) {
    if (poly_coeffs[k].dim() != seq.dim()) {
      throw DimensionMismatchError("coefficient A_" + std::to_string(k) + " has dimension " +
                                   std::to_string(poly_coeffs[k].dim()) + ", sequence has " +
                                   std::to_string(seq.dim()));
    }
    value += (poly_coeffs[k].data() * seq.moment(k).data()).trace();
  }
  return value;
}

}  // namespace matmoment
