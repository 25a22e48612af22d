#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>
#include <utility>

#include "matmoment/errors.hpp"

namespace matmoment {

/// Numerical thresholds shared by every decision procedure.
///
/// All three are relative: they multiply a scale derived from the data
/// (matrix norm, coefficient mass, sequence magnitude), never raw machine
/// epsilon. psd_eps floors eigenvalue sign tests, root_eps is the clustering
/// radius for polynomial zeros, residual_eps bounds recurrence and
/// reconstruction defects.
struct Tolerance {
  double psd_eps = 1e-9;
  double root_eps = 1e-7;
  double residual_eps = 1e-8;
};

/// Real symmetric matrix, the atom of every moment sequence.
///
/// Construction always symmetrizes, (raw + raw^T)/2, and records the largest
/// entrywise asymmetry of the input so callers can gate on it. Instances are
/// immutable and safe to share across threads.
class SymmetricMatrix {
 public:
  /// Symmetrizes an arbitrary square matrix.
  explicit SymmetricMatrix(const Eigen::MatrixXd& raw) {
    if (raw.rows() != raw.cols()) {
      throw NonSquareError("matrix is " + std::to_string(raw.rows()) + "x" +
                           std::to_string(raw.cols()));
    }
    if (raw.rows() < 1) {
      throw DimensionError("matrix dimension must be at least 1");
    }
    asymmetry_defect_ = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    data_ = 0.5 * (raw + raw.transpose());
  }

  static SymmetricMatrix Identity(Eigen::Index p) {
    return SymmetricMatrix(Eigen::MatrixXd::Identity(p, p));
  }

  static SymmetricMatrix Zero(Eigen::Index p) {
    return SymmetricMatrix(Eigen::MatrixXd::Zero(p, p));
  }

  /// Strict form used for symmetric-mode ingestion: rejects inputs whose
  /// asymmetry defect exceeds residual_eps * max(1, |raw|_inf).
  static SymmetricMatrix Checked(const Eigen::MatrixXd& raw, const Tolerance& tol) {
    SymmetricMatrix m(raw);
    const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
    const double threshold = tol.residual_eps * scale;
    if (m.asymmetry_defect() > threshold) {
      throw AsymmetricInputError(m.asymmetry_defect(), threshold);
    }
    return m;
  }

  Eigen::Index dim() const { return data_.rows(); }
  const Eigen::MatrixXd& data() const { return data_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }
  double asymmetry_defect() const { return asymmetry_defect_; }

  /// Induced infinity norm (max absolute row sum).
  double inf_norm() const {
    return data_.rows() == 0 ? 0.0 : data_.cwiseAbs().rowwise().sum().maxCoeff();
  }

  /// Largest absolute entry.
  double max_abs() const { return data_.cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXd data_;
  double asymmetry_defect_ = 0.0;
};

inline SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix(a.data() + b.data());
}

inline SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix(a.data() - b.data());
}

inline SymmetricMatrix operator*(double c, const SymmetricMatrix& m) {
  return SymmetricMatrix(c * m.data());
}

/// Averages a raw square matrix into its symmetric part.
inline SymmetricMatrix symmetrize(const Eigen::MatrixXd& raw) { return SymmetricMatrix(raw); }

namespace detail {

inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_symmetric_eigen(
    const SymmetricMatrix& m, bool with_vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(m.data(), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailureError("symmetric eigen-solver did not converge (dim " +
                                  std::to_string(m.dim()) + ")");
  }
  return solver;
}

}  // namespace detail

/// Smallest eigenvalue of a symmetric matrix.
inline double min_eigenvalue(const SymmetricMatrix& m) {
  return detail::solve_symmetric_eigen(m, /*with_vectors=*/false).eigenvalues()(0);
}

/// Eigenpair certifying a failed positivity test.
struct PsdWitness {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
};

/// Outcome of a tolerance-controlled positive semi-definiteness test.
///
/// `boundary` marks matrices whose smallest eigenvalue is negative but inside
/// the tolerance band (exactly singular weights land here).
struct PsdResult {
  bool psd = false;
  bool boundary = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  std::optional<PsdWitness> witness;

  explicit operator bool() const { return psd; }
};

/// Tests M >= 0 against the relative threshold -psd_eps * max(1, |M|_inf).
inline PsdResult is_psd(const SymmetricMatrix& m, const Tolerance& tol) {
  const auto solver = detail::solve_symmetric_eigen(m, /*with_vectors=*/true);
  PsdResult result;
  result.min_eigenvalue = solver.eigenvalues()(0);
  result.threshold = -tol.psd_eps * std::max(1.0, m.inf_norm());
  result.psd = result.min_eigenvalue >= result.threshold;
  result.boundary = result.psd && result.min_eigenvalue < 0.0;
  if (!result.psd) {
    result.witness = PsdWitness{result.min_eigenvalue, solver.eigenvectors().col(0)};
  }
  return result;
}

}  // namespace matmoment
