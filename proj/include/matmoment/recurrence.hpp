#pragma once

#include <Eigen/Core>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "matmoment/errors.hpp"
#include "matmoment/matrix.hpp"
#include "matmoment/polynomial.hpp"
#include "matmoment/sequence.hpp"

namespace matmoment {

/// Linear recurrence S_{n+1} = a_0 S_n + a_1 S_{n-1} + ... + a_{r-1} S_{n-r+1}
/// of order r with real coefficients and r symmetric initial matrices.
class RecurrenceSpec {
 public:
  RecurrenceSpec(std::vector<double> coeffs, std::vector<SymmetricMatrix> initials)
      : coeffs_(std::move(coeffs)), initials_(std::move(initials)) {
    if (coeffs_.empty()) throw SchemaError("recurrence order must be at least 1");
    if (coeffs_.back() == 0.0) {
      throw SchemaError("the trailing recurrence coefficient a_{r-1} must be nonzero");
    }
    if (initials_.size() != coeffs_.size()) {
      throw SchemaError("a recurrence of order " + std::to_string(coeffs_.size()) + " needs " +
                        std::to_string(coeffs_.size()) + " initial matrices, got " +
                        std::to_string(initials_.size()));
    }
    const Eigen::Index p = initials_.front().dim();
    for (const auto& m : initials_) {
      if (m.dim() != p) throw DimensionMismatchError("initial matrices have mixed dimensions");
    }
  }

  int order() const { return static_cast<int>(coeffs_.size()); }
  Eigen::Index dim() const { return initials_.front().dim(); }
  const std::vector<double>& coefficients() const { return coeffs_; }
  const std::vector<SymmetricMatrix>& initials() const { return initials_; }

  /// Q(X) = X^r - a_0 X^{r-1} - ... - a_{r-1}, the defining annihilator.
  RealPolynomial characteristic_polynomial() const {
    const int r = order();
    std::vector<double> c(r + 1, 0.0);
    c[r] = 1.0;
    for (int i = 0; i < r; ++i) c[r - 1 - i] = -coeffs_[i];
    return RealPolynomial(std::move(c));
  }

 private:
  std::vector<double> coeffs_;
  std::vector<SymmetricMatrix> initials_;
};

/// Runs the recurrence forward on raw square matrices.
inline RawMomentSequence extend_raw(const std::vector<double>& coeffs,
                                    const RawMomentSequence& initials, int n) {
  const int r = static_cast<int>(coeffs.size());
  if (n < r - 1) {
    throw InsufficientMomentsError("cannot truncate below the initial data (n >= r-1)");
  }
  validate_raw_sequence(initials);
  RawMomentSequence seq(initials.begin(), initials.end());
  seq.reserve(n + 1);
  for (int k = r - 1; k < n; ++k) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(seq[0].rows(), seq[0].cols());
    for (int j = 0; j < r; ++j) next += coeffs[j] * seq[k - j];
    seq.push_back(std::move(next));
  }
  return seq;
}

/// Extends a recurrence to the truncation S_0..S_n.
inline MatrixMomentSequence extend(const RecurrenceSpec& spec, int n) {
  RawMomentSequence raw;
  raw.reserve(spec.order());
  for (const auto& m : spec.initials()) raw.push_back(m.data());
  const RawMomentSequence full = extend_raw(spec.coefficients(), raw, n);
  std::vector<SymmetricMatrix> sym;
  sym.reserve(full.size());
  for (const auto& m : full) sym.emplace_back(m);
  return MatrixMomentSequence(std::move(sym));
}

namespace detail {

// Term accessors shared by the symmetric and raw code paths.
inline const Eigen::MatrixXd& term(const MatrixMomentSequence& seq, std::size_t k) {
  return seq.moment(k).data();
}
inline const Eigen::MatrixXd& term(const RawMomentSequence& seq, std::size_t k) {
  return seq[k];
}
inline const Eigen::MatrixXd& term(const std::vector<SymmetricMatrix>& seq, std::size_t k) {
  return seq[k].data();
}
inline std::size_t term_count(const MatrixMomentSequence& seq) { return seq.length(); }
inline std::size_t term_count(const RawMomentSequence& seq) { return seq.size(); }
inline std::size_t term_count(const std::vector<SymmetricMatrix>& seq) { return seq.size(); }
inline double scale_of(const MatrixMomentSequence& seq) { return seq.max_abs(); }
inline double scale_of(const RawMomentSequence& seq) { return raw_sequence_max_abs(seq); }

template <typename Seq>
bool is_characteristic_impl(const Seq& seq, const RealPolynomial& q, const Tolerance& tol) {
  const int d = q.degree();
  const std::size_t length = term_count(seq);
  if (length < static_cast<std::size_t>(2 * d)) {
    throw InsufficientTermsError("testing a degree-" + std::to_string(d) +
                                 " annihilator needs at least " + std::to_string(2 * d) +
                                 " terms, got " + std::to_string(length));
  }
  double coeff_mass = 0.0;
  for (double c : q.coefficients()) coeff_mass += std::abs(c);
  const auto& c = q.coefficients();
  const Eigen::Index p = term(seq, 0).rows();
  // Each window is judged at its own magnitude; exponentially growing data
  // would otherwise drown the early terms under a global scale.
  for (std::size_t k = 0; k + d < length; ++k) {
    Eigen::MatrixXd residual = Eigen::MatrixXd::Zero(p, p);
    double window = 0.0;
    for (int i = 0; i <= d; ++i) {
      residual += c[i] * term(seq, k + i);
      window = std::max(window, term(seq, k + i).cwiseAbs().maxCoeff());
    }
    const double threshold = tol.residual_eps * std::max(1e-300, coeff_mass * window);
    if (residual.cwiseAbs().maxCoeff() > threshold) return false;
  }
  return true;
}

}  // namespace detail

/// Does Q annihilate the sequence under the shift, i.e. is Q a characteristic
/// polynomial? True iff every window residual |sum_i q_i S_{k+i}|_inf stays
/// within residual_eps times the data scale.
inline bool is_characteristic(const MatrixMomentSequence& seq, const RealPolynomial& q,
                              const Tolerance& tol) {
  return detail::is_characteristic_impl(seq, q, tol);
}

inline bool is_characteristic(const RawMomentSequence& seq, const RealPolynomial& q,
                              const Tolerance& tol) {
  validate_raw_sequence(seq);
  return detail::is_characteristic_impl(seq, q, tol);
}

/// Shortest monic annihilator of one scalar sequence.
///
/// Scans candidate degrees d = 1, 2, ... and solves the least-squares Hankel
/// nullspace at each; the first d whose residual falls within
/// residual_eps * max|s| wins. The all-zero sequence returns the constant 1.
inline RealPolynomial entry_minimal_polynomial(const std::vector<double>& data,
                                               const Tolerance& tol) {
  const int length = static_cast<int>(data.size());
  double scale = 0.0;
  for (double v : data) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return RealPolynomial::One();

  const int d_max = length / 2;
  for (int d = 1; d <= d_max; ++d) {
    const int rows = length - d;
    Eigen::MatrixXd a(rows, d);
    Eigen::VectorXd b(rows);
    // Row equilibration: each window equation is scaled to its own
    // magnitude, so the fit carries uniform relative accuracy even when the
    // sequence grows exponentially.
    for (int k = 0; k < rows; ++k) {
      double window = 0.0;
      for (int i = 0; i <= d; ++i) window = std::max(window, std::abs(data[k + i]));
      const double row_scale = 1.0 / std::max(window, 1e-300);
      for (int i = 0; i < d; ++i) a(k, i) = data[k + i] * row_scale;
      b(k) = data[k + d] * row_scale;
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    const double residual = (a * c - b).cwiseAbs().maxCoeff();
    if (residual <= tol.residual_eps) {
      std::vector<double> coeffs(d + 1);
      for (int i = 0; i < d; ++i) coeffs[i] = -c(i);
      coeffs[d] = 1.0;
      return RealPolynomial(std::move(coeffs));
    }
  }
  throw NoRecurrenceFoundError("no linear recurrence of order up to " + std::to_string(d_max) +
                               " fits within tolerance");
}

namespace detail {

struct TaggedRoot {
  std::complex<double> value;
  int multiplicity;
  int source;  // flat entry index i*p + j
};

// lcm on clustered root multisets: union with per-source max multiplicity.
inline std::vector<RootEntry> merge_root_multisets(const std::vector<TaggedRoot>& tagged,
                                                   double eps) {
  std::vector<std::complex<double>> pts;
  pts.reserve(tagged.size());
  for (const auto& t : tagged) pts.push_back(t.value);
  const std::vector<int> label = cluster_points(pts, eps);

  std::vector<int> labels_seen;
  std::vector<RootEntry> merged;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (std::find(labels_seen.begin(), labels_seen.end(), label[i]) != labels_seen.end()) continue;
    labels_seen.push_back(label[i]);

    std::complex<double> lo = tagged[i].value, hi = tagged[i].value;
    std::complex<double> weighted_sum = 0.0;
    int total = 0;
    std::map<int, int> per_source;
    for (std::size_t j = 0; j < tagged.size(); ++j) {
      if (label[j] != label[i]) continue;
      per_source[tagged[j].source] += tagged[j].multiplicity;
      weighted_sum += tagged[j].value * static_cast<double>(tagged[j].multiplicity);
      total += tagged[j].multiplicity;
      lo = {std::min(lo.real(), tagged[j].value.real()), std::min(lo.imag(), tagged[j].value.imag())};
      hi = {std::max(hi.real(), tagged[j].value.real()), std::max(hi.imag(), tagged[j].value.imag())};
    }
    // A sprawling cluster means the entrywise roots do not line up.
    if (std::abs(hi - lo) > 10.0 * eps) {
      throw InconsistentRootsError("entry root cluster spans " + std::to_string(std::abs(hi - lo)) +
                                   ", beyond the clustering radius");
    }
    RootEntry e;
    e.value = weighted_sum / static_cast<double>(total);
    e.multiplicity = 0;
    for (const auto& [src, mult] : per_source) e.multiplicity = std::max(e.multiplicity, mult);
    e.is_real = std::abs(e.value.imag()) <= eps;
    if (e.is_real) e.value = {e.value.real(), 0.0};
    merged.push_back(e);
  }
  std::sort(merged.begin(), merged.end(), [](const RootEntry& a, const RootEntry& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return merged;
}

// Expands a clustered multiset back to real coefficients. Complex roots must
// pair with their conjugates; pairs expand as X^2 - 2 Re X + |v|^2.
inline RealPolynomial expand_roots(const std::vector<RootEntry>& entries, double eps) {
  RealPolynomial poly = RealPolynomial::One();
  std::vector<bool> used(entries.size(), false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (used[i]) continue;
    const auto& e = entries[i];
    if (e.is_real) {
      for (int m = 0; m < e.multiplicity; ++m) {
        poly = poly * RealPolynomial({-e.value.real(), 1.0});
      }
      used[i] = true;
      continue;
    }
    // Locate the conjugate partner.
    std::size_t partner = entries.size();
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (j == i || used[j] || entries[j].is_real) continue;
      if (std::abs(entries[j].value - std::conj(e.value)) <= 2.0 * eps) {
        partner = j;
        break;
      }
    }
    if (partner == entries.size()) {
      throw InconsistentRootsError("complex root without a conjugate partner");
    }
    const int mult = std::max(e.multiplicity, entries[partner].multiplicity);
    const double re = 0.5 * (e.value.real() + entries[partner].value.real());
    const double sq = 0.5 * (std::norm(e.value) + std::norm(entries[partner].value));
    for (int m = 0; m < mult; ++m) {
      poly = poly * RealPolynomial({sq, -2.0 * re, 1.0});
    }
    used[i] = used[partner] = true;
  }
  return poly;
}

template <typename Seq>
RealPolynomial minimal_polynomial_impl(const Seq& seq, const Tolerance& tol) {
  const Eigen::Index p = term(seq, 0).rows();
  const std::size_t length = term_count(seq);

  std::vector<TaggedRoot> tagged;
  bool any_nonzero = false;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      std::vector<double> entry(length);
      for (std::size_t k = 0; k < length; ++k) entry[k] = term(seq, k)(i, j);
      const RealPolynomial pij = entry_minimal_polynomial(entry, tol);
      if (pij.degree() == 0) continue;
      any_nonzero = true;
      const RootMultiset rm = roots(pij, tol);
      for (const auto& e : rm.entries()) {
        tagged.push_back({e.value, e.multiplicity, static_cast<int>(i * p + j)});
      }
    }
  }
  if (!any_nonzero) return RealPolynomial::One();
  return expand_roots(merge_root_multisets(tagged, tol.root_eps), tol.root_eps);
}

}  // namespace detail

/// Minimal polynomial of a matrix sequence: the lcm of the p^2 entrywise
/// minimal polynomials, computed on clustered root multisets (union with
/// maximum multiplicity) and re-expanded to coefficients.
inline RealPolynomial minimal_polynomial(const MatrixMomentSequence& seq, const Tolerance& tol) {
  return detail::minimal_polynomial_impl(seq, tol);
}

inline RealPolynomial minimal_polynomial(const RawMomentSequence& seq, const Tolerance& tol) {
  validate_raw_sequence(seq);
  return detail::minimal_polynomial_impl(seq, tol);
}

}  // namespace matmoment
