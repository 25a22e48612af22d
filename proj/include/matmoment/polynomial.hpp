#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "matmoment/errors.hpp"
#include "matmoment/matrix.hpp"

namespace matmoment {

/// Real univariate polynomial, coefficients stored in ascending degree.
///
/// The leading coefficient is nonzero except for the zero polynomial, which
/// is not representable here on purpose: a degree-0 instance is a nonzero
/// constant (the unit annihilator of the all-zero sequence).
class RealPolynomial {
 public:
  explicit RealPolynomial(std::vector<double> ascending_coeffs)
      : coeffs_(std::move(ascending_coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0] == 0.0)) {
      throw DimensionError("the zero polynomial has no degree");
    }
  }

  static RealPolynomial One() { return RealPolynomial({1.0}); }

  /// Monic product of (X - r) over the given real roots.
  static RealPolynomial FromRoots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r * c[i];
      }
      c = std::move(next);
    }
    return RealPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double leading() const { return coeffs_.back(); }
  bool is_monic() const { return coeffs_.back() == 1.0; }

  double operator()(double x) const {
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
    return v;
  }

  RealPolynomial monic() const {
    std::vector<double> c = coeffs_;
    const double lead = c.back();
    for (double& x : c) x /= lead;
    c.back() = 1.0;
    return RealPolynomial(std::move(c));
  }

  RealPolynomial operator*(const RealPolynomial& other) const {
    std::vector<double> c(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
        c[i + j] += coeffs_[i] * other.coeffs_[j];
      }
    }
    return RealPolynomial(std::move(c));
  }

 private:
  std::vector<double> coeffs_;
};

/// One clustered zero: representative value, cluster size, realness flag.
struct RootEntry {
  std::complex<double> value;
  int multiplicity = 1;
  bool is_real = false;
};

/// Zeros of a polynomial after clustering within root_eps.
class RootMultiset {
 public:
  explicit RootMultiset(std::vector<RootEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<RootEntry>& entries() const { return entries_; }

  int total_multiplicity() const {
    int t = 0;
    for (const auto& e : entries_) t += e.multiplicity;
    return t;
  }

  bool all_real() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const RootEntry& e) { return e.is_real; });
  }

  bool has_repeated() const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const RootEntry& e) { return e.multiplicity > 1; });
  }

  std::optional<RootEntry> first_complex() const {
    for (const auto& e : entries_) {
      if (!e.is_real) return e;
    }
    return std::nullopt;
  }

  std::optional<RootEntry> first_repeated() const {
    for (const auto& e : entries_) {
      if (e.multiplicity > 1) return e;
    }
    return std::nullopt;
  }

  /// Real representatives in increasing order (requires all_real()).
  std::vector<double> real_values_sorted() const {
    std::vector<double> v;
    for (const auto& e : entries_) v.push_back(e.value.real());
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::vector<RootEntry> entries_;
};

namespace detail {

/// Single-linkage clustering of complex points with radius eps.
/// Returns cluster assignment per point.
inline std::vector<int> cluster_points(const std::vector<std::complex<double>>& pts, double eps) {
  const std::size_t n = pts.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(pts[i] - pts[j]) <= eps) parent[find(int(i))] = find(int(j));
    }
  }
  std::vector<int> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = find(int(i));
  return label;
}

inline std::vector<RootEntry> cluster_roots(const std::vector<std::complex<double>>& raw,
                                            double eps) {
  const auto label = cluster_points(raw, eps);
  std::vector<RootEntry> entries;
  std::vector<int> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (std::find(seen.begin(), seen.end(), label[i]) != seen.end()) continue;
    seen.push_back(label[i]);
    std::complex<double> sum = 0.0;
    int count = 0;
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (label[j] == label[i]) {
        sum += raw[j];
        ++count;
      }
    }
    RootEntry e;
    e.value = sum / static_cast<double>(count);
    e.multiplicity = count;
    e.is_real = std::abs(e.value.imag()) <= eps;
    if (e.is_real) e.value = std::complex<double>(e.value.real(), 0.0);
    entries.push_back(e);
  }
  std::sort(entries.begin(), entries.end(), [](const RootEntry& a, const RootEntry& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return entries;
}

}  // namespace detail

/// All complex zeros via the eigenvalues of the balanced companion matrix,
/// clustered within root_eps; |imag| <= root_eps classifies a root as real.
inline RootMultiset roots(const RealPolynomial& poly, const Tolerance& tol) {
  if (poly.degree() < 1) {
    throw DimensionError("root extraction needs degree >= 1");
  }
  const RealPolynomial p = poly.monic();
  const int d = p.degree();
  const auto& c = p.coefficients();

  // Scale roots by s to balance coefficient magnitudes: q(Y) = P(sY) / s^d.
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    if (c[i] != 0.0) s = std::max(s, std::pow(std::abs(c[i]), 1.0 / (d - i)));
  }
  if (!std::isfinite(s) || s <= 0.0 || (s >= 0.5 && s <= 2.0)) s = 1.0;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d - 1; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[i] / std::pow(s, d - i);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailureError("companion eigen-solver did not converge (degree " +
                                  std::to_string(d) + ")");
  }
  std::vector<std::complex<double>> raw(d);
  for (int i = 0; i < d; ++i) raw[i] = s * solver.eigenvalues()(i);
  return RootMultiset(detail::cluster_roots(raw, tol.root_eps));
}

}  // namespace matmoment
