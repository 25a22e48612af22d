#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "oracle.hpp"
#include "matmoment/recurrence.hpp"

using namespace matmoment;

namespace {

RecurrenceSpec scalar_spec(std::vector<double> coeffs, std::vector<double> initials) {
  std::vector<SymmetricMatrix> mats;
  for (double v : initials) {
    Eigen::MatrixXd m(1, 1);
    m << v;
    mats.emplace_back(m);
  }
  return RecurrenceSpec(std::move(coeffs), std::move(mats));
}

std::vector<double> scalar_values(const MatrixMomentSequence& seq) {
  return seq.entry_sequence(0, 0);
}

// S_n = (n+1) M with M the all-ones 2x2 matrix.
MatrixMomentSequence arithmetic_rank_one_sequence(int n) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 1, 1;
  std::vector<SymmetricMatrix> moments;
  for (int k = 0; k <= n; ++k) moments.emplace_back((k + 1.0) * m);
  return MatrixMomentSequence(std::move(moments));
}

RecurrenceSpec tridiagonal_order3_spec() {
  Eigen::MatrixXd s1(3, 3), s2(3, 3);
  s1 << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  s2 << 5, -4, 1, -4, 6, -4, 1, -4, 5;
  return RecurrenceSpec({6.0, -10.0, 4.0},
                        {SymmetricMatrix::Identity(3), SymmetricMatrix(s1), SymmetricMatrix(s2)});
}

}  // namespace

TEST(RecurrenceSpec, ValidatesTrailingCoefficient) {
  EXPECT_THROW(scalar_spec({1.0, 0.0}, {1.0, 2.0}), SchemaError);
  EXPECT_THROW(scalar_spec({1.0, 2.0}, {1.0}), SchemaError);
}

TEST(Extend, ScalarBinetDoubling) {
  // s_{n+1} = s_n + 2 s_{n-1} from (1, 2); the Binet form collapses to 2^n.
  const MatrixMomentSequence seq = extend(scalar_spec({1.0, 2.0}, {1.0, 2.0}), 4);
  const std::vector<double> expected{1, 2, 4, 8, 16};
  const std::vector<double> got = scalar_values(seq);
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_DOUBLE_EQ(got[i], expected[i]);
  EXPECT_EQ(oracle::oracle_scalar_recurrence(got, {1.0, 2.0}), 0.0);
}

TEST(Extend, TridiagonalOrder3FirstEntry) {
  const MatrixMomentSequence seq = extend(tridiagonal_order3_spec(), 3);
  // S_3 = 6 S_2 - 10 S_1 + 4 S_0, top-left entry 30 - 20 + 4.
  EXPECT_DOUBLE_EQ(seq.moment(3)(0, 0), 14.0);
}

TEST(Extend, ZeroInitialsStayZero) {
  const MatrixMomentSequence seq =
      extend(RecurrenceSpec({2.0, -3.0}, {SymmetricMatrix::Zero(2), SymmetricMatrix::Zero(2)}), 6);
  EXPECT_EQ(seq.max_abs(), 0.0);
}

TEST(IsCharacteristic, ArithmeticRankOneFamily) {
  const Tolerance tol;
  const MatrixMomentSequence seq = arithmetic_rank_one_sequence(9);
  EXPECT_TRUE(is_characteristic(seq, RealPolynomial({1.0, -1.0, -1.0, 1.0}), tol));
  EXPECT_TRUE(is_characteristic(seq, RealPolynomial({1.0, -2.0, 1.0}), tol));
  EXPECT_FALSE(is_characteristic(seq, RealPolynomial({-1.0, 1.0}), tol));
}

TEST(IsCharacteristic, NeedsEnoughTerms) {
  const Tolerance tol;
  const MatrixMomentSequence seq = arithmetic_rank_one_sequence(2);
  EXPECT_THROW(is_characteristic(seq, RealPolynomial({1.0, -2.0, 1.0}), tol),
               InsufficientTermsError);
}

TEST(EntryMinimalPolynomial, ArithmeticProgression) {
  const Tolerance tol;
  const RealPolynomial p = entry_minimal_polynomial({1, 2, 3, 4, 5, 6}, tol);
  ASSERT_EQ(p.degree(), 2);
  EXPECT_NEAR(p.coefficients()[0], 1.0, 1e-9);
  EXPECT_NEAR(p.coefficients()[1], -2.0, 1e-9);
  EXPECT_DOUBLE_EQ(p.coefficients()[2], 1.0);
}

TEST(EntryMinimalPolynomial, ConstantSequence) {
  const Tolerance tol;
  const RealPolynomial p = entry_minimal_polynomial({1, 1, 1, 1}, tol);
  ASSERT_EQ(p.degree(), 1);
  EXPECT_NEAR(p.coefficients()[0], -1.0, 1e-12);
}

TEST(EntryMinimalPolynomial, RecoveredRecurrenceRegeneratesData) {
  const Tolerance tol;
  const std::vector<double> data{2, 1, 5, 7, 17, 31};
  const RealPolynomial p = entry_minimal_polynomial(data, tol);
  ASSERT_EQ(p.degree(), 2);
  EXPECT_NEAR(p.coefficients()[0], -2.0, 1e-9);
  EXPECT_NEAR(p.coefficients()[1], -1.0, 1e-9);
  // Independent check: rerun the recurrence the polynomial encodes.
  const std::vector<double> rec{-p.coefficients()[1], -p.coefficients()[0]};
  EXPECT_LE(oracle::oracle_scalar_recurrence(data, rec), 1e-9);
}

TEST(EntryMinimalPolynomial, ZeroSequenceIsUnitPolynomial) {
  const Tolerance tol;
  EXPECT_EQ(entry_minimal_polynomial({0, 0, 0, 0}, tol).degree(), 0);
}

TEST(EntryMinimalPolynomial, NonRecurrentDataRejected) {
  const Tolerance tol;
  EXPECT_THROW(entry_minimal_polynomial({1, 0, 0, 1}, tol), NoRecurrenceFoundError);
}

TEST(MinimalPolynomial, ArithmeticRankOneIsDoubleRootAtOne) {
  const Tolerance tol;
  const RealPolynomial p = minimal_polynomial(arithmetic_rank_one_sequence(7), tol);
  ASSERT_EQ(p.degree(), 2);
  EXPECT_NEAR(p.coefficients()[0], 1.0, 1e-7);
  EXPECT_NEAR(p.coefficients()[1], -2.0, 1e-7);
}

TEST(MinimalPolynomial, MatrixPowersRawMode) {
  const Tolerance tol;
  Eigen::MatrixXd a(2, 2);
  a << 5, -3, 6, -4;
  RawMomentSequence seq{Eigen::MatrixXd::Identity(2, 2), a};
  seq = extend_raw({1.0, 2.0}, seq, 7);  // Cayley-Hamilton: A^2 = A + 2I
  const RealPolynomial p = minimal_polynomial(seq, tol);
  ASSERT_EQ(p.degree(), 2);
  EXPECT_NEAR(p.coefficients()[0], -2.0, 1e-8);
  EXPECT_NEAR(p.coefficients()[1], -1.0, 1e-8);
}

TEST(MinimalPolynomial, DiagonalPowersLcm) {
  const Tolerance tol;
  std::vector<SymmetricMatrix> moments;
  for (int n = 0; n < 8; ++n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = std::pow(2.0, n);
    m(1, 1) = std::pow(3.0, n);
    moments.emplace_back(m);
  }
  const RealPolynomial p = minimal_polynomial(MatrixMomentSequence(std::move(moments)), tol);
  ASSERT_EQ(p.degree(), 2);
  // (X-2)(X-3) = X^2 - 5X + 6
  EXPECT_NEAR(p.coefficients()[0], 6.0, 1e-7);
  EXPECT_NEAR(p.coefficients()[1], -5.0, 1e-7);
}

TEST(MinimalPolynomial, ChainedEntryRootsAreInconsistent) {
  // Sixteen entrywise geometric sequences whose ratios step by 9e-8: each
  // adjacent pair clusters, the chained cluster spans more than ten
  // clustering radii, and no single root can represent it.
  const Tolerance tol;
  RawMomentSequence seq;
  for (int n = 0; n < 8; ++n) {
    Eigen::MatrixXd m(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        m(i, j) = std::pow(1.0 + (4 * i + j) * 9e-8, n);
      }
    }
    seq.push_back(m);
  }
  EXPECT_THROW(minimal_polynomial(seq, tol), InconsistentRootsError);
}

TEST(MinimalPolynomial, AllZeroSequenceIsUnitPolynomial) {
  const Tolerance tol;
  std::vector<SymmetricMatrix> moments(6, SymmetricMatrix::Zero(2));
  EXPECT_EQ(minimal_polynomial(MatrixMomentSequence(moments), tol).degree(), 0);
}

TEST(MinimalPolynomial, ComplexConjugateRootsExpandToRealCoefficients) {
  const Tolerance tol;
  // s_{n+2} = -s_n has annihilator X^2 + 1.
  const MatrixMomentSequence seq = extend(scalar_spec({0.0, -1.0}, {1.0, 0.0}), 7);
  const RealPolynomial p = minimal_polynomial(seq, tol);
  ASSERT_EQ(p.degree(), 2);
  EXPECT_NEAR(p.coefficients()[0], 1.0, 1e-9);
  EXPECT_NEAR(p.coefficients()[1], 0.0, 1e-9);
}

TEST(RecurrenceProperties, MultiplesOfTheMinimalPolynomialAnnihilate) {
  const Tolerance tol;
  testgen::Rng rng(10001);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + (trial % 3);
    const Eigen::Index p = 1 + (trial % 3);
    const std::vector<double> nodes = testgen::random_nodes(rng, r, -2.0, 2.0, 0.3);
    std::vector<SymmetricMatrix> weights;
    for (int i = 0; i < r; ++i) weights.push_back(testgen::random_symmetric(rng, p, 1.5));
    const oracle::OracleMeasureSpec spec(nodes, weights, {-10.0, 10.0});

    const int g_deg = trial % 4;
    const std::vector<double> g_roots = testgen::random_nodes(rng, g_deg, -1.5, 1.5, 0.1);
    const MatrixMomentSequence seq = oracle::oracle_moments(spec, 2 * (r + g_deg) + 2);

    const RealPolynomial p_s = minimal_polynomial(seq, tol);
    const RealPolynomial multiple = p_s * RealPolynomial::FromRoots(g_roots);
    EXPECT_TRUE(is_characteristic(seq, multiple, tol));
  }
}

TEST(RecurrenceProperties, ProperDivisorsDoNotAnnihilate) {
  const Tolerance tol;
  testgen::Rng rng(10002);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 2 + (trial % 3);
    const Eigen::Index p = 1 + (trial % 2);
    const std::vector<double> nodes = testgen::random_nodes(rng, r, -2.0, 2.0, 0.3);
    std::vector<SymmetricMatrix> weights;
    for (int i = 0; i < r; ++i) {
      // Keep every atom visible so the minimal polynomial is the full product.
      weights.push_back(testgen::random_psd(rng, p, 1.5));
    }
    const MatrixMomentSequence seq =
        oracle::oracle_moments(oracle::OracleMeasureSpec(nodes, weights, {-10.0, 10.0}), 4 * r);
    const RealPolynomial p_s = minimal_polynomial(seq, tol);
    ASSERT_EQ(p_s.degree(), r);
    for (int drop = 0; drop < r; ++drop) {
      std::vector<double> remaining;
      for (int i = 0; i < r; ++i) {
        if (i != drop) remaining.push_back(nodes[i]);
      }
      if (remaining.empty()) continue;
      EXPECT_FALSE(is_characteristic(seq, RealPolynomial::FromRoots(remaining), tol));
    }
  }
}

TEST(RecurrenceProperties, LcmRootSetMatchesEntryUnion) {
  const Tolerance tol;
  testgen::Rng rng(10003);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + (trial % 4);
    const Eigen::Index p = 1 + (trial % 3);
    const std::vector<double> nodes = testgen::random_nodes(rng, r, -2.0, 2.0, 0.3);
    std::vector<SymmetricMatrix> weights;
    for (int i = 0; i < r; ++i) weights.push_back(testgen::random_symmetric(rng, p, 1.5));
    const MatrixMomentSequence seq =
        oracle::oracle_moments(oracle::OracleMeasureSpec(nodes, weights, {-10.0, 10.0}), 4 * r);

    const RootMultiset lcm_roots = roots(minimal_polynomial(seq, tol), tol);

    std::vector<double> union_roots;
    for (Eigen::Index i = 0; i < p; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) {
        const RealPolynomial pij = entry_minimal_polynomial(seq.entry_sequence(i, j), tol);
        if (pij.degree() == 0) continue;
        const RootMultiset entry_roots = roots(pij, tol);
        for (const auto& e : entry_roots.entries()) {
          const double v = e.value.real();
          bool seen = false;
          for (double u : union_roots) seen = seen || std::abs(u - v) <= 1e-6;
          if (!seen) union_roots.push_back(v);
        }
      }
    }
    std::sort(union_roots.begin(), union_roots.end());
    const auto lcm_values = lcm_roots.real_values_sorted();
    ASSERT_EQ(lcm_values.size(), union_roots.size());
    for (std::size_t i = 0; i < union_roots.size(); ++i) {
      EXPECT_NEAR(lcm_values[i], union_roots[i], 1e-6);
    }
  }
}

TEST(RecurrenceProperties, PowerMembershipMatchesMembership) {
  // With a PSD Hankel, P annihilates exactly when P^2 does.
  const Tolerance tol;
  testgen::Rng rng(10004);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + (trial % 3);
    const Eigen::Index p = 1 + (trial % 2);
    const std::vector<double> nodes = testgen::random_nodes(rng, r, -2.0, 2.0, 0.3);
    std::vector<SymmetricMatrix> weights;
    for (int i = 0; i < r; ++i) weights.push_back(testgen::random_psd(rng, p, 1.5));
    const MatrixMomentSequence seq =
        oracle::oracle_moments(oracle::OracleMeasureSpec(nodes, weights, {-10.0, 10.0}), 6 * r);

    const RealPolynomial p_s = minimal_polynomial(seq, tol);
    EXPECT_TRUE(is_characteristic(seq, p_s, tol));
    EXPECT_TRUE(is_characteristic(seq, p_s * p_s, tol));

    // A polynomial missing one atom fails, and so does its square.
    if (r >= 2) {
      const RealPolynomial partial =
          RealPolynomial::FromRoots(std::vector<double>(nodes.begin() + 1, nodes.end()));
      EXPECT_FALSE(is_characteristic(seq, partial, tol));
      EXPECT_FALSE(is_characteristic(seq, partial * partial, tol));
    }
  }
}

TEST(RecurrenceProperties, MinimalPolynomialDividesTheCharacteristic) {
  const Tolerance tol;
  testgen::Rng rng(10005);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + (trial % 4);
    const Eigen::Index p = 1 + (trial % 3);
    std::vector<double> coeffs;
    std::uniform_real_distribution<double> dist(-1.2, 1.2);
    for (int i = 0; i < r; ++i) coeffs.push_back(dist(rng));
    if (std::abs(coeffs.back()) < 0.1) coeffs.back() = coeffs.back() < 0 ? -0.5 : 0.5;
    std::vector<SymmetricMatrix> initials;
    for (int i = 0; i < r; ++i) initials.push_back(testgen::random_symmetric(rng, p, 1.5));
    const RecurrenceSpec spec(coeffs, initials);

    const MatrixMomentSequence seq = extend(spec, 4 * r - 1);
    const RealPolynomial p_s = minimal_polynomial(seq, tol);
    if (p_s.degree() == 0) continue;

    // Divisibility via root containment with multiplicity.
    const RootMultiset min_roots = roots(p_s, tol);
    const RootMultiset char_roots = roots(spec.characteristic_polynomial(), tol);
    for (const auto& root : min_roots.entries()) {
      int available = 0;
      for (const auto& candidate : char_roots.entries()) {
        if (std::abs(candidate.value - root.value) <= 1e-5) {
          available = std::max(available, candidate.multiplicity);
        }
      }
      EXPECT_GE(available, root.multiplicity)
          << "root " << root.value.real() << "+" << root.value.imag() << "i";
    }
  }
}
