#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfiwb/numerics.hpp"

using namespace qfiwb;

TEST(Numerics, CheckedDimensionLimits) {
  EXPECT_EQ(checked_dimension(12, 2), 4096u);
  EXPECT_EQ(checked_dimension(5, 3), 243u);
  EXPECT_THROW(checked_dimension(13, 2), SizeError);
  EXPECT_THROW(checked_dimension(0, 2), ContractError);
  EXPECT_THROW(ipow(2, 64), SizeError);
}

TEST(Numerics, BinomialMatchesPascal) {
  for (int n = 0; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) EXPECT_DOUBLE_EQ(binomial(n, k), oracle::binom(n, k));
  }
  EXPECT_EQ(binomial(5, 7), 0.0);
}

TEST(Numerics, DigitsRoundTrip) {
  for (std::size_t x = 0; x < 81; ++x) {
    const auto dig = digits_of(x, 4, 3);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(dig[i], oracle::digit(x, i, 4, 3));
    EXPECT_EQ(index_of(dig, 3), x);
  }
}

TEST(Numerics, EigenReconstructsRandomHermitian) {
  Rng rng(7);
  for (int d : {1, 2, 5, 16}) {
    const auto h = random_hermitian(d, rng);
    ASSERT_TRUE(is_hermitian(h));
    const auto es = hermitian_eig(h);
    for (Eigen::Index i = 1; i < es.values.size(); ++i) EXPECT_LE(es.values(i - 1), es.values(i));
    const ComplexMatrix back = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LT((back - h).cwiseAbs().maxCoeff(), 1e-10);
  }
  ComplexMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  EXPECT_THROW(hermitian_eig(bad), ContractError);
}

TEST(Numerics, KronAgreesWithEntrywiseTensor) {
  Rng rng(3);
  const auto a = random_hermitian(2, rng);
  const auto b = random_hermitian(3, rng);
  const ComplexMatrix k = kron(a, b);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) EXPECT_EQ(k(r, c), a(r / 3, c / 3) * b(r % 3, c % 3));
  }
}

TEST(Numerics, RandomUnitaryIsUnitary) {
  Rng rng(11);
  for (int d : {2, 3, 8}) {
    const auto u = random_unitary(d, rng);
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Numerics, HaarUnitaryFirstMoment) {
  // E|U_00|^2 = 1/d for Haar U.
  Rng rng(5);
  const int d = 3, trials = 20000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) sum += std::norm(random_unitary(d, rng)(0, 0));
  EXPECT_NEAR(sum / trials, 1.0 / d, 0.01);
}

TEST(Numerics, RngStreamsAreReproducibleAndDistinct) {
  Rng a(42), b(42), c(42, 1);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  Rng s1 = Rng(42).substream(3), s2 = Rng(42).substream(3), s3 = Rng(42).substream(4);
  EXPECT_EQ(s1.next_u64(), s2.next_u64());
  EXPECT_NE(Rng(42).substream(3).next_u64(), s3.next_u64());
}

TEST(Numerics, RngUniformAndNormalMoments) {
  Rng rng(9);
  const int trials = 100000;
  double u = 0.0, z = 0.0, z2 = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double x = rng.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    u += x;
    const double g = rng.normal();
    z += g;
    z2 += g * g;
  }
  EXPECT_NEAR(u / trials, 0.5, 0.005);
  EXPECT_NEAR(z / trials, 0.0, 0.015);
  EXPECT_NEAR(z2 / trials, 1.0, 0.02);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
}

TEST(Numerics, KahanBeatsNaiveOnCancellation) {
  std::vector<double> xs = {1.0};
  for (int i = 0; i < 1000000; ++i) xs.push_back(1e-16);
  EXPECT_NEAR(kahan_sum(xs), 1.0 + 1e-10, 1e-15);
}

TEST(Numerics, SpectralNormOfHermitian) {
  ComplexMatrix h(2, 2);
  h << 1, 0, 0, -3;
  EXPECT_DOUBLE_EQ(spectral_norm(h), 3.0);
}
