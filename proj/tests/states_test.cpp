#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "qfiwb/states.hpp"

using namespace qfiwb;

TEST(States, RejectsUnnormalized) {
  ComplexVector v = ComplexVector::Ones(4);
  EXPECT_THROW(PureState(2, 2, v), ContractError);
  EXPECT_NEAR(PureState::normalized(2, 2, v).amplitudes().norm(), 1.0, 1e-15);
}

TEST(States, DickeOrderAndValues) {
  const auto b = dicke_basis(2, 2);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_NEAR(b.matrix(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(b.matrix(1, 1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.matrix(2, 1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.matrix(3, 2).real(), 1.0, 1e-15);
}

TEST(States, DickeSpansSymmetricSubspace) {
  for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
    const auto b = dicke_basis(n, d);
    EXPECT_EQ(b.size(), static_cast<std::size_t>(oracle::binom(n + d - 1, n)));
    const auto m = b.matrix;
    EXPECT_LT((m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff(), 1e-12);
    const auto p = oracle::symmetric_projector(n, d);
    EXPECT_LT((m * m.adjoint() - p).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((symmetric_projector(n, d) - p).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(States, SymmetricSamplesArePermutationInvariant) {
  Rng rng(3);
  const auto psi = sample_symmetric(3, 2, rng);
  for (const auto& pi : oracle::all_permutations(3)) {
    EXPECT_LT((oracle::permutation(pi, 2) * psi.amplitudes() - psi.amplitudes()).norm(), 1e-12);
  }
}

TEST(States, HaarMeanPopulation) {
  Rng rng(4);
  const int trials = 20000;
  double p0 = 0.0;
  for (int t = 0; t < trials; ++t) p0 += std::norm(sample_haar(2, 2, rng).amplitudes()(0));
  EXPECT_NEAR(p0 / trials, 0.25, 0.01);
}

TEST(States, GhzAndProduct) {
  const auto g = ghz(3);
  EXPECT_NEAR(g.amplitudes()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(g.amplitudes()(7).real(), 1.0 / std::sqrt(2.0), 1e-15);
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const auto p = product_state({zero, plus});
  EXPECT_NEAR(p.amplitudes()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p.amplitudes()(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(p.amplitudes()(2)), 0.0, 1e-15);
}

TEST(States, SuperpositionStateIsNormalized) {
  for (int n = 2; n <= 5; ++n) EXPECT_NEAR(superposition_state(n).amplitudes().norm(), 1.0, 1e-12);
}

TEST(States, TextRoundTripIsExact) {
  Rng rng(5);
  const auto psi = sample_haar(3, 2, rng);
  std::stringstream ss;
  write_state(ss, psi);
  const auto back = read_state(ss);
  EXPECT_EQ(back.sites(), 3);
  EXPECT_EQ((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 0.0);
  std::stringstream bad("2 2\n0 1 0\n1 1 0\n");
  EXPECT_THROW(read_state(bad), ContractError);
}
