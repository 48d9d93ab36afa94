#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfiwb/nets.hpp"
#include "qfiwb/qfi.hpp"

using namespace qfiwb;

TEST(Nets, CoefficientGridCoversBothIntervals) {
  for (double eps_c : {0.5, 0.13, 0.01}) {
    const auto g = coefficient_grid(1.0, 2.0, eps_c);
    EXPECT_LE(static_cast<double>(g.size()), (2.0 - 1.0) / eps_c + 4.0);
    double worst = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double mu = 1.0 + i / 20000.0;
      worst = std::max({worst, std::abs(g.nearest(mu) - mu), std::abs(g.nearest(-mu) + mu)});
    }
    EXPECT_LE(worst, eps_c * (1 + 1e-12));
  }
  EXPECT_THROW(coefficient_grid(2.0, 1.0, 0.1), ContractError);
}

TEST(Nets, QubitNetCoversRandomStates) {
  Rng rng(1);
  for (double eps_p : {0.5, 0.1}) {
    const QubitNet net(eps_p);
    for (int t = 0; t < 500; ++t) {
      const ComplexVector v = random_unitary(2, rng).col(0);
      EXPECT_LE(trace_distance(v, net.state(net.nearest(v))), eps_p * (1 + 1e-9));
    }
    const auto f = net.frame(3);
    EXPECT_LT((f.adjoint() * f - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Nets, TraceDistanceValues) {
  ComplexVector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  EXPECT_NEAR(trace_distance(a, b), 2.0, 1e-15);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
}

TEST(Nets, CoverAuditPasses) {
  const auto params = linear_family_params(2, 1.0, 2.0, 0.5);
  const LinearNet net(2, 1.0, 2.0, epsilon_choices(0.5, params, EpsilonMode::kCover));
  Rng rng(2);
  const auto audit = net_cover_audit(net, 1.0, 2.0, 0.5, 200, rng);
  EXPECT_EQ(audit.violations, 0u);
  EXPECT_TRUE(audit.counterexample.is_null());
  EXPECT_LE(net.log_size(), net_size_bound(params, NetBound::kSymmetricMean, epsilon_choices(0.5, params, EpsilonMode::kCover)));
}

TEST(Nets, ElementOfNetIsItsOwnRepresentative) {
  const auto params = linear_family_params(2, 1.0, 2.0, 1.0);
  const LinearNet net(2, 1.0, 2.0, epsilon_choices(1.0, params, EpsilonMode::kCover));
  const auto h = net.element({0, 1, 2, 3}, 5);
  const auto rep = net.representative(h);
  EXPECT_LT((dense(h) - dense(rep)).cwiseAbs().maxCoeff(), 1e-12);
  Rng rng(3);
  const auto psi = sample_haar(2, 2, rng);
  EXPECT_NEAR(property_deviation(psi, h, rep, PropertyCheck::kSymmetricMean), 0.0, 1e-10);
  EXPECT_NEAR(property_deviation(psi, h, rep, PropertyCheck::kSeparable), 0.0, 1e-10);
}

TEST(Nets, PropertyAuditsAndShrinkingDeviation) {
  Rng rng(4);
  double previous = std::numeric_limits<double>::infinity();
  for (double eps : {1.0, 0.5, 0.25}) {
    const auto params = linear_family_params(2, 1.0, 2.0, eps);
    const LinearNet net_sym(2, 1.0, 2.0, epsilon_choices(eps, params, EpsilonMode::kSymmetricMean));
    const LinearNet net_sep(2, 1.0, 2.0, epsilon_choices(eps, params, EpsilonMode::kSeparable));
    const auto sym = property_audit(net_sym, 1.0, 2.0, eps, 100, PropertyCheck::kSymmetricMean, rng);
    const auto sep = property_audit(net_sep, 1.0, 2.0, eps, 100, PropertyCheck::kSeparable, rng);
    EXPECT_EQ(sym.violations, 0u);
    EXPECT_EQ(sep.violations, 0u);
    EXPECT_LT(sym.mean_deviation, previous);
    previous = sym.mean_deviation;
  }
}

TEST(Nets, EpsilonChoicesFormulas) {
  BoundParams p = linear_family_params(3, 1.0, 2.0, 0.5);
  const double span = p.s_coff * p.B * p.a + p.norm_A0;
  const auto cover = epsilon_choices(0.5, p, EpsilonMode::kCover);
  EXPECT_NEAR(cover.eps_p, 0.5 / (2 * std::sqrt(2.0) * 2 * 18 * p.s_basis * span), 1e-15);
  EXPECT_NEAR(cover.eps_c, 0.5 / (2 * p.s_coff * p.a), 1e-15);
  const auto sym_mean = epsilon_choices(0.5, p, EpsilonMode::kSymmetricMean);
  EXPECT_NEAR(sym_mean.eps_p, 0.5 / (8 * (1 + 2 * std::sqrt(2.0)) * 2 * 18 * p.s_basis * span * span), 1e-15);
}

TEST(Nets, TheoremBoundMonotonicity) {
  BoundParams p = linear_family_params(6, 1.0, 2.0, 1.0);
  p.c = 20.0;
  const auto base = theorem_bound(p, TheoremBound::kSymmetricMean, 0.0);
  EXPECT_LT(theorem_bound(p, TheoremBound::kSymmetricMean, 5.0).log_total, base.log_total);
  BoundParams wider = p;
  wider.d = 3;
  const auto raised = theorem_bound(wider, TheoremBound::kSymmetricMean, 0.0);
  EXPECT_LT(raised.log_exponential, base.log_exponential);
  p.c = 0.5;
  EXPECT_THROW(theorem_bound(p, TheoremBound::kSymmetricMean, 0.0), DomainError);
}

TEST(Nets, SymmetricMeanBoundTailDecreasesForFourteenLevels) {
  std::vector<double> totals;
  for (int n = 4; n <= 64; ++n) {
    BoundParams p = linear_family_params(n, 1.0, 2.0, 1.0);
    p.d = 14;
    p.s_coff = 14.0 * n;
    p.c = 100.0;
    totals.push_back(theorem_bound(p, TheoremBound::kSymmetricMean, 0.0).log_total);
  }
  for (std::size_t i = totals.size() - 10; i < totals.size(); ++i) EXPECT_LT(totals[i], totals[i - 1]);
}
