#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "qfiwb/hamiltonians.hpp"

using namespace qfiwb;

namespace {
double diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }
}  // namespace

TEST(Hamiltonians, LinearDenseMatchesSiteSum) {
  Rng rng(1);
  Eigen::MatrixXd lambda(3, 3);
  lambda << 0.1, -0.4, 2.0, 1.0, 0.3, -1.2, 0.0, 0.5, 0.7;
  const auto u = random_unitary(3, rng);
  const LinearHamiltonian h(lambda, u);
  std::vector<oracle::Mat> sites;
  for (int i = 0; i < 3; ++i) {
    sites.push_back(u * lambda.row(i).transpose().cast<Complex>().asDiagonal() * u.adjoint());
  }
  EXPECT_LT(diff(dense(h), oracle::local_sum(sites)), 1e-12);
}

TEST(Hamiltonians, PlusMinusBasis) {
  const auto h = SingleSiteOperator::plus_minus(0.0, 1.0).matrix();
  // |-><-| = (I - X)/2
  EXPECT_NEAR(h(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(h(0, 1).real(), -0.5, 1e-15);
  EXPECT_TRUE(bases::is_orthonormal(bases::plus_minus()));
}

TEST(Hamiltonians, ProductDiagonalDense) {
  Rng rng(2);
  const std::vector<ComplexMatrix> b = {random_unitary(2, rng), random_unitary(2, rng)};
  RealVector coeffs(4);
  coeffs << 1.0, -2.0, 0.5, 3.0;
  const ProductDiagonalHamiltonian h(b, coeffs);
  oracle::Mat expected = oracle::Mat::Zero(4, 4);
  for (int x = 0; x < 4; ++x) {
    const oracle::Vec v = kron(ComplexVector(b[0].col(x / 2)), ComplexVector(b[1].col(x % 2)));
    expected += coeffs(x) * v * v.adjoint();
  }
  EXPECT_LT(diff(dense(h), expected), 1e-12);
}

TEST(Hamiltonians, GraphDenseMatchesOracle) {
  const std::vector<std::vector<int>> edges = {{0, 1}, {1, 2}, {0, 3}};
  const auto h = GraphHamiltonian::uniform(4, edges, 0.5, 2.0, true);
  EXPECT_LT(diff(dense(h), oracle::graph_dense(4, edges, 0.5, 2.0)), 1e-12);
  EXPECT_THROW(GraphHamiltonian::uniform(4, edges, 2.0, 0.5, true), ContractError);
}

TEST(Hamiltonians, ToProductDiagonalPreservesMatrix) {
  Rng rng(4);
  Eigen::MatrixXd lambda(2, 2);
  lambda << 1.0, 2.0, -1.0, 0.5;
  const LinearHamiltonian h(lambda, random_unitary(2, rng));
  EXPECT_LT(diff(dense(to_product_diagonal(h)), dense(h)), 1e-12);
  const auto g = GraphHamiltonian::uniform(3, {{0, 1}, {1, 2}}, 1.0, 3.0);
  EXPECT_LT(diff(dense(to_product_diagonal(g)), dense(g)), 1e-12);
}

TEST(Hamiltonians, SymmetrizeMatchesPermutationAverage) {
  Rng rng(6);
  Eigen::MatrixXd lambda(3, 2);
  lambda << 0.3, -1.0, 2.0, 0.1, -0.7, 1.5;
  const LinearHamiltonian h(lambda, random_unitary(2, rng));
  const ComplexMatrix hd = dense(h);
  oracle::Mat avg = oracle::Mat::Zero(8, 8);
  const auto perms = oracle::all_permutations(3);
  for (const auto& pi : perms) {
    const auto v = oracle::permutation(pi, 2);
    avg += v * hd * v.adjoint();
  }
  avg /= static_cast<double>(perms.size());
  EXPECT_LT(diff(dense(symmetrize_linear(h)), avg), 1e-12);
}

TEST(Hamiltonians, PermutationMatrixMatchesOracleAndGroupLaw) {
  const std::vector<int> pi = {2, 0, 1}, sigma = {1, 0, 2};
  EXPECT_LT(diff(permutation_matrix(pi, 3), oracle::permutation(pi, 3)), 0.5);
  std::vector<int> comp(3);
  for (int j = 0; j < 3; ++j) comp[j] = pi[sigma[j]];
  EXPECT_LT(diff(permutation_matrix(pi, 2) * permutation_matrix(sigma, 2), permutation_matrix(comp, 2)), 1e-15);
}

TEST(Hamiltonians, LabelGapAndTotals) {
  Eigen::MatrixXd lambda(2, 3);
  lambda << 0.0, 1.0, 2.0, 0.0, 3.0, -1.0;
  const LinearHamiltonian h(lambda, bases::computational(3));
  const auto t = h.label_totals();
  EXPECT_DOUBLE_EQ(t[0], 0.0);
  EXPECT_DOUBLE_EQ(t[1], 4.0);
  EXPECT_DOUBLE_EQ(t[2], 1.0);
  EXPECT_DOUBLE_EQ(h.label_gap(), 4.0);
  EXPECT_FALSE(h.has_equal_rows());
}

TEST(Hamiltonians, SpectralSpread) {
  Rng rng(8);
  const auto h = random_hermitian(6, rng);
  const auto es = hermitian_eig(h);
  EXPECT_NEAR(spectral_spread(h), es.values(5) - es.values(0), 1e-12);
}

TEST(Hamiltonians, JsonRoundTrip) {
  Rng rng(10);
  Eigen::MatrixXd lambda(2, 2);
  lambda << 1.0, -1.5, 0.25, 2.0;
  const AnyHamiltonian lin = LinearHamiltonian(lambda, random_unitary(2, rng));
  const AnyHamiltonian graph = GraphHamiltonian::uniform(3, {{0, 1}, {1, 2}}, 1.0, 2.0, true);
  for (const auto& h : {lin, graph}) {
    const auto back = hamiltonian_from_json(nlohmann::json::parse(to_json(h).dump()));
    EXPECT_LT(diff(dense(back), dense(h)), 1e-15);
  }
  const auto j = to_json(graph);
  EXPECT_EQ(j["hyperedges"][0][0], 1);  // 1-based on disk
  auto bad = j;
  bad["typo"] = 1;
  EXPECT_THROW(hamiltonian_from_json(bad), ContractError);
}

TEST(Hamiltonians, RejectsBadBasis) {
  ComplexMatrix b(2, 2);
  b << 1, 1, 0, 1;
  EXPECT_THROW(SingleSiteOperator({0.0, 1.0}, b), ContractError);
}
