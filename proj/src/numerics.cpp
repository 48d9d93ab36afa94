#include "qfiwb/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qfiwb {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw SizeError("integer power overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

std::size_t checked_dimension(int n, int d) {
  if (n < 1 || d < 1) {
    throw ContractError("site count and local dimension must be positive");
  }
  std::uint64_t dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= static_cast<std::uint64_t>(d);
    if (dim > kMaxDimension) {
      throw SizeError("dimension " + std::to_string(d) + "^" + std::to_string(n) +
                      " exceeds the dense limit of " + std::to_string(kMaxDimension));
    }
  }
  return static_cast<std::size_t>(dim);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(result);
}

std::vector<int> digits_of(std::size_t x, int n, int d) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int s = n - 1; s >= 0; --s) {
    out[static_cast<std::size_t>(s)] = static_cast<int>(x % static_cast<std::size_t>(d));
    x /= static_cast<std::size_t>(d);
  }
  return out;
}

std::size_t index_of(const std::vector<int>& digits, int d) {
  std::size_t x = 0;
  for (int v : digits) x = x * static_cast<std::size_t>(d) + static_cast<std::size_t>(v);
  return x;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    }
  }
  return true;
}

EigenSystem hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ContractError("hermitian_eig: matrix is not square");
  }
  if (static_cast<std::size_t>(a.rows()) > kMaxDimension) {
    throw SizeError("hermitian_eig: dimension exceeds dense limit");
  }
  if (!is_hermitian(a, 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))) {
    throw ContractError("hermitian_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: QL iteration did not converge (limit " +
                         std::to_string(Eigen::SelfAdjointEigenSolver<ComplexMatrix>::m_maxIterations) +
                         " sweeps per eigenvalue)");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto rows = static_cast<std::uint64_t>(a.rows()) * static_cast<std::uint64_t>(b.rows());
  const auto cols = static_cast<std::uint64_t>(a.cols()) * static_cast<std::uint64_t>(b.cols());
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw SizeError("kron: result exceeds dense limit");
  }
  ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  if (static_cast<std::uint64_t>(a.size()) * static_cast<std::uint64_t>(b.size()) > kMaxDimension) {
    throw SizeError("kron: result exceeds dense limit");
  }
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols() && is_hermitian(a, 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))) {
    const auto eig = hermitian_eig(a);
    return std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double kahan_sum(std::span<const double> xs) {
  KahanSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

Rng Rng::substream(std::uint64_t index) const {
  return Rng(seed_, mix64(stream_ * kGolden + index + 1));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t key = mix64(seed_ ^ mix64(stream_ + kGolden));
  return mix64(key + (counter_++) * kGolden);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ContractError("Rng::below: bound must be positive");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_hermitian(int d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  }
  return 0.5 * (g + g.adjoint());
}

}  // namespace qfiwb
