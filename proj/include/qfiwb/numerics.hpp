#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qfiwb/errors.hpp"

namespace qfiwb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dense storage limit: at most 12 qubit-equivalents.
inline constexpr std::size_t kMaxDimension = 4096;

// Throws SizeError when d^n exceeds kMaxDimension (or overflows).
std::size_t checked_dimension(int n, int d);

// d^n without the size cap; throws SizeError on 64-bit overflow.
std::uint64_t ipow(std::uint64_t base, int exp);

double binomial(int n, int k);

// Base-d digits of configuration x over n sites, site 0 first (most significant).
std::vector<int> digits_of(std::size_t x, int n, int d);
std::size_t index_of(const std::vector<int>& digits, int d);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

struct EigenSystem {
  RealVector values;        // ascending
  ComplexMatrix vectors;    // column k pairs with values[k]
};

// Hermitian eigendecomposition. Throws ContractError for non-Hermitian input,
// SizeError above kMaxDimension, NumericalError if the solver does not converge.
EigenSystem hermitian_eig(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Largest singular value. For Hermitian input this is max |lambda_k|.
double spectral_norm(const ComplexMatrix& a);

// Kahan-compensated accumulator; summation order is the caller's.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double kahan_sum(std::span<const double> xs);

// Counter-based generator. Draw i of stream s under seed k is a pure function of (k, s, i),
// so workers can take disjoint streams and reproduce any trial in isolation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Independent generator for sub-stream `index` of this generator's (seed, stream).
  Rng substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  double uniform();                  // [0, 1)
  double uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t bound);  // [0, bound)
  double normal();                   // Box-Muller, N(0, 1)
  Complex complex_normal();          // real and imaginary parts i.i.d. N(0, 1)

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed d x d unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(int d, Rng& rng);

// Random Hermitian matrix with i.i.d. complex Gaussian entries, symmetrized.
ComplexMatrix random_hermitian(int d, Rng& rng);

}  // namespace qfiwb
