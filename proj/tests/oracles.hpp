#pragma once

// Reference computations written independently of the library: explicit index loops, no shared
// helpers beyond the Eigen containers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline std::size_t power(int d, int n) {
  std::size_t out = 1;
  for (int i = 0; i < n; ++i) out *= static_cast<std::size_t>(d);
  return out;
}

// Digit of site i (site 0 most significant).
inline int digit(std::size_t x, int site, int n, int d) {
  for (int i = n - 1; i > site; --i) x /= static_cast<std::size_t>(d);
  return static_cast<int>(x % static_cast<std::size_t>(d));
}

// Matrix of an operator acting as ops[i] on site i, entry by entry.
inline Mat tensor(const std::vector<Mat>& ops) {
  const int n = static_cast<int>(ops.size());
  const int d = static_cast<int>(ops[0].rows());
  const std::size_t dim = power(d, n);
  Mat out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      cd v = 1.0;
      for (int i = 0; i < n && v != 0.0; ++i) v *= ops[i](digit(r, i, n, d), digit(c, i, n, d));
      out(r, c) = v;
    }
  }
  return out;
}

// sum_i h_i with h_i on site i.
inline Mat local_sum(const std::vector<Mat>& site_ops) {
  const int n = static_cast<int>(site_ops.size());
  const int d = static_cast<int>(site_ops[0].rows());
  Mat total = Mat::Zero(power(d, n), power(d, n));
  for (int i = 0; i < n; ++i) {
    std::vector<Mat> ops(n, Mat::Identity(d, d));
    ops[i] = site_ops[i];
    total += tensor(ops);
  }
  return total;
}

inline double variance_qfi(const Vec& psi, const Mat& h) {
  cd m1 = 0.0, m2 = 0.0;
  const Vec hp = h * psi;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    m1 += std::conj(psi(i)) * hp(i);
    m2 += std::conj(hp(i)) * hp(i);
  }
  return 4.0 * (m2.real() - m1.real() * m1.real());
}

// Site permutation: the factor on site j moves to site pi[j].
inline Mat permutation(const std::vector<int>& pi, int d) {
  const int n = static_cast<int>(pi.size());
  const std::size_t dim = power(d, n);
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::vector<int> dig(n), moved(n);
    for (int j = 0; j < n; ++j) dig[j] = digit(x, j, n, d);
    for (int j = 0; j < n; ++j) moved[pi[j]] = dig[j];
    std::size_t y = 0;
    for (int j = 0; j < n; ++j) y = y * d + moved[j];
    out(y, x) = 1.0;
  }
  return out;
}

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline Mat symmetric_projector(int n, int d) {
  const auto perms = all_permutations(n);
  Mat p = Mat::Zero(power(d, n), power(d, n));
  for (const auto& pi : perms) p += permutation(pi, d);
  return p / static_cast<double>(perms.size());
}

// 4 E[f] for Haar-random states in the range of the projector P (rank r):
// E<H> = Tr(PH)/r, E<H>^2 = (Tr(PHPH) + Tr(PH)^2)/(r(r+1)).
inline double expected_qfi_on_subspace(const Mat& h, const Mat& p) {
  const double r = p.trace().real();
  const double tr_ph = (p * h).trace().real();
  const double tr_ph2 = (p * h * h).trace().real();
  const double tr_phph = (p * h * p * h).trace().real();
  return 4.0 * (tr_ph2 / r - (tr_phph + tr_ph * tr_ph) / (r * (r + 1.0)));
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Ordered edge pairs by overlap class, counted pair by pair.
struct Census {
  std::int64_t same = 0, disjoint = 0, connected = 0;
};

inline Census census(const std::vector<std::vector<int>>& edges) {
  Census c;
  for (const auto& a : edges) {
    for (const auto& b : edges) {
      int shared = 0;
      for (int x : a) shared += std::count(b.begin(), b.end(), x);
      if (a == b) ++c.same;
      else if (shared == 0) ++c.disjoint;
      else ++c.connected;
    }
  }
  return c;
}

// Dense qubit graph Hamiltonian with diag(l0, l1) on every site.
inline Mat graph_dense(int n, const std::vector<std::vector<int>>& edges, double l0, double l1) {
  const std::size_t dim = power(2, n);
  Mat h = Mat::Zero(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    double e = 0.0;
    for (const auto& edge : edges) {
      double t = 1.0;
      for (int v : edge) t *= digit(x, v, n, 2) ? l1 : l0;
      e += t;
    }
    h(x, x) = e;
  }
  return h;
}

// Largest overlap with a product state for two qubits: top singular value squared.
inline double two_qubit_max_overlap(const Vec& psi) {
  Eigen::Matrix2cd m;
  m << psi(0), psi(1), psi(2), psi(3);
  const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
  return svd.singularValues()(0) * svd.singularValues()(0);
}

}  // namespace oracle
