#include "qfiwb/states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

namespace qfiwb {

PureState::PureState(int n, int d, ComplexVector amplitudes)
    : n_(n), d_(d), amplitudes_(std::move(amplitudes)) {
  const auto dim = checked_dimension(n, d);
  if (static_cast<std::size_t>(amplitudes_.size()) != dim) {
    throw ContractError("PureState: expected " + std::to_string(dim) + " amplitudes, got " +
                        std::to_string(amplitudes_.size()));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw ContractError("PureState: amplitudes are not unit norm");
  }
}

PureState PureState::normalized(int n, int d, ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ContractError("PureState: zero or non-finite vector");
  amplitudes /= norm;
  return PureState(n, d, std::move(amplitudes));
}

PureState DickeBasis::column(std::size_t c) const {
  return PureState(n, d, matrix.col(static_cast<Eigen::Index>(c)));
}

namespace {

void compositions_rec(int remaining, int slot, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (slot == static_cast<int>(cur.size()) - 1) {
    cur[static_cast<std::size_t>(slot)] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[static_cast<std::size_t>(slot)] = k;
    compositions_rec(remaining - k, slot + 1, cur, out);
  }
}

std::vector<int> label_counts(const std::vector<int>& digits, int d) {
  std::vector<int> k(static_cast<std::size_t>(d), 0);
  for (int v : digits) ++k[static_cast<std::size_t>(v)];
  return k;
}

}  // namespace

DickeBasis dicke_basis(int n, int d) {
  const auto dim = checked_dimension(n, d);
  if (binomial(n + d - 1, n) > static_cast<double>(kMaxDimension)) {
    throw SizeError("dicke_basis: symmetric subspace exceeds dense limit");
  }
  DickeBasis basis;
  basis.n = n;
  basis.d = d;
  std::vector<int> cur(static_cast<std::size_t>(d));
  compositions_rec(n, 0, cur, basis.compositions);
  std::sort(basis.compositions.begin(), basis.compositions.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
            });
  std::map<std::vector<int>, Eigen::Index> column_of;
  for (std::size_t c = 0; c < basis.compositions.size(); ++c) {
    column_of[basis.compositions[c]] = static_cast<Eigen::Index>(c);
  }
  // Each column is the uniform superposition over the configurations of its composition.
  std::vector<double> multiplicity(basis.compositions.size(), 0.0);
  for (std::size_t c = 0; c < basis.compositions.size(); ++c) {
    double m = std::tgamma(n + 1.0);
    for (int k : basis.compositions[c]) m /= std::tgamma(k + 1.0);
    multiplicity[c] = std::round(m);
  }
  basis.matrix = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                     static_cast<Eigen::Index>(basis.compositions.size()));
  for (std::size_t x = 0; x < dim; ++x) {
    const auto c = column_of.at(label_counts(digits_of(x, n, d), d));
    basis.matrix(static_cast<Eigen::Index>(x), c) = 1.0 / std::sqrt(multiplicity[static_cast<std::size_t>(c)]);
  }
  return basis;
}

ComplexMatrix symmetric_projector(int n, int d) {
  if (n > 6) throw SizeError("symmetric_projector: permutation sum limited to n <= 6");
  const auto dim = checked_dimension(n, d);
  ComplexMatrix proj = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  double count = 0.0;
  do {
    count += 1.0;
    for (std::size_t x = 0; x < dim; ++x) {
      const auto digits = digits_of(x, n, d);
      std::vector<int> image(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) image[static_cast<std::size_t>(pi[static_cast<std::size_t>(j)])] = digits[static_cast<std::size_t>(j)];
      proj(static_cast<Eigen::Index>(index_of(image, d)), static_cast<Eigen::Index>(x)) += 1.0;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return proj / count;
}

PureState sample_haar(int n, int d, Rng& rng) {
  const auto dim = checked_dimension(n, d);
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (auto& z : v) z = rng.complex_normal();
  return PureState::normalized(n, d, std::move(v));
}

PureState sample_symmetric(const DickeBasis& basis, Rng& rng) {
  ComplexVector coords(static_cast<Eigen::Index>(basis.size()));
  for (auto& z : coords) z = rng.complex_normal();
  coords.normalize();
  return PureState::normalized(basis.n, basis.d, basis.matrix * coords);
}

PureState sample_symmetric(int n, int d, Rng& rng) { return sample_symmetric(dicke_basis(n, d), rng); }

namespace {

ComplexVector tensor_power(const ComplexVector& v, int n) {
  ComplexVector out = v;
  for (int i = 1; i < n; ++i) out = kron(out, v);
  return out;
}

}  // namespace

PureState ghz(int n, const ComplexVector& b0, const ComplexVector& b1) {
  if (n < 1) throw ContractError("ghz: n must be positive");
  if (b0.size() != b1.size() || std::abs(b0.norm() - 1.0) > 1e-10 || std::abs(b1.norm() - 1.0) > 1e-10 ||
      std::abs(b0.dot(b1)) > 1e-10) {
    throw ContractError("ghz: basis vectors must be orthonormal and of equal dimension");
  }
  return PureState::normalized(n, static_cast<int>(b0.size()),
                               (tensor_power(b0, n) + tensor_power(b1, n)) / std::sqrt(2.0));
}

PureState ghz(int n) {
  return ghz(n, ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1));
}

PureState superposition_state(int n) {
  if (n < 2) throw ContractError("superposition_state: n must be at least 2");
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2);
  plus << r, r;
  minus << r, -r;
  const ComplexVector sum = tensor_power(ComplexVector::Unit(2, 0), n) + tensor_power(ComplexVector::Unit(2, 1), n) +
                            tensor_power(plus, n) + tensor_power(minus, n);
  return PureState::normalized(n, 2, sum);
}

PureState product_state(const std::vector<ComplexVector>& site_states) {
  if (site_states.empty()) throw ContractError("product_state: no sites");
  const auto d = site_states.front().size();
  for (const auto& v : site_states) {
    if (v.size() != d) throw ContractError("product_state: site vectors differ in dimension");
    if (std::abs(v.norm() - 1.0) > 1e-10) throw ContractError("product_state: site vector is not unit norm");
  }
  ComplexVector out = site_states.front();
  for (std::size_t i = 1; i < site_states.size(); ++i) out = kron(out, site_states[i]);
  return PureState::normalized(static_cast<int>(site_states.size()), static_cast<int>(d), std::move(out));
}

void write_state(std::ostream& out, const PureState& state) {
  out << state.sites() << ' ' << state.local_dim() << '\n' << std::setprecision(17);
  for (Eigen::Index x = 0; x < state.amplitudes().size(); ++x) {
    out << x << ' ' << state.amplitudes()(x).real() << ' ' << state.amplitudes()(x).imag() << '\n';
  }
}

PureState read_state(std::istream& in) {
  int n = 0, d = 0;
  if (!(in >> n >> d)) throw ContractError("read_state: missing 'n d' header");
  const auto dim = checked_dimension(n, d);
  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  std::size_t index = 0;
  double re = 0.0, im = 0.0;
  while (in >> index >> re >> im) {
    if (index >= dim) throw ContractError("read_state: basis index out of range");
    amps(static_cast<Eigen::Index>(index)) = Complex(re, im);
  }
  if (!in.eof()) throw ContractError("read_state: malformed amplitude line");
  return PureState(n, d, std::move(amps));
}

void save_state(const std::string& path, const PureState& state) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write state file '" + path + "'");
  write_state(out, state);
}

PureState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open state file '" + path + "'");
  return read_state(in);
}

}  // namespace qfiwb
