#include "qfiwb/nets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfiwb/qfi.hpp"

namespace qfiwb {

CoefficientGrid coefficient_grid(double A, double B, double eps_c) {
  if (!(A > 0.0) || !(B > A)) throw ContractError("coefficient_grid: need B > A > 0");
  if (!(eps_c > 0.0)) throw ContractError("coefficient_grid: eps_c must be positive");
  CoefficientGrid grid{A, B, eps_c, static_cast<int>(std::ceil((B - A) / (2.0 * eps_c))), {}};
  for (int k = 0; k <= grid.K; ++k) grid.points.push_back(B - 2.0 * eps_c * k);
  for (int k = 0; k <= grid.K; ++k) grid.points.push_back(-B + 2.0 * eps_c * k);
  return grid;
}

double CoefficientGrid::nearest(double mu) const {
  const auto ladder = [&](double top, double sign) {
    const double k = std::clamp(std::round(sign * (top - mu) / (2.0 * eps_c)), 0.0, static_cast<double>(K));
    return top - sign * 2.0 * eps_c * k;
  };
  const double pos = ladder(B, 1.0);
  const double neg = ladder(-B, -1.0);
  return std::abs(mu - pos) <= std::abs(mu - neg) ? pos : neg;
}

QubitNet::QubitNet(double eps_p) : eps_p_(eps_p) {
  if (!(eps_p > 0.0 && eps_p < 1.0)) throw ContractError("QubitNet: eps_p must lie in (0, 1)");
  const auto bands = static_cast<std::size_t>(std::ceil(std::numbers::pi / eps_p));
  dtheta_ = std::numbers::pi / static_cast<double>(bands);
  ring_sizes_.resize(bands);
  offsets_.assign(bands + 1, 0);
  for (std::size_t i = 0; i < bands; ++i) {
    const double lo = dtheta_ * static_cast<double>(i);
    const double hi = lo + dtheta_;
    const double sin_max = (lo <= std::numbers::pi / 2 && hi >= std::numbers::pi / 2)
                               ? 1.0
                               : std::max(std::sin(lo), std::sin(hi));
    ring_sizes_[i] = std::max(1, static_cast<int>(std::ceil(2.0 * std::numbers::pi * sin_max / dtheta_)));
    offsets_[i + 1] = offsets_[i] + static_cast<std::uint64_t>(ring_sizes_[i]);
  }
}

ComplexVector QubitNet::state(std::uint64_t index) const {
  if (index >= size()) throw ContractError("QubitNet: index out of range");
  const auto ring = static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), index) -
                                             offsets_.begin() - 1);
  const double theta = (static_cast<double>(ring) + 0.5) * dtheta_;
  const double phi = 2.0 * std::numbers::pi * static_cast<double>(index - offsets_[ring]) / ring_sizes_[ring];
  ComplexVector v(2);
  v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return v;
}

ComplexMatrix QubitNet::frame(std::uint64_t index) const {
  const ComplexVector v = state(index);
  ComplexMatrix f(2, 2);
  f.col(0) = v;
  f(0, 1) = -std::conj(v(1));
  f(1, 1) = std::conj(v(0));
  return f;
}

std::uint64_t QubitNet::nearest(const ComplexVector& v) const {
  if (v.size() != 2) throw ContractError("QubitNet: qubit vector required");
  const double r0 = std::abs(v(0));
  const double r1 = std::abs(v(1));
  const double theta = 2.0 * std::atan2(r1, r0);
  double phi = (r0 > 0.0 && r1 > 0.0) ? std::arg(v(1)) - std::arg(v(0)) : 0.0;
  phi = std::fmod(phi, 2.0 * std::numbers::pi);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  const auto bands = ring_sizes_.size();
  const auto ring = std::min(static_cast<std::size_t>(theta / dtheta_), bands - 1);
  const int m = ring_sizes_[ring];
  const auto j = static_cast<std::uint64_t>(std::llround(phi / (2.0 * std::numbers::pi / m))) %
                 static_cast<std::uint64_t>(m);
  return offsets_[ring] + j;
}

double trace_distance(const ComplexVector& u, const ComplexVector& v) {
  const double f = std::norm(u.dot(v));
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - f));
}

EpsilonChoice epsilon_choices(double eps, const BoundParams& p, EpsilonMode mode) {
  if (!(eps > 0.0)) throw ContractError("epsilon_choices: eps must be positive");
  const double span = p.s_coff * p.B * p.a + p.norm_A0;
  switch (mode) {
    case EpsilonMode::kCover:
      return {eps / (2.0 * std::numbers::sqrt2 * p.d * p.C * p.s_basis * span), eps / (2.0 * p.s_coff * p.a)};
    case EpsilonMode::kSymmetricMean:
    case EpsilonMode::kSeparable: {
      const double eps_p = eps / (8.0 * (1.0 + 2.0 * std::numbers::sqrt2) * p.d * p.C * p.s_basis * span * span);
      const double last = mode == EpsilonMode::kSymmetricMean
                              ? 4.0 * p.B * p.n * (p.n + p.d) / static_cast<double>(p.d)
                              : 4.0 * span * p.s_coff * p.a;
      const double denom = 2.0 * p.s_coff * p.B * p.a + p.s_coff * p.s_coff * (2.0 * p.B + 2.0) * p.a * p.a +
                           2.0 * p.s_coff * p.norm_A0 * p.a + last;
      return {eps_p, eps / (8.0 * denom)};
    }
  }
  throw ContractError("epsilon_choices: unknown mode");
}

double net_size_bound(const BoundParams& p, NetBound which, EpsilonChoice e) {
  const double coeff = std::log((p.B - p.A) / e.eps_c + 4.0);
  const double basis = std::log(5.0 / e.eps_p);
  const double dd1 = static_cast<double>(p.d) * (p.d + 1);
  if (which == NetBound::kSymmetricMean) return static_cast<double>(p.d) * p.n * coeff + dd1 * basis;
  return p.s_coff * coeff + dd1 * p.s_basis * basis;
}

double net_size_bound(const BoundParams& p, NetBound which) {
  const auto mode = which == NetBound::kSymmetricMean ? EpsilonMode::kSymmetricMean : EpsilonMode::kSeparable;
  return net_size_bound(p, which, epsilon_choices(p.eps, p, mode));
}

BoundEvaluation theorem_bound(const BoundParams& p, TheoremBound which, double d_min) {
  const double gap = p.c - p.eps + d_min;
  if (gap < 0.0) throw DomainError("theorem_bound: c - eps + D_min must be non-negative");
  double log_dim = 0.0;
  double theta = 0.0;
  double log_prefactor = 0.0;
  if (which == TheoremBound::kSymmetricMean) {
    log_dim = std::lgamma(p.n + p.d) - std::lgamma(p.n + 1.0) - std::lgamma(static_cast<double>(p.d));
    theta = p.theta;
    log_prefactor = net_size_bound(p, NetBound::kSymmetricMean);
  } else {
    log_dim = p.n * std::log(static_cast<double>(p.d));
    theta = p.s_coff * p.B * p.a + p.norm_A0;
    log_prefactor = net_size_bound(p, NetBound::kSeparable);
  }
  if (!(theta > 0.0)) throw ContractError("theorem_bound: Theta must be positive");
  const double denom = 144.0 * std::pow(std::numbers::pi, 3) * std::numbers::ln2 *
                       std::pow(2.0 + 2.0 * std::numbers::sqrt2, 2) * std::pow(theta, 4);
  const double exponent = gap == 0.0 ? 0.0 : 2.0 * std::exp(log_dim + 2.0 * std::log(gap)) / denom;
  BoundEvaluation out;
  out.log_prefactor = log_prefactor;
  out.log_exponential = std::numbers::ln2 - exponent;
  out.log_total = out.log_prefactor + out.log_exponential;
  out.vacuous = out.log_total >= 0.0;
  return out;
}

LinearNet::LinearNet(int n, double A, double B, EpsilonChoice choice)
    : n_(n), grid_(coefficient_grid(A, B, choice.eps_c)), basis_net_(choice.eps_p) {
  if (n < 1) throw ContractError("LinearNet: n must be positive");
}

double LinearNet::log_size() const {
  return 2.0 * n_ * std::log(static_cast<double>(grid_.size())) + std::log(static_cast<double>(basis_net_.size()));
}

LinearHamiltonian LinearNet::representative(const LinearHamiltonian& h) const {
  if (h.sites() != n_ || h.local_dim() != 2) throw ContractError("LinearNet: Hamiltonian shape mismatch");
  Eigen::MatrixXd table(n_, 2);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < 2; ++j) table(i, j) = grid_.nearest(h.lambda()(i, j));
  }
  const ComplexVector u = h.basis().col(0);
  return LinearHamiltonian(std::move(table), basis_net_.frame(basis_net_.nearest(u)));
}

LinearHamiltonian LinearNet::element(const std::vector<std::size_t>& idx, std::uint64_t frame_index) const {
  if (idx.size() != static_cast<std::size_t>(2 * n_)) throw ContractError("LinearNet: need 2n coefficient indices");
  Eigen::MatrixXd table(n_, 2);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < 2; ++j) table(i, j) = grid_.points.at(idx[static_cast<std::size_t>(2 * i + j)]);
  }
  return LinearHamiltonian(std::move(table), basis_net_.frame(frame_index));
}

LinearHamiltonian sample_linear_family(int n, double A, double B, Rng& rng) {
  Eigen::MatrixXd table(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double magnitude = rng.uniform(A, B);
      table(i, j) = rng.uniform() < 0.5 ? -magnitude : magnitude;
    }
  }
  return LinearHamiltonian(std::move(table), random_unitary(2, rng));
}

BoundParams linear_family_params(int n, double A, double B, double eps, double C) {
  BoundParams p;
  p.n = n;
  p.d = 2;
  p.s_coff = 2.0 * n;
  p.s_basis = n;
  p.A = A;
  p.B = B;
  p.a = 1.0;
  p.norm_A0 = 0.0;
  p.C = C;
  p.eps = eps;
  p.theta = n * B;
  p.theta_source = "n*B";
  return p;
}

CoverAudit net_cover_audit(const LinearNet& net, double A, double B, double eps, std::size_t trials, Rng& rng) {
  CoverAudit audit;
  audit.trials = trials;
  audit.eps = eps;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto h = sample_linear_family(net.sites(), A, B, rng);
    const auto rep = net.representative(h);
    const double dist = spectral_norm(dense(h) - dense(rep));
    audit.distances.push_back(dist);
    audit.max_distance = std::max(audit.max_distance, dist);
    if (dist > eps) {
      if (audit.violations == 0) audit.counterexample = {{"trial", t}, {"hamiltonian", to_json(h)}, {"distance", dist}};
      ++audit.violations;
    }
  }
  return audit;
}

double property_deviation(const PureState& psi, const LinearHamiltonian& h, const LinearHamiltonian& rep,
                          PropertyCheck which) {
  const auto side = [&](const LinearHamiltonian& x) {
    const double f = qfi(psi, dense(x)).value;
    if (which == PropertyCheck::kSymmetricMean) {
      return f - expected_qfi_symmetric(dense(symmetrize_linear(x)), x.sites(), x.local_dim());
    }
    return f - max_separable_linear(x);
  };
  return std::abs(side(h) - side(rep));
}

PropertyAudit property_audit(const LinearNet& net, double A, double B, double eps, std::size_t trials,
                             PropertyCheck which, Rng& rng) {
  PropertyAudit audit;
  audit.trials = trials;
  audit.eps = eps;
  KahanSum total;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto h = sample_linear_family(net.sites(), A, B, rng);
    const auto psi = sample_haar(net.sites(), 2, rng);
    const double dev = property_deviation(psi, h, net.representative(h), which);
    audit.deviations.push_back(dev);
    total.add(dev);
    audit.max_deviation = std::max(audit.max_deviation, dev);
    if (dev > eps) {
      if (audit.violations == 0) audit.counterexample = {{"trial", t}, {"hamiltonian", to_json(h)}, {"deviation", dev}};
      ++audit.violations;
    }
  }
  audit.mean_deviation = trials ? total.value() / static_cast<double>(trials) : 0.0;
  return audit;
}

}  // namespace qfiwb
