#include "qfiwb/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace qfiwb {

namespace {

double clipped_variance(double mean_h, double mean_h2) {
  const double var = mean_h2 - mean_h * mean_h;
  if (var >= 0.0) return var;
  if (4.0 * var >= -1e-9) return 0.0;
  throw NumericalError("qfi: negative variance " + std::to_string(var));
}

}  // namespace

QfiReport qfi(const PureState& state, const ComplexMatrix& h) {
  if (static_cast<std::size_t>(h.rows()) != state.dim() || h.rows() != h.cols()) {
    throw ContractError("qfi: Hamiltonian dimension does not match the state");
  }
  const ComplexVector hpsi = h * state.amplitudes();
  const double mean_h = state.amplitudes().dot(hpsi).real();
  const double mean_h2 = hpsi.squaredNorm();
  return {4.0 * clipped_variance(mean_h, mean_h2), mean_h, mean_h2};
}

QfiReport qfi(const PureState& state, std::span<const double> diagonal) {
  if (diagonal.size() != state.dim()) {
    throw ContractError("qfi: Hamiltonian dimension does not match the state");
  }
  KahanSum m1, m2;
  for (std::size_t x = 0; x < diagonal.size(); ++x) {
    const double w = std::norm(state.amplitudes()(static_cast<Eigen::Index>(x)));
    m1.add(w * diagonal[x]);
    m2.add(w * diagonal[x] * diagonal[x]);
  }
  return {4.0 * clipped_variance(m1.value(), m2.value()), m1.value(), m2.value()};
}

double expected_qfi_haar(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ContractError("expected_qfi_haar: square matrix required");
  const double dim = static_cast<double>(h.rows());
  const double tr_h2 = h.squaredNorm();  // Tr H^2 for Hermitian H
  const double tr_h = h.trace().real();
  return 4.0 * (tr_h2 / (dim + 1.0) - tr_h * tr_h / (dim * (dim + 1.0)));
}

double expected_qfi_symmetric(const ComplexMatrix& h, const DickeBasis& basis) {
  if (h.rows() != basis.matrix.rows() || h.rows() != h.cols()) {
    throw ContractError("expected_qfi_symmetric: Hamiltonian dimension does not match the basis");
  }
  const double c = static_cast<double>(basis.size());
  const ComplexMatrix hd = h * basis.matrix;
  const ComplexMatrix compressed = basis.matrix.adjoint() * hd;
  const double tr_ph2 = hd.squaredNorm();
  const double tr_phph = compressed.squaredNorm();
  const double tr_ph = compressed.trace().real();
  return 4.0 * (tr_ph2 / c - (tr_phph + tr_ph * tr_ph) / (c * (c + 1.0)));
}

double expected_qfi_symmetric(const ComplexMatrix& h, int n, int d) {
  return expected_qfi_symmetric(h, dicke_basis(n, d));
}

namespace {

double site_variance(const SingleSiteOperator& h) {
  const double d = h.dim();
  double s1 = 0.0, s2 = 0.0;
  for (double v : h.eigenvalues()) {
    s1 += v;
    s2 += v * v;
  }
  return s2 / d - (s1 * s1) / (d * d);
}

}  // namespace

double expected_qfi_haar_linear(const SingleSiteOperator& h, int n) {
  if (n < 1) throw ContractError("expected_qfi_haar_linear: n must be positive");
  const double dim = std::pow(static_cast<double>(h.dim()), n);
  return 4.0 * n * dim / (dim + 1.0) * site_variance(h);
}

double expected_qfi_symmetric_linear(const SingleSiteOperator& h, int n) {
  if (n < 1) throw ContractError("expected_qfi_symmetric_linear: n must be positive");
  const double d = h.dim();
  const double c = binomial(n + h.dim() - 1, n);
  return 4.0 * n * (n + d) / (d + 1.0) * c / (c + 1.0) * site_variance(h);
}

double lipschitz_constant(double norm_h, double norm_h2) {
  return 2.0 * norm_h2 + 2.0 * std::numbers::sqrt2 * norm_h * norm_h;
}

double lipschitz_constant(const ComplexMatrix& h) {
  return lipschitz_constant(spectral_norm(h), spectral_norm(h * h));
}

ConcentrationBound levy_bound(double lipschitz, double dim, double epsilon) {
  if (!(epsilon > 0.0)) throw ContractError("levy_bound: epsilon must be positive");
  if (!(lipschitz > 0.0) || !(dim > 0.0)) throw ContractError("levy_bound: lipschitz and dim must be positive");
  const double pi3 = std::pow(std::numbers::pi, 3);
  const double arg = 2.0 * dim * epsilon * epsilon / (9.0 * pi3 * lipschitz * lipschitz);
  return {epsilon, lipschitz, dim, 2.0 * std::exp(-arg), 2.0 * std::exp(-arg / std::numbers::ln2)};
}

ConcentrationBound levy_bound(const ComplexMatrix& h, double dim, double epsilon) {
  return levy_bound(lipschitz_constant(h), dim, epsilon);
}

OptimalState max_qfi_all_states(const ComplexMatrix& h, int n, int d) {
  if (static_cast<std::size_t>(h.rows()) != checked_dimension(n, d)) {
    throw ContractError("max_qfi_all_states: Hamiltonian dimension does not match n, d");
  }
  const auto eig = hermitian_eig(h);
  const auto last = eig.values.size() - 1;
  const double tol = 1e-10 * (1.0 + eig.values.cwiseAbs().maxCoeff());
  const double lo = eig.values(0);
  const double hi = eig.values(last);
  int index_max = static_cast<int>(last);
  while (index_max > 0 && hi - eig.values(index_max - 1) <= tol) --index_max;
  const bool degenerate_min = last > 0 && eig.values(1) - lo <= tol;
  const bool degenerate_max = index_max != static_cast<int>(last);
  if (hi - lo <= tol) {
    return {0.0, PureState::normalized(n, d, eig.vectors.col(0)), 0, 0, degenerate_min, degenerate_max};
  }
  const ComplexVector v = (eig.vectors.col(0) + eig.vectors.col(index_max)) / std::sqrt(2.0);
  return {(hi - lo) * (hi - lo), PureState::normalized(n, d, v), 0, index_max, degenerate_min, degenerate_max};
}

namespace {

// Unitary whose first column is exactly the unit vector v.
ComplexMatrix unitary_with_first_column(const ComplexVector& v) {
  const auto dim = v.size();
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  m.col(0) = v;
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const Complex overlap = q.col(0).dot(v);  // q0^dagger v, unit modulus
  q.col(0) *= overlap / std::abs(overlap);
  return q;
}

}  // namespace

UnitaryTransport global_unitary_transport(const PureState& psi, const ComplexMatrix& h) {
  auto optimum = max_qfi_all_states(h, psi.sites(), psi.local_dim());
  const ComplexMatrix u = unitary_with_first_column(psi.amplitudes()) *
                          unitary_with_first_column(optimum.state.amplitudes()).adjoint();
  ComplexMatrix rotated = u * h * u.adjoint();
  rotated = 0.5 * (rotated + rotated.adjoint());
  const double check = qfi(psi, rotated).value;
  return {u, check, std::move(optimum)};
}

std::vector<std::int64_t> overlap_histogram(const GraphHamiltonian& h) {
  std::vector<std::int64_t> hist(static_cast<std::size_t>(h.arity() + 1), 0);
  const auto& edges = h.hyperedges();
  std::vector<std::vector<int>> sorted;
  for (auto e : edges) {
    std::sort(e.begin(), e.end());
    sorted.push_back(std::move(e));
  }
  std::vector<int> common;
  for (const auto& a : sorted) {
    for (const auto& b : sorted) {
      common.clear();
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      ++hist[common.size()];
    }
  }
  return hist;
}

namespace {

void require_identical_sites(const GraphHamiltonian& h) {
  const auto& first = h.site_operators().front();
  for (const auto& s : h.site_operators()) {
    if (s.eigenvalues() != first.eigenvalues() || s.basis() != first.basis()) {
      throw ContractError("unsupported configuration: site operators are not identical");
    }
  }
}

}  // namespace

double product_qfi_closed_form(const std::vector<std::int64_t>& histogram, int arity, double lambda0,
                               double lambda1, double p) {
  if (p < 0.0 || p > 1.0) throw ContractError("product_qfi_closed_form: p must lie in [0, 1]");
  const double m1 = p * lambda0 + (1.0 - p) * lambda1;
  const double m2 = p * lambda0 * lambda0 + (1.0 - p) * lambda1 * lambda1;
  KahanSum total;
  for (std::size_t t = 1; t < histogram.size(); ++t) {
    const int ti = static_cast<int>(t);
    const double cov = std::pow(m1, 2 * arity - 2 * ti) * (std::pow(m2, ti) - std::pow(m1, 2 * ti));
    total.add(static_cast<double>(histogram[t]) * cov);
  }
  return 4.0 * std::max(total.value(), 0.0);
}

double product_qfi_closed_form(const GraphHamiltonian& h, double p) {
  require_identical_sites(h);
  const auto& ev = h.site_operators().front().eigenvalues();
  return product_qfi_closed_form(overlap_histogram(h), h.arity(), ev[0], ev[1], p);
}

PureState symmetric_product_state(const GraphHamiltonian& h, double p) {
  if (p < 0.0 || p > 1.0) throw ContractError("symmetric_product_state: p must lie in [0, 1]");
  require_identical_sites(h);
  const auto& basis = h.site_operators().front().basis();
  const ComplexVector site = std::sqrt(p) * basis.col(0) + std::sqrt(1.0 - p) * basis.col(1);
  return product_state(std::vector<ComplexVector>(static_cast<std::size_t>(h.sites()), site));
}

ProductOptimum max_qfi_symmetric_product(const GraphHamiltonian& h, int resolution) {
  if (resolution < 2) throw ContractError("max_qfi_symmetric_product: resolution must be at least 2");
  require_identical_sites(h);
  const auto& ev = h.site_operators().front().eigenvalues();
  const auto hist = overlap_histogram(h);
  const auto f = [&](double p) { return product_qfi_closed_form(hist, h.arity(), ev[0], ev[1], p); };
  int best = 0;
  double best_value = f(0.0);
  for (int i = 1; i <= resolution; ++i) {
    const double v = f(static_cast<double>(i) / resolution);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = std::max(0, best - 1) / static_cast<double>(resolution);
  double hi = std::min(resolution, best + 1) / static_cast<double>(resolution);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double p = 0.5 * (lo + hi);
  const double refined = f(p);
  if (refined >= best_value) return {refined, p};
  return {best_value, static_cast<double>(best) / resolution};
}

double optimal_separable_reference(const ProductDiagonalHamiltonian& h) {
  const auto& c = h.coefficients();
  const double dim = static_cast<double>(c.size());
  const double sum = c.sum();
  return 4.0 * (c.squaredNorm() / dim - sum * sum / (dim * dim));
}

double max_separable_linear(const LinearHamiltonian& h) {
  double total = 0.0;
  for (int i = 0; i < h.sites(); ++i) {
    const double spread = h.lambda().row(i).maxCoeff() - h.lambda().row(i).minCoeff();
    total += spread * spread;
  }
  return total;
}

MonteCarloSummary monte_carlo(std::size_t trials, const Rng& rng, int threads,
                              const std::function<double(Rng&, std::size_t)>& trial) {
  if (trials < 2) throw ContractError("monte_carlo: need at least two trials");
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, trials);
  MonteCarloSummary out;
  out.trials = trials;
  out.samples.assign(trials, 0.0);
  std::vector<std::exception_ptr> errors(workers);
  const auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = w; i < trials; i += workers) {
        Rng local = rng.substream(i);
        out.samples[i] = trial(local, i);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  KahanSum sum;
  for (double v : out.samples) sum.add(v);
  out.mean = sum.value() / static_cast<double>(trials);
  KahanSum sq;
  for (double v : out.samples) sq.add((v - out.mean) * (v - out.mean));
  out.sd = std::sqrt(sq.value() / static_cast<double>(trials - 1));
  out.se = out.sd / std::sqrt(static_cast<double>(trials));
  return out;
}

}  // namespace qfiwb
