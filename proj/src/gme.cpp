#include "qfiwb/gme.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qfiwb/nets.hpp"
#include "qfiwb/qfi.hpp"

namespace qfiwb {

namespace {

// v[a] = sum over x with x_j = a of psi_x * prod_{i != j} conj(w_i[x_i]).
ComplexVector contract_all_but(const PureState& state, const std::vector<ComplexVector>& w, int j,
                               const std::vector<std::vector<int>>& digits) {
  const int d = state.local_dim();
  ComplexVector v = ComplexVector::Zero(d);
  for (std::size_t x = 0; x < state.dim(); ++x) {
    Complex term = state.amplitudes()(static_cast<Eigen::Index>(x));
    const auto& dx = digits[x];
    for (int i = 0; i < state.sites() && term != 0.0; ++i) {
      if (i != j) term *= std::conj(w[static_cast<std::size_t>(i)](dx[static_cast<std::size_t>(i)]));
    }
    v(dx[static_cast<std::size_t>(j)]) += term;
  }
  return v;
}

double overlap_sq(const PureState& state, const std::vector<ComplexVector>& w,
                  const std::vector<std::vector<int>>& digits) {
  const ComplexVector v = contract_all_but(state, w, 0, digits);
  return std::norm(w.front().dot(v));
}

ComplexVector random_site(int d, Rng& rng) {
  ComplexVector v(d);
  for (auto& z : v) z = rng.complex_normal();
  return v.normalized();
}

struct RestartResult {
  std::vector<ComplexVector> witness;
  double overlap_sq = 0.0;
  int sweeps = 0;
  bool converged = false;
  std::vector<double> trace;
};

RestartResult ascend(const PureState& state, std::vector<ComplexVector> w, const GmeOptions& opt,
                     const std::vector<std::vector<int>>& digits) {
  RestartResult r;
  double current = overlap_sq(state, w, digits);
  r.trace.push_back(current);
  for (int sweep = 0; sweep < opt.max_iters; ++sweep) {
    const double start = current;
    for (int j = 0; j < state.sites(); ++j) {
      const ComplexVector v = contract_all_but(state, w, j, digits);
      const double norm = v.norm();
      if (norm == 0.0) continue;
      w[static_cast<std::size_t>(j)] = v / norm;
      const double next = norm * norm;
      if (next < current - 1e-12) {
        throw NumericalError("gme: coordinate update decreased the overlap");
      }
      current = std::max(current, next);
      r.trace.push_back(current);
    }
    r.sweeps = sweep + 1;
    if (current - start < opt.tol) {
      r.converged = true;
      break;
    }
  }
  r.witness = std::move(w);
  r.overlap_sq = std::min(current, 1.0);
  return r;
}

}  // namespace

GmeEstimate gme(const PureState& state, const GmeOptions& options) {
  if (options.restarts < 1 || options.max_iters < 1) throw ContractError("gme: restarts and max_iters must be positive");
  const int n = state.sites();
  const int d = state.local_dim();
  std::vector<std::vector<int>> digits(state.dim());
  for (std::size_t x = 0; x < state.dim(); ++x) digits[x] = digits_of(x, n, d);

  GmeEstimate best;
  best.restarts = options.restarts;
  best.overlap_sq = -1.0;
  const Rng base(options.seed, 0x67e3);
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<ComplexVector> init;
    if (r == 0) {
      Eigen::Index top = 0;
      state.amplitudes().cwiseAbs().maxCoeff(&top);
      for (int v : digits[static_cast<std::size_t>(top)]) init.push_back(ComplexVector::Unit(d, v));
    } else {
      Rng rng = base.substream(static_cast<std::uint64_t>(r));
      for (int i = 0; i < n; ++i) init.push_back(random_site(d, rng));
    }
    auto result = ascend(state, std::move(init), options, digits);
    if (result.overlap_sq > best.overlap_sq) {
      best.overlap_sq = result.overlap_sq;
      best.witness = std::move(result.witness);
      best.best_restart = r;
      best.sweeps = result.sweeps;
      best.converged = result.converged;
      best.trace = std::move(result.trace);
    }
  }
  best.value = best.overlap_sq > 0.0 ? -std::log2(best.overlap_sq) : std::numeric_limits<double>::infinity();
  best.value = std::max(best.value, 0.0);
  return best;
}

namespace {

// Largest squared singular value of a 2x2 matrix.
double top_singular_sq(Complex m00, Complex m01, Complex m10, Complex m11) {
  const double fro = std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
  const double det = std::norm(m00 * m11 - m01 * m10);
  return 0.5 * (fro + std::sqrt(std::max(0.0, fro * fro - 4.0 * det)));
}

// Contract the leading site of a qubit tensor with conj(b).
ComplexVector contract_front(const ComplexVector& t, const ComplexVector& b) {
  const auto half = t.size() / 2;
  return std::conj(b(0)) * t.head(half) + std::conj(b(1)) * t.tail(half);
}

}  // namespace

CertifiedGme gme_grid_oracle(const PureState& state, double covering_angle) {
  const int n = state.sites();
  if (state.local_dim() != 2) throw ContractError("gme_grid_oracle: qubit states only");
  if (n > 4) throw SizeError("gme_grid_oracle: limited to n <= 4");
  CertifiedGme out;
  if (n == 1) {
    out.grid_overlap_sq = out.overlap_sq_upper = 1.0;
    return out;
  }
  const ComplexVector& psi = state.amplitudes();
  const auto tail_value = [](const ComplexVector& t) { return top_singular_sq(t(0), t(1), t(2), t(3)); };
  double best = 0.0;
  if (n == 2) {
    best = tail_value(psi);
    out.grid_points = 1;
  } else {
    const QubitNet net(covering_angle);
    out.covering_angle = net.covering_angle();
    std::vector<ComplexVector> points(net.size());
    for (std::uint64_t i = 0; i < net.size(); ++i) points[i] = net.state(i);
    for (const auto& b1 : points) {
      const ComplexVector t1 = contract_front(psi, b1);
      if (n == 3) {
        best = std::max(best, tail_value(t1));
        continue;
      }
      for (const auto& b2 : points) best = std::max(best, tail_value(contract_front(t1, b2)));
    }
    out.grid_points = n == 3 ? points.size() : static_cast<std::uint64_t>(points.size()) * points.size();
  }
  out.grid_overlap_sq = std::min(best, 1.0);
  out.overlap_sq_upper = std::min(1.0, best + (n - 2) * std::sin(out.covering_angle / 2.0));
  out.lower = -std::log2(out.overlap_sq_upper);
  out.upper = -std::log2(out.grid_overlap_sq);
  return out;
}

Symmetrization symmetrize_amplitudes(const PureState& state) {
  if (state.local_dim() != 2) throw ContractError("symmetrize_amplitudes: qubit states only");
  const int n = state.sites();
  std::vector<KahanSum> p(static_cast<std::size_t>(n + 1));
  for (std::size_t x = 0; x < state.dim(); ++x) {
    p[static_cast<std::size_t>(std::popcount(x))].add(std::norm(state.amplitudes()(static_cast<Eigen::Index>(x))));
  }
  SymmetrizedAmplitudes amps;
  amps.n = n;
  for (int k = 0; k <= n; ++k) amps.a.push_back(std::sqrt(p[static_cast<std::size_t>(k)].value() / binomial(n, k)));
  for (int k = 0; k <= n; ++k) {
    const double ak = amps.a[static_cast<std::size_t>(k)];
    const double ank = amps.a[static_cast<std::size_t>(n - k)];
    amps.b.push_back(std::sqrt((ak * ak + ank * ank) / 2.0));
  }
  ComplexVector out(static_cast<Eigen::Index>(state.dim()));
  for (std::size_t x = 0; x < state.dim(); ++x) {
    out(static_cast<Eigen::Index>(x)) = amps.b[static_cast<std::size_t>(std::popcount(x))];
  }
  return {std::move(amps), PureState::normalized(n, 2, std::move(out))};
}

double symmetrized_qfi_by_weights(const SymmetrizedAmplitudes& amps, double delta) {
  KahanSum m1, m2;
  for (int k = 0; k <= amps.n; ++k) {
    const double b = amps.b[static_cast<std::size_t>(k)];
    const double q = binomial(amps.n, k) * b * b;
    m1.add(q * k);
    m2.add(q * k * k);
  }
  const double var = std::max(0.0, m2.value() - m1.value() * m1.value());
  return 4.0 * delta * delta * var;
}

void require_gme_hypothesis(int n, double c) {
  if (n < 1) throw DomainError("hypothesis: n must be positive");
  if (!(c > 1.0)) throw DomainError("hypothesis violated: c > 1 fails");
  if (!(c < 2.0)) throw DomainError("hypothesis violated: c < 2 fails");
  if (!(std::pow(n, c - 1.0) > std::log(n))) {
    throw DomainError("hypothesis violated: n^(c-1) > ln n fails");
  }
}

namespace {

double threshold_grouped(int n, double c) {
  const double ln_n = std::log(static_cast<double>(n));
  return n - (2.0 * (std::pow(n, c - 1.0) - ln_n) + c * ln_n) / std::numbers::ln2;
}

double threshold_cap_form(int n, double c) {
  const double ln_n = std::log(static_cast<double>(n));
  return n - 2.0 * std::pow(n, c - 1.0) / std::numbers::ln2 + (2.0 - c) * ln_n / std::numbers::ln2;
}

}  // namespace

double gme_threshold(int n, double c) {
  require_gme_hypothesis(n, c);
  return threshold_grouped(n, c);
}

double gme_threshold_cap_form(int n, double c) {
  require_gme_hypothesis(n, c);
  return threshold_cap_form(n, c);
}

double amplitude_cap(int n, double c) {
  if (n < 1) throw DomainError("amplitude_cap: n must be positive");
  if (!(c < 2.0)) throw DomainError("amplitude_cap: requires c < 2");
  return std::exp2(-threshold_cap_form(n, c));
}

double qfi_cap(int n, double c, double delta) { return 6.0 * delta * delta * std::pow(n, c); }

std::vector<double> capped_weights(int n, double cap, std::vector<double> shape) {
  if (static_cast<int>(shape.size()) != n + 1) throw ContractError("capped_weights: shape needs n + 1 entries");
  std::vector<double> s(shape.size()), u(shape.size());
  double reachable = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    s[i] = 0.5 * (shape[i] + shape[static_cast<std::size_t>(n - k)]);
    if (s[i] < 0.0) throw ContractError("capped_weights: shape must be non-negative");
    u[i] = binomial(n, k) * cap;
    if (s[i] > 0.0) reachable += u[i];
  }
  if (reachable < 1.0) throw DomainError("capped_weights: caps on the supported weights sum to less than 1");
  const auto fill = [&](double t) {
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) total += std::min(u[i], t * s[i]);
    return total;
  };
  double lo = 0.0, hi = 1.0;
  while (fill(hi) < 1.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fill(mid) < 1.0 ? lo : hi) = mid;
  }
  std::vector<double> q(s.size());
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += q[i] = std::min(u[i], hi * s[i]);
  for (auto& v : q) v /= total;
  return q;
}

PureState state_from_weights(int n, const std::vector<double>& q) {
  if (static_cast<int>(q.size()) != n + 1) throw ContractError("state_from_weights: need n + 1 weights");
  const auto dim = checked_dimension(n, 2);
  ComplexVector amps(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    const int k = std::popcount(x);
    amps(static_cast<Eigen::Index>(x)) = std::sqrt(q[static_cast<std::size_t>(k)] / binomial(n, k));
  }
  return PureState::normalized(n, 2, std::move(amps));
}

std::string GmeReport::describe() const {
  std::ostringstream out;
  switch (outcome) {
    case GmeOutcome::kEstablished:
      out << "hypothesis established (certified GME >= " << certificate.lower << " > threshold " << threshold
          << "); chain " << (chain_holds ? "holds" : "VIOLATED");
      break;
    case GmeOutcome::kRefuted:
      out << "hypothesis not established (GME <= " << estimate.value << " <= threshold " << threshold << ")";
      break;
    case GmeOutcome::kUndetermined:
      out << "hypothesis not established ("
          << (hypothesis_in_domain ? "GME not certified above threshold" : "parameter conditions fail") << ")";
      break;
  }
  return out.str();
}

GmeReport verify_result2(const PureState& state, double c, double delta, const GmeOptions& options,
                             double covering_angle) {
  if (state.local_dim() != 2) throw ContractError("verify_result2: qubit states only");
  const int n = state.sites();
  GmeReport r;
  r.n = n;
  r.c = c;
  r.delta = delta;
  r.estimate = gme(state, options);
  try {
    require_gme_hypothesis(n, c);
    r.hypothesis_in_domain = true;
  } catch (const DomainError&) {
    r.hypothesis_in_domain = false;
  }
  r.threshold = threshold_grouped(n, c);
  r.threshold_cap_form = threshold_cap_form(n, c);

  std::vector<double> energies(state.dim());
  for (std::size_t x = 0; x < state.dim(); ++x) energies[x] = delta * std::popcount(x);
  const auto sym = symmetrize_amplitudes(state);
  r.qfi_state = qfi(state, energies).value;
  r.qfi_sym = qfi(sym.state, energies).value;
  r.qfi_cap = qfi_cap(n, c, delta);
  r.n_pow_c = std::pow(n, c);
  r.below_n_pow_c = r.qfi_state < r.n_pow_c;
  r.caps_hold = c < 2.0;
  if (r.caps_hold) {
    const double cap = amplitude_cap(n, c);
    for (double b : sym.amplitudes.b) r.caps_hold = r.caps_hold && b * b <= cap * (1.0 + 1e-12);
  }

  if (n <= 4) {
    r.certificate = gme_grid_oracle(state, n <= 3 ? covering_angle : std::max(covering_angle, 0.1));
    r.certified = true;
  }
  if (!r.hypothesis_in_domain) {
    r.outcome = GmeOutcome::kUndetermined;
  } else if (r.certified && r.certificate.lower > r.threshold) {
    r.outcome = GmeOutcome::kEstablished;
    r.chain_holds = r.caps_hold && r.qfi_state <= r.qfi_sym + 1e-9 && r.qfi_sym <= r.qfi_cap + 1e-6;
  } else if (r.estimate.value <= r.threshold || (r.certified && r.certificate.upper <= r.threshold)) {
    r.outcome = GmeOutcome::kRefuted;
  } else {
    r.outcome = GmeOutcome::kUndetermined;
  }
  return r;
}

}  // namespace qfiwb
