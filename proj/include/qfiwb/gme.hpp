#pragma once

#include <string>
#include <vector>

#include "qfiwb/numerics.hpp"
#include "qfiwb/states.hpp"

namespace qfiwb {

struct GmeEstimate {
  double value = 0.0;       // -log2(overlap_sq)
  double overlap_sq = 0.0;  // |<witness|psi>|^2, a lower bound on the supremum
  std::vector<ComplexVector> witness;
  int restarts = 0;
  int best_restart = 0;
  int sweeps = 0;           // sweeps used by the best restart
  bool converged = false;
  std::vector<double> trace;  // overlap after every single-site update of the best restart
};

struct GmeOptions {
  int restarts = 8;
  int max_iters = 500;  // full sweeps per restart
  double tol = 1e-13;
  std::uint64_t seed = 0;
};

/// Alternating single-site maximization of |<a_1 ... a_n|psi>|^2. Restart 0 starts from the
/// largest computational-basis amplitude, later restarts from random product states.
/// Throws NumericalError if an update lowers the overlap by more than 1e-12.
GmeEstimate gme(const PureState& state, const GmeOptions& options = {});

/// Certified bracket on the GME of a qubit state with n <= 4, from a Bloch-sphere grid over the
/// first n - 2 sites and an exact optimization over the last two.
struct CertifiedGme {
  double grid_overlap_sq = 0.0;  // attained, so GME <= -log2(grid_overlap_sq)
  double overlap_sq_upper = 0.0; // sup overlap <= this
  double lower = 0.0;            // GME >= lower
  double upper = 0.0;            // GME <= upper
  double covering_angle = 0.0;
  std::uint64_t grid_points = 0;
};

CertifiedGme gme_grid_oracle(const PureState& state, double covering_angle);

struct SymmetrizedAmplitudes {
  int n = 0;
  std::vector<double> a;  // a_k = sqrt(p_k / C(n,k))
  std::vector<double> b;  // b_k = sqrt((a_k^2 + a_{n-k}^2)/2)
};

struct Symmetrization {
  SymmetrizedAmplitudes amplitudes;
  PureState state;  // amplitude b_k on every weight-k basis vector
};

/// Hamming weight counts the label 1 entries.
Symmetrization symmetrize_amplitudes(const PureState& state);

/// 4 delta^2 Var[K] for K distributed as C(n,k) b_k^2: the QFI of the symmetrized state for
/// H_S = sum_i (lambda0 |0><0| + lambda1 |1><1|)_i with delta = lambda1 - lambda0.
double symmetrized_qfi_by_weights(const SymmetrizedAmplitudes& amps, double delta);

/// Requires 1 < c < 2 and n^(c-1) > ln n, else DomainError naming the failed condition.
void require_gme_hypothesis(int n, double c);
/// n - {2(n^(c-1) - ln n) + c ln n}/ln 2.
double gme_threshold(int n, double c);
/// n - 2 n^(c-1)/ln 2 + (2 - c) ln n / ln 2, the exponent grouping used for the amplitude cap.
double gme_threshold_cap_form(int n, double c);

/// 2^(-n + 2 n^(c-1)/ln 2 - (2-c) ln n / ln 2). Requires c < 2.
double amplitude_cap(int n, double c);
/// 6 delta^2 n^c.
double qfi_cap(int n, double c, double delta);

/// Weight distribution q_k = C(n,k) b_k^2 with b_k^2 <= cap, reflection symmetric, filled
/// proportionally to `shape` (shape_k = shape_{n-k} enforced by averaging) by water-filling.
std::vector<double> capped_weights(int n, double cap, std::vector<double> shape);
/// Symmetric qubit state with weight distribution q (amplitude sqrt(q_k / C(n,k))).
PureState state_from_weights(int n, const std::vector<double>& q);

enum class GmeOutcome { kEstablished, kRefuted, kUndetermined };

struct GmeReport {
  int n = 0;
  double c = 0.0;
  double delta = 0.0;
  GmeEstimate estimate;
  bool certified = false;
  CertifiedGme certificate;
  bool hypothesis_in_domain = false;  // 1 < c < 2 and n^(c-1) > ln n
  double threshold = 0.0;
  double threshold_cap_form = 0.0;
  double qfi_state = 0.0;
  double qfi_sym = 0.0;
  double qfi_cap = 0.0;
  double n_pow_c = 0.0;
  bool caps_hold = false;         // every b_k^2 <= amplitude_cap
  GmeOutcome outcome = GmeOutcome::kUndetermined;
  /// Checked only when established: qfi_state <= qfi_sym + 1e-9 and qfi_sym <= qfi_cap + 1e-6.
  bool chain_holds = true;
  bool below_n_pow_c = false;     // qfi_state < n^c, reported only

  std::string describe() const;
};

/// H_S = delta * (number of 1s). The certified grid oracle is used for n <= 4.
GmeReport verify_result2(const PureState& state, double c, double delta, const GmeOptions& options = {},
                             double covering_angle = 0.02);

}  // namespace qfiwb
