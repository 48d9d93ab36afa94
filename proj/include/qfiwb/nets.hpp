#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfiwb/hamiltonians.hpp"
#include "qfiwb/states.hpp"

namespace qfiwb {

/// Two mirrored ladders {B - 2 eps_c k} and {-B + 2 eps_c k}, k = 0..K, K = ceil((B - A)/(2 eps_c)).
struct CoefficientGrid {
  double A = 0.0;
  double B = 0.0;
  double eps_c = 0.0;
  int K = 0;
  std::vector<double> points;  // positive ladder first, then negative ladder

  std::size_t size() const { return points.size(); }
  double nearest(double mu) const;
  /// Spacing / 2 = eps_c by construction.
  double covering_radius() const { return eps_c; }
};

CoefficientGrid coefficient_grid(double A, double B, double eps_c);

/// Latitude/longitude grid on the Bloch sphere. Bands of polar width dtheta = pi/ceil(pi/eps_p);
/// band i holds max(1, ceil(2 pi sin(theta_max)/dtheta)) equally spaced points on its centre
/// line, so every state lies within Bloch angle dtheta, hence trace-norm distance
/// 2 sin(angle/2) <= eps_p, of the point returned by nearest(). Points are generated on demand.
class QubitNet {
 public:
  explicit QubitNet(double eps_p);

  double eps_p() const { return eps_p_; }
  double dtheta() const { return dtheta_; }
  std::uint64_t size() const { return offsets_.back(); }
  ComplexVector state(std::uint64_t index) const;
  /// Columns: the net state and its orthogonal complement (-e^{-i phi} sin, cos).
  ComplexMatrix frame(std::uint64_t index) const;
  std::uint64_t nearest(const ComplexVector& v) const;
  /// Largest Bloch angle between any state and its nearest() point; at most dtheta.
  double covering_angle() const { return dtheta_; }

 private:
  double eps_p_;
  double dtheta_;
  std::vector<int> ring_sizes_;
  std::vector<std::uint64_t> offsets_;
};

/// Trace-norm distance || |u><u| - |v><v| ||_1 = 2 sqrt(1 - |<u|v>|^2).
double trace_distance(const ComplexVector& u, const ComplexVector& v);

/// Parameters of the net-size and union-bound expressions.
struct BoundParams {
  int n = 1;
  int d = 2;
  double s_coff = 1.0;
  double s_basis = 1.0;
  double A = 1.0;
  double B = 2.0;
  double a = 1.0;       // max_m ||A_m||
  double norm_A0 = 0.0;
  double C = 18.0;      // basis-net constant
  double c = 1.0;
  double eps = 0.5;
  /// Value used for Theta(n) in the exponent denominator, with its provenance.
  double theta = 1.0;
  std::string theta_source = "unset";
};

enum class EpsilonMode { kCover, kSymmetricMean, kSeparable };

struct EpsilonChoice {
  double eps_p = 0.0;
  double eps_c = 0.0;
};

EpsilonChoice epsilon_choices(double eps, const BoundParams& params, EpsilonMode mode);

enum class NetBound { kSymmetricMean, kSeparable };

/// Natural log of the cardinality bound, evaluated at the given eps_p, eps_c.
double net_size_bound(const BoundParams& params, NetBound which, EpsilonChoice choice);
/// As above with the matching epsilon_choices(params.eps, ...).
double net_size_bound(const BoundParams& params, NetBound which);

enum class TheoremBound { kSymmetricMean, kSeparable };

struct BoundEvaluation {
  double log_prefactor = 0.0;    // log of the net-size factor
  double log_exponential = 0.0;  // log of 2 exp(-...)
  double log_total = 0.0;
  bool vacuous = false;          // total >= 1
};

/// Union bound over the net: net size times 2 exp(-2 D (c - eps + D_min)^2 / (144 pi^3 ln 2
/// (2 + 2 sqrt 2)^2 Theta^4)), with D = C(n+d-1, n) for thm7 and d^n for thm9. Theta is
/// params.theta for thm7 and s_coff B a + ||A0|| for thm9.
BoundEvaluation theorem_bound(const BoundParams& params, TheoremBound which, double d_min);

/// The constructive net over qubit linear Hamiltonians sum_i sum_j mu_ij |phi_j><phi_j|_i with
/// coefficients in [-B,-A] u [A,B] and one shared basis.
class LinearNet {
 public:
  LinearNet(int n, double A, double B, EpsilonChoice choice);

  int sites() const { return n_; }
  const CoefficientGrid& grid() const { return grid_; }
  const QubitNet& basis_net() const { return basis_net_; }
  /// log |N| = 2n log |grid| + log |basis net|.
  double log_size() const;
  /// Representative: per-coefficient nearest grid point, nearest frame for the basis.
  LinearHamiltonian representative(const LinearHamiltonian& h) const;
  /// Net element from grid indices (row-major n x 2, into grid().points) and a frame index.
  LinearHamiltonian element(const std::vector<std::size_t>& coefficient_indices,
                            std::uint64_t frame_index) const;

 private:
  int n_;
  CoefficientGrid grid_;
  QubitNet basis_net_;
};

/// Uniform draw from S_L (d = 2): |mu_ij| uniform on [A, B] with random sign, Haar basis.
LinearHamiltonian sample_linear_family(int n, double A, double B, Rng& rng);

/// Parameters describing the d = 2 linear family in the net formulas: s_coff = 2n coefficients,
/// rank-one projector terms (a = 1), A0 = 0, s_basis = n.
BoundParams linear_family_params(int n, double A, double B, double eps, double C = 18.0);

struct CoverAudit {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double eps = 0.0;
  double max_distance = 0.0;
  std::vector<double> distances;
  nlohmann::json counterexample;  // first violating H, null if none
};

/// Draws `trials` members of S_L and checks ||H - H_rep|| <= eps for the representative.
CoverAudit net_cover_audit(const LinearNet& net, double A, double B, double eps, std::size_t trials,
                           Rng& rng);

enum class PropertyCheck { kSymmetricMean, kSeparable };

struct PropertyAudit {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double eps = 0.0;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
  std::vector<double> deviations;
  nlohmann::json counterexample;
};

/// Deviation of F_Q(psi,H) - E_sym[F_Q(psi,H_S)] (kSymmetricMean) or F_Q(psi,H) - max_sep F_Q(H) (kSeparable)
/// between H and its representative, for Haar psi.
double property_deviation(const PureState& psi, const LinearHamiltonian& h, const LinearHamiltonian& rep,
                          PropertyCheck which);
PropertyAudit property_audit(const LinearNet& net, double A, double B, double eps, std::size_t trials,
                             PropertyCheck which, Rng& rng);

}  // namespace qfiwb
