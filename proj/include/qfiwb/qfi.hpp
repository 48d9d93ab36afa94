#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qfiwb/hamiltonians.hpp"
#include "qfiwb/states.hpp"

namespace qfiwb {

/// F_Q = 4 (<H^2> - <H>^2) for a pure probe state.
struct QfiReport {
  double value = 0.0;
  double mean_H = 0.0;
  double mean_H2 = 0.0;
};

/// Levy-type tail bounds for f = F_Q / 4. Values above 1 are kept as computed.
struct ConcentrationBound {
  double epsilon = 0.0;
  double lipschitz = 0.0;
  double dim = 0.0;
  double two_sided = 0.0;
  double one_sided = 0.0;
  bool two_sided_vacuous() const { return two_sided >= 1.0; }
  bool one_sided_vacuous() const { return one_sided >= 1.0; }
};

/// Negative variances within 1e-9 are clipped to 0; larger ones raise NumericalError.
QfiReport qfi(const PureState& state, const ComplexMatrix& h);
/// H given by its diagonal in the computational basis.
QfiReport qfi(const PureState& state, std::span<const double> diagonal);

/// 4 E_Haar[f] = 4 (Tr H^2/(D+1) - (Tr H)^2/(D(D+1))).
double expected_qfi_haar(const ComplexMatrix& h);
/// 4 E_sym[f] = 4 (Tr[P H^2]/r - (Tr[P H P H] + Tr[P H]^2)/(r(r+1))) for the symmetric projector P
/// of rank r, with traces taken in the Dicke frame. When H commutes with P this is
/// 4 (Tr[P H^2 P]/(r+1) - Tr[P H P]^2/(r(r+1))).
double expected_qfi_symmetric(const ComplexMatrix& h, const DickeBasis& basis);
double expected_qfi_symmetric(const ComplexMatrix& h, int n, int d);

/// Closed forms for H = sum_i h on every site.
double expected_qfi_haar_linear(const SingleSiteOperator& h, int n);
double expected_qfi_symmetric_linear(const SingleSiteOperator& h, int n);

/// 2 ||H^2|| + 2 sqrt(2) ||H||^2.
double lipschitz_constant(const ComplexMatrix& h);
double lipschitz_constant(double norm_h, double norm_h2);

/// 2 exp(-2 dim eps^2 / (9 pi^3 L^2)) and the one-sided variant with an extra ln 2 in the
/// denominator. Throws ContractError unless eps > 0.
ConcentrationBound levy_bound(double lipschitz, double dim, double epsilon);
ConcentrationBound levy_bound(const ComplexMatrix& h, double dim, double epsilon);

struct OptimalState {
  double value = 0.0;
  PureState state;
  int index_min = 0;  // eigen-index of lambda_min used
  int index_max = 0;  // eigen-index of lambda_max used
  bool degenerate_min = false;
  bool degenerate_max = false;
};

/// (|lambda_max> + |lambda_min>)/sqrt(2) with value (lambda_max - lambda_min)^2. Ties go to the
/// lowest eigen-index.
OptimalState max_qfi_all_states(const ComplexMatrix& h, int n, int d);

struct UnitaryTransport {
  ComplexMatrix unitary;
  /// F_Q(psi, U H U^dagger).
  double check = 0.0;
  OptimalState optimum;
};

/// Unitary U with U |optimal> = psi, so that psi is optimal for U H U^dagger.
UnitaryTransport global_unitary_transport(const PureState& psi, const ComplexMatrix& h);

/// Squared-overlap histogram of a graph Hamiltonian: hist[t] counts ordered hyperedge pairs
/// sharing exactly t sites.
std::vector<std::int64_t> overlap_histogram(const GraphHamiltonian& h);

/// QFI of (sqrt(p)|b0> + sqrt(1-p)|b1>)^n, with b0, b1 the common site eigenbasis.
double product_qfi_closed_form(const GraphHamiltonian& h, double p);
double product_qfi_closed_form(const std::vector<std::int64_t>& histogram, int arity, double lambda0,
                               double lambda1, double p);
/// The symmetric product state for parameter p, in the site eigenbasis.
PureState symmetric_product_state(const GraphHamiltonian& h, double p);

struct ProductOptimum {
  double value = 0.0;
  double p = 0.0;
};

/// Maximizes product_qfi_closed_form over p in [0, 1]: scan at `resolution` + 1 points, then
/// golden-section refinement inside the best cell. Requires identical site operators.
ProductOptimum max_qfi_symmetric_product(const GraphHamiltonian& h, int resolution = 2000);

/// 4 (Tr H^2 / D - (Tr H)^2 / D^2): QFI of the uniform superposition of the product eigenbasis.
double optimal_separable_reference(const ProductDiagonalHamiltonian& h);

/// Maximum QFI over product states for a linear Hamiltonian: sum_i (max_j lambda_ij - min_j lambda_ij)^2.
double max_separable_linear(const LinearHamiltonian& h);

struct MonteCarloSummary {
  std::size_t trials = 0;
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  std::vector<double> samples;  // in trial order
};

/// Runs `trial(rng_for_trial, index)` for every index; trial i always sees rng.substream(i), so the
/// result does not depend on the thread count.
MonteCarloSummary monte_carlo(std::size_t trials, const Rng& rng, int threads,
                              const std::function<double(Rng&, std::size_t)>& trial);

}  // namespace qfiwb
