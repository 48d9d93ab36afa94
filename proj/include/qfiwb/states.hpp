#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qfiwb/numerics.hpp"

namespace qfiwb {

/// Unit vector over the computational product basis of n sites of dimension d.
/// Index x is read in base d with site 0 as the most significant digit.
class PureState {
 public:
  /// Throws ContractError unless the amplitudes have unit norm within 1e-12.
  PureState(int n, int d, ComplexVector amplitudes);
  /// Rescales `amplitudes` to unit norm first.
  static PureState normalized(int n, int d, ComplexVector amplitudes);

  int sites() const { return n_; }
  int local_dim() const { return d_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  int n_;
  int d_;
  ComplexVector amplitudes_;
};

/// Generalized Dicke basis of the symmetric subspace.
struct DickeBasis {
  int n = 0;
  int d = 0;
  /// k[j] = number of sites carrying label j. Colexicographic order: compare from the last
  /// label backwards, ascending.
  std::vector<std::vector<int>> compositions;
  /// d^n x C(n+d-1, n); column c is |k_c, n>, real with non-negative entries.
  ComplexMatrix matrix;

  std::size_t size() const { return compositions.size(); }
  PureState column(std::size_t c) const;
};

DickeBasis dicke_basis(int n, int d);

/// (1/n!) sum_pi V(pi), assembled entrywise. Requires n <= 6.
ComplexMatrix symmetric_projector(int n, int d);

PureState sample_haar(int n, int d, Rng& rng);
/// Haar on the symmetric subspace: Gaussian coordinates in the Dicke frame.
PureState sample_symmetric(const DickeBasis& basis, Rng& rng);
PureState sample_symmetric(int n, int d, Rng& rng);

/// (|b0>^n + |b1>^n)/sqrt(2) for orthonormal b0, b1.
PureState ghz(int n, const ComplexVector& b0, const ComplexVector& b1);
PureState ghz(int n);

/// (|0>^n + |1>^n + |+>^n + |->^n), normalized by its computed norm.
PureState superposition_state(int n);

/// Tensor product of unit site vectors (all of the same dimension).
PureState product_state(const std::vector<ComplexVector>& site_states);

/// Text dump: header line "n d", then one "index re im" line per amplitude.
void write_state(std::ostream& out, const PureState& state);
PureState read_state(std::istream& in);
void save_state(const std::string& path, const PureState& state);
PureState load_state(const std::string& path);

}  // namespace qfiwb
