#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfiwb/numerics.hpp"

namespace qfiwb {

/// Named single-site bases. Columns are the basis vectors.
namespace bases {
ComplexMatrix computational(int d);
/// {|+>, |->} for a qubit.
ComplexMatrix plus_minus();
bool is_orthonormal(const ComplexMatrix& basis, double tol = 1e-10);
}  // namespace bases

/// Hermitian operator on one site: sum_j eigenvalues[j] |basis_j><basis_j|.
class SingleSiteOperator {
 public:
  SingleSiteOperator(std::vector<double> eigenvalues, ComplexMatrix basis);

  static SingleSiteOperator computational(std::vector<double> eigenvalues);
  /// lambda0 |+><+| + lambda1 |-><-|
  static SingleSiteOperator plus_minus(double lambda0, double lambda1);

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& basis() const { return basis_; }
  bool non_degenerate() const;
  ComplexMatrix matrix() const;

 private:
  std::vector<double> eigenvalues_;
  ComplexMatrix basis_;
};

/// H = sum_i h_i on site i, every h_i diagonal in one shared basis.
/// lambda(i, j) is the eigenvalue of h_i on basis vector j.
class LinearHamiltonian {
 public:
  LinearHamiltonian(Eigen::MatrixXd lambda, ComplexMatrix shared_basis);

  /// H_S: every site carries the same operator h.
  static LinearHamiltonian uniform(const SingleSiteOperator& h, int n);

  int sites() const { return static_cast<int>(lambda_.rows()); }
  int local_dim() const { return static_cast<int>(lambda_.cols()); }
  const Eigen::MatrixXd& lambda() const { return lambda_; }
  const ComplexMatrix& basis() const { return basis_; }
  SingleSiteOperator site(int i) const;
  bool has_equal_rows(double tol = 0.0) const;

  /// Column sums sum_i lambda(i, j).
  std::vector<double> label_totals() const;
  /// max_{j, j'} |sum_i lambda(i,j) - sum_i lambda(i,j')|; the S_L gap parameter.
  double label_gap() const;

 private:
  Eigen::MatrixXd lambda_;
  ComplexMatrix basis_;
};

/// Diagonal in the product basis (x)_j {|phi_k>_j}. coefficients[x] belongs to the
/// configuration x written in base d with site 0 as the most significant digit.
class ProductDiagonalHamiltonian {
 public:
  ProductDiagonalHamiltonian(std::vector<ComplexMatrix> site_bases, RealVector coefficients);

  int sites() const { return static_cast<int>(site_bases_.size()); }
  int local_dim() const { return static_cast<int>(site_bases_.front().rows()); }
  const std::vector<ComplexMatrix>& site_bases() const { return site_bases_; }
  const RealVector& coefficients() const { return coefficients_; }
  bool computational() const;

 private:
  std::vector<ComplexMatrix> site_bases_;
  RealVector coefficients_;
};

/// k-body qubit Hamiltonian sum_{e in hyperedges} (x)_{i in e} h_i. Site indices are 0-based.
class GraphHamiltonian {
 public:
  /// `require_positive` enables the 0 < lambda0 < lambda1 convention for every site.
  GraphHamiltonian(int n, std::vector<std::vector<int>> hyperedges,
                   std::vector<SingleSiteOperator> site_operators, bool require_positive = false);

  /// Every site carries lambda0 |0><0| + lambda1 |1><1|.
  static GraphHamiltonian uniform(int n, std::vector<std::vector<int>> hyperedges, double lambda0,
                                  double lambda1, bool require_positive = false);

  int sites() const { return n_; }
  int arity() const { return arity_; }
  const std::vector<std::vector<int>>& hyperedges() const { return hyperedges_; }
  const std::vector<SingleSiteOperator>& site_operators() const { return sites_; }
  /// True when all sites carry the same eigenvalues in the computational basis.
  bool uniform_computational() const;

 private:
  int n_;
  int arity_;
  std::vector<std::vector<int>> hyperedges_;
  std::vector<SingleSiteOperator> sites_;
};

ComplexMatrix dense(const LinearHamiltonian& h);
ComplexMatrix dense(const ProductDiagonalHamiltonian& h);
/// Term-by-term Kronecker expansion with identity padding.
ComplexMatrix dense(const GraphHamiltonian& h);

/// Spectrum of a linear Hamiltonian as a product-diagonal one (coefficients by enumeration).
ProductDiagonalHamiltonian to_product_diagonal(const LinearHamiltonian& h);
/// Requires each site's basis to be its own product factor.
ProductDiagonalHamiltonian to_product_diagonal(const GraphHamiltonian& h);

/// H_S' = (1/n!) sum_pi V(pi) H V(pi)^dagger, evaluated in closed form: every row becomes the
/// mean row.
LinearHamiltonian symmetrize_linear(const LinearHamiltonian& h);

/// V(pi) for a permutation of n sites with local dimension d. `pi[j]` is the image of site j,
/// so V(pi) moves the factor on site j to site pi[j].
ComplexMatrix permutation_matrix(const std::vector<int>& pi, int d);

/// lambda_max - lambda_min.
double spectral_spread(const ComplexMatrix& h);

// Hamiltonian specification files (JSON). Hyperedge indices are 1-based on disk.
nlohmann::json to_json(const LinearHamiltonian& h);
nlohmann::json to_json(const ProductDiagonalHamiltonian& h);
nlohmann::json to_json(const GraphHamiltonian& h);

using AnyHamiltonian = std::variant<LinearHamiltonian, ProductDiagonalHamiltonian, GraphHamiltonian>;

ComplexMatrix dense(const AnyHamiltonian& h);
nlohmann::json to_json(const AnyHamiltonian& h);
AnyHamiltonian hamiltonian_from_json(const nlohmann::json& j);
AnyHamiltonian load_hamiltonian(const std::string& path);
void save_hamiltonian(const std::string& path, const AnyHamiltonian& h);

}  // namespace qfiwb
