#include "qfiwb/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

namespace qfiwb {

namespace bases {

ComplexMatrix computational(int d) {
  if (d < 1) throw ContractError("basis dimension must be positive");
  return ComplexMatrix::Identity(d, d);
}

ComplexMatrix plus_minus() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix b(2, 2);
  b << r, r, r, -r;
  return b;
}

bool is_orthonormal(const ComplexMatrix& basis, double tol) {
  if (basis.rows() != basis.cols()) return false;
  const ComplexMatrix gram = basis.adjoint() * basis;
  return (gram - ComplexMatrix::Identity(basis.rows(), basis.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace bases

namespace {

void require_basis(const ComplexMatrix& basis, Eigen::Index d, const char* what) {
  if (basis.rows() != d || basis.cols() != d) {
    throw ContractError(std::string(what) + ": basis must be " + std::to_string(d) + "x" +
                        std::to_string(d));
  }
  if (!bases::is_orthonormal(basis)) {
    throw ContractError(std::string(what) + ": basis is not orthonormal");
  }
}

// Base-d digit of site `site` in configuration x (site 0 most significant).
int digit(std::size_t x, int site, int n, int d) {
  for (int s = n - 1; s > site; --s) x /= static_cast<std::size_t>(d);
  return static_cast<int>(x % static_cast<std::size_t>(d));
}

ComplexMatrix product_basis(const std::vector<ComplexMatrix>& site_bases) {
  ComplexMatrix u = site_bases.front();
  for (std::size_t j = 1; j < site_bases.size(); ++j) u = kron(u, site_bases[j]);
  return u;
}

ComplexMatrix embed(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) out = kron(out, factors[j]);
  return out;
}

}  // namespace

SingleSiteOperator::SingleSiteOperator(std::vector<double> eigenvalues, ComplexMatrix basis)
    : eigenvalues_(std::move(eigenvalues)), basis_(std::move(basis)) {
  if (eigenvalues_.empty()) throw ContractError("single-site operator needs at least one level");
  require_basis(basis_, static_cast<Eigen::Index>(eigenvalues_.size()), "SingleSiteOperator");
}

SingleSiteOperator SingleSiteOperator::computational(std::vector<double> eigenvalues) {
  const int d = static_cast<int>(eigenvalues.size());
  return SingleSiteOperator(std::move(eigenvalues), bases::computational(d));
}

SingleSiteOperator SingleSiteOperator::plus_minus(double lambda0, double lambda1) {
  return SingleSiteOperator({lambda0, lambda1}, bases::plus_minus());
}

bool SingleSiteOperator::non_degenerate() const {
  std::vector<double> sorted = eigenvalues_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

ComplexMatrix SingleSiteOperator::matrix() const {
  RealVector values = Eigen::Map<const RealVector>(eigenvalues_.data(), dim());
  return basis_ * values.cast<Complex>().asDiagonal() * basis_.adjoint();
}

LinearHamiltonian::LinearHamiltonian(Eigen::MatrixXd lambda, ComplexMatrix shared_basis)
    : lambda_(std::move(lambda)), basis_(std::move(shared_basis)) {
  if (lambda_.rows() < 1 || lambda_.cols() < 1) {
    throw ContractError("LinearHamiltonian: eigenvalue table must be non-empty");
  }
  require_basis(basis_, lambda_.cols(), "LinearHamiltonian");
}

LinearHamiltonian LinearHamiltonian::uniform(const SingleSiteOperator& h, int n) {
  if (n < 1) throw ContractError("LinearHamiltonian: n must be positive");
  Eigen::MatrixXd table(n, h.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < h.dim(); ++j) table(i, j) = h.eigenvalues()[static_cast<std::size_t>(j)];
  }
  return LinearHamiltonian(std::move(table), h.basis());
}

SingleSiteOperator LinearHamiltonian::site(int i) const {
  std::vector<double> values(static_cast<std::size_t>(local_dim()));
  for (int j = 0; j < local_dim(); ++j) values[static_cast<std::size_t>(j)] = lambda_(i, j);
  return SingleSiteOperator(std::move(values), basis_);
}

bool LinearHamiltonian::has_equal_rows(double tol) const {
  for (int i = 1; i < sites(); ++i) {
    if ((lambda_.row(i) - lambda_.row(0)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

std::vector<double> LinearHamiltonian::label_totals() const {
  std::vector<double> totals(static_cast<std::size_t>(local_dim()));
  for (int j = 0; j < local_dim(); ++j) totals[static_cast<std::size_t>(j)] = lambda_.col(j).sum();
  return totals;
}

double LinearHamiltonian::label_gap() const {
  const auto totals = label_totals();
  const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
  return *hi - *lo;
}

ProductDiagonalHamiltonian::ProductDiagonalHamiltonian(std::vector<ComplexMatrix> site_bases,
                                                       RealVector coefficients)
    : site_bases_(std::move(site_bases)), coefficients_(std::move(coefficients)) {
  if (site_bases_.empty()) throw ContractError("ProductDiagonalHamiltonian: no sites");
  const auto d = site_bases_.front().rows();
  for (const auto& b : site_bases_) require_basis(b, d, "ProductDiagonalHamiltonian");
  const auto dim = checked_dimension(sites(), static_cast<int>(d));
  if (static_cast<std::size_t>(coefficients_.size()) != dim) {
    throw ContractError("ProductDiagonalHamiltonian: need d^n = " + std::to_string(dim) +
                        " coefficients, got " + std::to_string(coefficients_.size()));
  }
}

bool ProductDiagonalHamiltonian::computational() const {
  const auto d = site_bases_.front().rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return std::all_of(site_bases_.begin(), site_bases_.end(),
                     [&](const ComplexMatrix& b) { return b == id; });
}

GraphHamiltonian::GraphHamiltonian(int n, std::vector<std::vector<int>> hyperedges,
                                   std::vector<SingleSiteOperator> site_operators,
                                   bool require_positive)
    : n_(n), arity_(0), hyperedges_(std::move(hyperedges)), sites_(std::move(site_operators)) {
  if (n_ < 1) throw ContractError("GraphHamiltonian: n must be positive");
  if (static_cast<int>(sites_.size()) != n_) {
    throw ContractError("GraphHamiltonian: need one site operator per site");
  }
  for (const auto& h : sites_) {
    if (h.dim() != 2) throw ContractError("GraphHamiltonian: site operators must be qubit operators");
    if (require_positive && !(0.0 < h.eigenvalues()[0] && h.eigenvalues()[0] < h.eigenvalues()[1])) {
      throw ContractError("GraphHamiltonian: convention 0 < lambda0 < lambda1 violated");
    }
  }
  std::set<std::vector<int>> seen;
  for (const auto& e : hyperedges_) {
    if (e.empty()) throw ContractError("GraphHamiltonian: empty hyperedge");
    if (arity_ == 0) arity_ = static_cast<int>(e.size());
    if (static_cast<int>(e.size()) != arity_) {
      throw ContractError("GraphHamiltonian: mixed hyperedge arity");
    }
    std::vector<int> sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= n_) {
      throw ContractError("GraphHamiltonian: hyperedge index out of range");
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ContractError("GraphHamiltonian: repeated site within a hyperedge");
    }
    if (!seen.insert(sorted).second) {
      throw ContractError("GraphHamiltonian: duplicate hyperedge");
    }
  }
}

GraphHamiltonian GraphHamiltonian::uniform(int n, std::vector<std::vector<int>> hyperedges,
                                           double lambda0, double lambda1, bool require_positive) {
  std::vector<SingleSiteOperator> sites(static_cast<std::size_t>(std::max(n, 0)),
                                        SingleSiteOperator::computational({lambda0, lambda1}));
  return GraphHamiltonian(n, std::move(hyperedges), std::move(sites), require_positive);
}

bool GraphHamiltonian::uniform_computational() const {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return std::all_of(sites_.begin(), sites_.end(), [&](const SingleSiteOperator& h) {
    return h.basis() == id && h.eigenvalues() == sites_.front().eigenvalues();
  });
}

ComplexMatrix dense(const ProductDiagonalHamiltonian& h) {
  const ComplexMatrix diag = h.coefficients().cast<Complex>().asDiagonal();
  if (h.computational()) return diag;
  const ComplexMatrix u = product_basis(h.site_bases());
  ComplexMatrix out = u * diag * u.adjoint();
  // Restore exact Hermiticity lost to rounding.
  return 0.5 * (out + out.adjoint());
}

ProductDiagonalHamiltonian to_product_diagonal(const LinearHamiltonian& h) {
  const int n = h.sites();
  const int d = h.local_dim();
  const auto dim = checked_dimension(n, d);
  RealVector coeffs(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += h.lambda()(i, digit(x, i, n, d));
    coeffs(static_cast<Eigen::Index>(x)) = total;
  }
  return ProductDiagonalHamiltonian(std::vector<ComplexMatrix>(static_cast<std::size_t>(n), h.basis()),
                                    std::move(coeffs));
}

ProductDiagonalHamiltonian to_product_diagonal(const GraphHamiltonian& h) {
  const int n = h.sites();
  const auto dim = checked_dimension(n, 2);
  RealVector coeffs = RealVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    double total = 0.0;
    for (const auto& e : h.hyperedges()) {
      double term = 1.0;
      for (int site : e) {
        term *= h.site_operators()[static_cast<std::size_t>(site)]
                    .eigenvalues()[static_cast<std::size_t>(digit(x, site, n, 2))];
      }
      total += term;
    }
    coeffs(static_cast<Eigen::Index>(x)) = total;
  }
  std::vector<ComplexMatrix> site_bases;
  site_bases.reserve(static_cast<std::size_t>(n));
  for (const auto& s : h.site_operators()) site_bases.push_back(s.basis());
  return ProductDiagonalHamiltonian(std::move(site_bases), std::move(coeffs));
}

ComplexMatrix dense(const LinearHamiltonian& h) { return dense(to_product_diagonal(h)); }

ComplexMatrix dense(const GraphHamiltonian& h) {
  const int n = h.sites();
  const auto dim = checked_dimension(n, 2);
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  std::vector<ComplexMatrix> site_matrices;
  for (const auto& s : h.site_operators()) site_matrices.push_back(s.matrix());
  for (const auto& e : h.hyperedges()) {
    std::vector<ComplexMatrix> factors(static_cast<std::size_t>(n), id);
    for (int site : e) factors[static_cast<std::size_t>(site)] = site_matrices[static_cast<std::size_t>(site)];
    out += embed(factors);
  }
  return out;
}

ComplexMatrix dense(const AnyHamiltonian& h) {
  return std::visit([](const auto& x) { return dense(x); }, h);
}

LinearHamiltonian symmetrize_linear(const LinearHamiltonian& h) {
  Eigen::MatrixXd table(h.sites(), h.local_dim());
  const Eigen::RowVectorXd mean = h.lambda().colwise().mean();
  for (int i = 0; i < h.sites(); ++i) table.row(i) = mean;
  return LinearHamiltonian(std::move(table), h.basis());
}

ComplexMatrix permutation_matrix(const std::vector<int>& pi, int d) {
  const int n = static_cast<int>(pi.size());
  std::vector<int> sorted = pi;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    if (sorted[static_cast<std::size_t>(i)] != i) {
      throw ContractError("permutation_matrix: not a permutation of 0..n-1");
    }
  }
  const auto dim = checked_dimension(n, d);
  ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<std::size_t> place(static_cast<std::size_t>(n));  // place value of each site
  std::size_t pv = 1;
  for (int s = n - 1; s >= 0; --s) {
    place[static_cast<std::size_t>(s)] = pv;
    pv *= static_cast<std::size_t>(d);
  }
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = 0;
    for (int j = 0; j < n; ++j) {
      y += static_cast<std::size_t>(digit(x, j, n, d)) * place[static_cast<std::size_t>(pi[static_cast<std::size_t>(j)])];
    }
    v(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1.0;
  }
  return v;
}

double spectral_spread(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw ContractError("spectral_spread: square matrix required");
  const bool diagonal = (h - ComplexMatrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  if (diagonal) {
    if (h.diagonal().imag().cwiseAbs().maxCoeff() > 1e-12) {
      throw ContractError("spectral_spread: matrix is not Hermitian");
    }
    const RealVector re = h.diagonal().real();
    return re.maxCoeff() - re.minCoeff();
  }
  const auto eig = hermitian_eig(h);
  return eig.values(eig.values.size() - 1) - eig.values(0);
}

// ---------------------------------------------------------------------------
// JSON specification files

namespace {

nlohmann::json basis_to_json(const ComplexMatrix& b) {
  if (b == bases::computational(static_cast<int>(b.rows()))) return "computational";
  if (b.rows() == 2 && b == bases::plus_minus()) return "plus_minus";
  nlohmann::json cols = nlohmann::json::array();
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    nlohmann::json col = nlohmann::json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) col.push_back({b(r, c).real(), b(r, c).imag()});
    cols.push_back(col);
  }
  return cols;
}

ComplexMatrix basis_from_json(const nlohmann::json& j, int d) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "computational") return bases::computational(d);
    if (name == "plus_minus") {
      if (d != 2) throw ContractError("plus_minus basis requires d = 2");
      return bases::plus_minus();
    }
    throw ContractError("unknown basis name '" + name + "'");
  }
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    throw ContractError("explicit basis must list d column vectors");
  }
  ComplexMatrix b(d, d);
  for (int c = 0; c < d; ++c) {
    const auto& col = j.at(static_cast<std::size_t>(c));
    if (static_cast<int>(col.size()) != d) throw ContractError("basis vector has wrong length");
    for (int r = 0; r < d; ++r) {
      const auto& z = col.at(static_cast<std::size_t>(r));
      b(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return b;
}

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ContractError("unknown key '" + key + "' in Hamiltonian specification");
    }
  }
}

}  // namespace

nlohmann::json to_json(const LinearHamiltonian& h) {
  nlohmann::json table = nlohmann::json::array();
  for (int i = 0; i < h.sites(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < h.local_dim(); ++j) row.push_back(h.lambda()(i, j));
    table.push_back(row);
  }
  return {{"family", "linear"}, {"n", h.sites()}, {"d", h.local_dim()},
          {"basis", basis_to_json(h.basis())}, {"lambda", table}};
}

nlohmann::json to_json(const ProductDiagonalHamiltonian& h) {
  nlohmann::json site_bases = nlohmann::json::array();
  for (const auto& b : h.site_bases()) site_bases.push_back(basis_to_json(b));
  std::vector<double> coeffs(h.coefficients().data(), h.coefficients().data() + h.coefficients().size());
  return {{"family", "product_diagonal"}, {"n", h.sites()}, {"d", h.local_dim()},
          {"bases", site_bases}, {"coefficients", coeffs}};
}

nlohmann::json to_json(const GraphHamiltonian& h) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : h.hyperedges()) {
    nlohmann::json edge = nlohmann::json::array();
    for (int s : e) edge.push_back(s + 1);
    edges.push_back(edge);
  }
  nlohmann::json lambda = nlohmann::json::array();
  nlohmann::json site_bases = nlohmann::json::array();
  for (const auto& s : h.site_operators()) {
    lambda.push_back(s.eigenvalues());
    site_bases.push_back(basis_to_json(s.basis()));
  }
  return {{"family", "graph"}, {"n", h.sites()}, {"d", 2}, {"lambda", lambda},
          {"bases", site_bases}, {"hyperedges", edges}};
}

nlohmann::json to_json(const AnyHamiltonian& h) {
  return std::visit([](const auto& x) { return to_json(x); }, h);
}

AnyHamiltonian hamiltonian_from_json(const nlohmann::json& j) {
  const auto family = j.at("family").get<std::string>();
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  if (n < 1 || d < 1) throw ContractError("n and d must be positive");
  if (family == "linear") {
    reject_unknown_keys(j, {"family", "n", "d", "basis", "lambda"});
    const auto& rows = j.at("lambda");
    if (static_cast<int>(rows.size()) != n) throw ContractError("lambda must have n rows");
    Eigen::MatrixXd table(n, d);
    for (int i = 0; i < n; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (static_cast<int>(row.size()) != d) throw ContractError("lambda rows must have d entries");
      for (int k = 0; k < d; ++k) table(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return LinearHamiltonian(std::move(table), basis_from_json(j.value("basis", nlohmann::json("computational")), d));
  }
  if (family == "product_diagonal") {
    reject_unknown_keys(j, {"family", "n", "d", "bases", "basis", "coefficients"});
    std::vector<ComplexMatrix> site_bases;
    if (j.contains("bases")) {
      const auto& bs = j.at("bases");
      if (static_cast<int>(bs.size()) != n) throw ContractError("bases must list one basis per site");
      for (const auto& b : bs) site_bases.push_back(basis_from_json(b, d));
    } else {
      site_bases.assign(static_cast<std::size_t>(n),
                        basis_from_json(j.value("basis", nlohmann::json("computational")), d));
    }
    const auto coeffs = j.at("coefficients").get<std::vector<double>>();
    RealVector c = Eigen::Map<const RealVector>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
    return ProductDiagonalHamiltonian(std::move(site_bases), std::move(c));
  }
  if (family == "graph") {
    reject_unknown_keys(j, {"family", "n", "d", "lambda", "bases", "basis", "hyperedges", "positive"});
    if (d != 2) throw ContractError("graph Hamiltonians are qubit Hamiltonians (d = 2)");
    std::vector<std::vector<int>> edges;
    for (const auto& e : j.at("hyperedges")) {
      std::vector<int> edge;
      for (const auto& s : e) edge.push_back(s.get<int>() - 1);
      edges.push_back(std::move(edge));
    }
    const auto& lam = j.at("lambda");
    std::vector<SingleSiteOperator> sites;
    for (int i = 0; i < n; ++i) {
      const auto values = lam.at(0).is_array() ? lam.at(static_cast<std::size_t>(i)).get<std::vector<double>>()
                                               : lam.get<std::vector<double>>();
      nlohmann::json b = j.contains("bases") ? j.at("bases").at(static_cast<std::size_t>(i))
                                             : j.value("basis", nlohmann::json("computational"));
      sites.emplace_back(values, basis_from_json(b, 2));
    }
    return GraphHamiltonian(n, std::move(edges), std::move(sites), j.value("positive", false));
  }
  throw ContractError("unknown Hamiltonian family '" + family + "'");
}

AnyHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open Hamiltonian file '" + path + "'");
  return hamiltonian_from_json(nlohmann::json::parse(in));
}

void save_hamiltonian(const std::string& path, const AnyHamiltonian& h) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write Hamiltonian file '" + path + "'");
  out << to_json(h).dump(2) << '\n';
}

}  // namespace qfiwb
