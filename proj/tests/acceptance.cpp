// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qfiwb/experiments.hpp"
#include "qfiwb/gme.hpp"
#include "qfiwb/graphs.hpp"
#include "qfiwb/nets.hpp"
#include "qfiwb/qfi.hpp"

using namespace qfiwb;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

ExperimentResult run(const std::string& name, const std::string& text) {
  std::istringstream in(text);
  return run_experiment(parse_config(in, name));
}

void ac1(Outcome& o) {
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    std::vector<oracle::Mat> z(n, oracle::Mat(2, 2)), x(n, oracle::Mat(2, 2));
    for (int i = 0; i < n; ++i) {
      z[i] << 0, 0, 0, 1;
      x[i] << 0.5, -0.5, -0.5, 0.5;
    }
    const auto g = ghz(n).amplitudes();
    worst = std::max(worst, std::abs(oracle::variance_qfi(g, oracle::local_sum(z)) - n * n));
    worst = std::max(worst, std::abs(oracle::variance_qfi(g, oracle::local_sum(x)) - n));
  }
  o.require(run("ghz-baseline", "n_min = 3\nn_max = 8\n").pass, "ghz-baseline driver");
  o.require(worst <= 1e-9, "GHZ deviation");
  o.detail << "max deviation " << worst;
}

void ac2(Outcome& o) {
  const auto h01 = SingleSiteOperator::computational({0.0, 1.0});
  o.require(std::abs(expected_qfi_haar_linear(h01, 2) - 1.6) <= 1e-12, "E_Haar = 1.6");
  o.require(std::abs(expected_qfi_symmetric_linear(h01, 2) - 2.0) <= 1e-12, "E_sym = 2.0");
  const std::size_t draws = 100000;
  double worst_z = 0.0;
  int index = 0;
  for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
    const int dim = static_cast<int>(oracle::power(d, n));
    Rng hrng(2024, static_cast<std::uint64_t>(index));
    const ComplexMatrix h_gen = random_hermitian(dim, hrng);
    std::vector<double> ev(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) ev[static_cast<std::size_t>(j)] = j;
    const SingleSiteOperator site(ev, random_unitary(d, hrng));
    const ComplexMatrix h_lin = dense(LinearHamiltonian::uniform(site, n));
    const auto p_sym = oracle::symmetric_projector(n, d);
    const auto id = oracle::Mat::Identity(dim, dim);
    // Closed forms against the projector-trace oracle.
    o.require(std::abs(expected_qfi_haar(h_gen) - oracle::expected_qfi_on_subspace(h_gen, id)) <= 1e-10, "Haar formula");
    o.require(std::abs(expected_qfi_symmetric(h_gen, n, d) - oracle::expected_qfi_on_subspace(h_gen, p_sym)) <= 1e-10,
              "symmetric formula");
    o.require(std::abs(expected_qfi_haar_linear(site, n) - oracle::expected_qfi_on_subspace(h_lin, id)) <= 1e-10,
              "Haar linear closed form");
    o.require(std::abs(expected_qfi_symmetric_linear(site, n) - oracle::expected_qfi_on_subspace(h_lin, p_sym)) <= 1e-10,
              "symmetric linear closed form");
    const DickeBasis basis = dicke_basis(n, d);
    for (bool haar : {true, false}) {
      const Rng stream(77, static_cast<std::uint64_t>(10 * index + haar));
      for (bool lin : {false, true}) {
        const ComplexMatrix& h = lin ? h_lin : h_gen;
        const double cf = lin ? (haar ? expected_qfi_haar_linear(site, n) : expected_qfi_symmetric_linear(site, n))
                              : (haar ? expected_qfi_haar(h) : expected_qfi_symmetric(h, basis));
        const auto mc = monte_carlo(draws, stream, 1, [&](Rng& rng, std::size_t) {
          return qfi(haar ? sample_haar(n, d, rng) : sample_symmetric(basis, rng), h).value;
        });
        const double z = std::abs(mc.mean - cf) / mc.se;
        worst_z = std::max(worst_z, z);
        std::ostringstream what;
        what << "(" << n << "," << d << ") " << (haar ? "Haar" : "symmetric") << (lin ? " linear" : " general")
             << " z=" << z;
        o.require(z < 3.0, what.str());
      }
    }
    ++index;
  }
  o.detail << "16 Monte Carlo comparisons of 1e5 draws, max |z| = " << worst_z;
}

void ac3(Outcome& o) {
  Rng root(303);
  int violations = 0;
  double slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 200; ++t) {
    Rng rng = root.substream(static_cast<std::uint64_t>(t));
    const int n = 1 + static_cast<int>(rng.below(4));
    std::vector<ComplexMatrix> b;
    for (int i = 0; i < n; ++i) b.push_back(random_unitary(2, rng));
    RealVector coeffs(1 << n);
    for (auto& c : coeffs) c = rng.normal();
    const ProductDiagonalHamiltonian h(b, coeffs);
    const ComplexMatrix hd = dense(h);
    const double haar = oracle::expected_qfi_on_subspace(hd, oracle::Mat::Identity(hd.rows(), hd.rows()));
    const double ref = optimal_separable_reference(h);
    // The reference must be attained by a product state.
    oracle::Vec v = b[0].rowwise().sum() / std::sqrt(2.0);
    for (int i = 1; i < n; ++i) v = kron(v, ComplexVector(b[i].rowwise().sum() / std::sqrt(2.0)));
    o.require(std::abs(oracle::variance_qfi(v, hd) - ref) <= 1e-9 * std::max(1.0, ref), "reference attained");
    violations += haar > ref + 1e-9;
    slack = std::min(slack, ref - haar);
  }
  o.require(violations == 0, "Haar mean above separable reference");
  o.detail << "200 Hamiltonians, violations " << violations << ", min slack " << slack;
}

void ac4(Outcome& o) {
  Rng root(404);
  std::map<std::pair<int, int>, oracle::Mat> projectors;
  int violations = 0;
  double worst_residual = 0.0;
  for (int t = 0; t < 200; ++t) {
    Rng rng = root.substream(static_cast<std::uint64_t>(t));
    const int n = 1 + static_cast<int>(rng.below(5));
    const int d = 2 + static_cast<int>(rng.below(2));
    Eigen::MatrixXd lambda(n, d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) lambda(i, j) = rng.normal();
    }
    const LinearHamiltonian h(lambda, random_unitary(d, rng));
    const auto hs = symmetrize_linear(h);
    auto& p = projectors[{n, d}];
    if (p.size() == 0) p = oracle::symmetric_projector(n, d);
    const double e_l = oracle::expected_qfi_on_subspace(dense(h), p);
    const double e_s = oracle::expected_qfi_on_subspace(dense(hs), p);
    const DickeBasis basis = dicke_basis(n, d);
    o.require(std::abs(expected_qfi_symmetric(dense(h), basis) - e_l) <= 1e-9 * std::max(1.0, e_l), "Dicke-frame E_sym");
    violations += e_l < e_s - 1e-9;
    ComplexMatrix u_n = h.basis();
    for (int i = 1; i < n; ++i) u_n = kron(u_n, h.basis());
    const ComplexMatrix rotated = u_n * basis.matrix;
    const ComplexMatrix m = rotated.adjoint() * dense(hs) * rotated;
    const auto totals = h.label_totals();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        double want = 0.0;
        if (r == c) {
          for (int j = 0; j < d; ++j) want += basis.compositions[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * totals[static_cast<std::size_t>(j)] / n;
        }
        worst_residual = std::max(worst_residual, std::abs(m(r, c) - want));
      }
    }
  }
  o.require(violations == 0, "symmetrization raised E_sym");
  o.require(worst_residual <= 1e-10, "Dicke eigenrelation");
  o.detail << "200 Hamiltonians, violations " << violations << ", eigenrelation residual " << worst_residual;
}

void ac5(Outcome& o) {
  Rng root(505);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Rng rng = root.substream(static_cast<std::uint64_t>(t));
    const int n = 1 + static_cast<int>(rng.below(3));
    const int dim = 1 << n;
    const ComplexMatrix h = random_hermitian(dim, rng);
    const auto psi = sample_haar(n, 2, rng);
    const auto tr = global_unitary_transport(psi, h);
    const ComplexMatrix rotated = tr.unitary * h * tr.unitary.adjoint();
    const auto es = hermitian_eig(h);
    const double spread = es.values(dim - 1) - es.values(0);
    worst = std::max(worst, std::abs(oracle::variance_qfi(psi.amplitudes(), rotated) - spread * spread));
    o.require((tr.unitary.adjoint() * tr.unitary - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-10,
              "unitarity");
  }
  o.require(worst <= 1e-7, "transported QFI");
  o.detail << "100 pairs, max |F - spread^2| = " << worst;
}

void ac6(Outcome& o) {
  const auto r = run("result2-verify", "trials = 1000\nn_max = 8\ncap_n_max = 12\nc_list = 1.2, 1.5, 1.8\n");
  o.require(r.pass, "result2-verify driver");
  // Independent re-check of the symmetrization inequality with the variance oracle.
  Rng root(606);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = root.substream(static_cast<std::uint64_t>(t));
    const int n = 2 + t % 7;
    const auto psi = sample_haar(n, 2, rng);
    oracle::Mat h = oracle::Mat::Zero(1 << n, 1 << n);
    for (int x = 0; x < (1 << n); ++x) h(x, x) = 0.7 * std::popcount(static_cast<unsigned>(x));
    const auto sym = symmetrize_amplitudes(psi);
    violations += oracle::variance_qfi(psi.amplitudes(), h) > oracle::variance_qfi(sym.state.amplitudes(), h) + 1e-9;
  }
  o.require(violations == 0, "oracle symmetrization check");
  o.detail << r.rows.size() << " driver records (violations " << r.summary["violations"] << "), oracle re-check violations "
           << violations << ", GHZ8: " << r.summary["ghz8"]["outcome"].get<std::string>();
}

void ac7(Outcome& o) {
  const int n = 5;
  const std::int64_t sc = n * (n - 1) / 2;
  struct Row {
    Shape shape;
    std::int64_t s, disjoint, connected;
    double max_prod;
  };
  for (const Row& row : {Row{Shape::kStar, n - 1, 0, (n - 1) * (n - 2), (n - 1.0) * (n - 1.0)},
                         Row{Shape::kChain, n - 1, n * n - 5 * n + 6, 2 * n - 4, 3.0 * n - 5},
                         Row{Shape::kRing, n, n * n - 3 * n, 2 * n, 3.0 * n},
                         Row{Shape::kComplete, sc, sc * (n - 2) * (n - 3) / 2, sc * 2 * (n - 2), n * (n - 1) * (n - 1.5)}}) {
    const auto g = preset(row.shape, n);
    const auto brute = oracle::census(g.edges());
    const auto by_degree = census_by_degrees(g.degrees());
    const auto table = census_table_row(row.shape, n);
    const std::string name = shape_name(row.shape);
    o.require(brute.same == row.s && brute.disjoint == row.disjoint && brute.connected == row.connected, name + " brute force");
    o.require(by_degree.s == row.s && by_degree.disjoint == row.disjoint && by_degree.connected == row.connected,
              name + " degree formula");
    o.require(table.s == row.s && table.disjoint == row.disjoint && table.connected == row.connected, name + " closed form");
    o.require(table.max_all == static_cast<double>(row.s * row.s), name + " max_all");
    o.require(table.max_prod == row.max_prod && row.max_prod == static_cast<double>(brute.same + brute.connected),
              name + " max_prod");
  }
  // k-body rows at (8, 3).
  const int m = 8, k = 3;
  const auto ring = oracle::census(preset(Shape::kRing, m, k).edges());
  o.require(ring.same == m && ring.disjoint == m * (m - 2 * k + 1) && ring.same + ring.connected == (2 * k - 1) * m,
            "k-body ring");
  const auto complete = oracle::census(preset(Shape::kComplete, m, k).edges());
  o.require(complete.same == 56 && complete.disjoint == 560, "k-body complete");
  const auto chain = oracle::census(preset(Shape::kChain, m, k).edges());
  o.require(chain.same == m - k + 1, "k-body chain");
  for (Shape s : {Shape::kChain, Shape::kRing, Shape::kComplete}) {
    const auto g = preset(s, m, k);
    const auto b = oracle::census(g.edges());
    const auto row = kbody_table_row(s, m, k);
    const auto lib = kbody_census(g);
    o.require(lib.s == b.same && lib.disjoint == b.disjoint && lib.connected == b.connected, shape_name(s) + " k-body census");
    o.require(row.s == b.same && (row.disjoint < 0 || row.disjoint == b.disjoint) &&
                  (row.connected < 0 || row.connected == b.connected),
              shape_name(s) + " k-body closed form");
  }
  Rng root(707);
  int mismatches = 0;
  for (int t = 0; t < 500; ++t) {
    Rng rng = root.substream(static_cast<std::uint64_t>(t));
    const int size = 2 + static_cast<int>(rng.below(11));
    const auto g = InteractionGraph::random(size, rng.uniform(), rng);
    const auto b = oracle::census(g.edges());
    const auto f = census_by_degrees(g.degrees());
    mismatches += !(f.s == b.same && f.disjoint == b.disjoint && f.connected == b.connected);
  }
  o.require(mismatches == 0, "random graph degree formulas");
  o.require(run("table-census", "").pass, "table-census driver");
  o.detail << "tables at n=5 and (8,3) exact; 500 random graphs, mismatches " << mismatches;
}

void ac8(Outcome& o) {
  double worst = 0.0;
  int cases = 0;
  for (Shape s : {Shape::kStar, Shape::kChain, Shape::kRing, Shape::kComplete}) {
    for (int n = 3; n <= 8; ++n) {
      const auto g = preset(s, n);
      const auto h = g.hamiltonian(0.5, 1.7);
      const auto hd = oracle::graph_dense(n, g.edges(), 0.5, 1.7);
      for (int i = 1; i <= 9; ++i) {
        const double p = i / 10.0;
        oracle::Vec site(2);
        site << std::sqrt(p), std::sqrt(1 - p);
        oracle::Vec v = site;
        for (int j = 1; j < n; ++j) v = kron(v, site);
        worst = std::max(worst, std::abs(product_qfi_closed_form(h, p) - oracle::variance_qfi(v, hd)));
        ++cases;
      }
    }
  }
  o.require(worst <= 1e-8, "closed form vs dense");
  o.detail << cases << " (shape, n, p) cases, max deviation " << worst;
}

void ac9(Outcome& o) {
  const auto r = run("net-audit", "n = 2\ntrials = 200\nstates = 100\neps = 0.5\neps_property = 1.0\n");
  o.require(r.summary["grid_radius_ok"].get<bool>(), "grid covering radius");
  o.require(r.summary["cover_violations"].get<std::size_t>() == 0, "cover audit");
  o.require(r.summary["symmetric_mean_violations"].get<std::size_t>() == 0, "first deviation audit");
  o.require(r.summary["separable_violations"].get<std::size_t>() == 0, "second deviation audit");
  o.require(r.pass, "net-audit driver");
  o.detail << "200 cover trials max distance " << r.summary["max_distance"] << "; deviation audits max "
           << r.summary["symmetric_mean_max_deviation"] << " / " << r.summary["separable_max_deviation"] << " at eps 1";
}

void ac10(Outcome& o) {
  const auto t7 = run("bound-sweep", "bound = thm7\nd = 14\nn_min = 4\nn_max = 64\n");
  const auto t9 = run("bound-sweep", "bound = thm9\nd = 2\nn_min = 4\nn_max = 64\n");
  o.require(t7.pass, "d=14 log-bound tail");
  o.require(t9.pass, "a = n log-bound tail");
  const auto conc = run("concentration", "n = 12\ntrials = 10000\neps = 1.0\n");
  const bool non_vacuous = !conc.summary["two_sided_vacuous"].get<bool>();
  o.require(non_vacuous, "concentration bound is non-vacuous");
  o.require(conc.pass, "exceedance within bound");
  o.detail << "d=14 decreasing from n=" << t7.summary["decreasing_from_n"] << ", a=n decreasing from n="
           << t9.summary["decreasing_from_n"] << "; exceedance " << conc.summary["two_sided_frequency"] << " <= bound "
           << conc.summary["two_sided_bound"];
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << name << " " << (o.pass ? "PASS" : "FAIL") << " [" << std::fixed << std::setprecision(2) << secs
              << " s] " << std::defaultfloat << o.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
