#include "qfiwb/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "qfiwb/qfi.hpp"

namespace qfiwb {

InteractionGraph::InteractionGraph(int n, std::vector<std::vector<int>> edges)
    : n_(n), arity_(0), edges_(std::move(edges)) {
  if (n_ < 1) throw ContractError("InteractionGraph: n must be positive");
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    if (e.empty()) throw ContractError("InteractionGraph: empty edge");
    if (arity_ == 0) arity_ = static_cast<int>(e.size());
    if (static_cast<int>(e.size()) != arity_) throw ContractError("InteractionGraph: mixed arity");
    if (e.front() < 0 || e.back() >= n_) throw ContractError("InteractionGraph: vertex index out of range");
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw ContractError("InteractionGraph: repeated vertex in an edge (self-loop)");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw ContractError("InteractionGraph: duplicate edge");
  }
}

InteractionGraph InteractionGraph::star(int n) {
  std::vector<std::vector<int>> edges;
  for (int i = 1; i < n; ++i) edges.push_back({0, i});
  return InteractionGraph(n, std::move(edges));
}

InteractionGraph InteractionGraph::chain(int n) { return kbody_chain(n, 2); }

InteractionGraph InteractionGraph::ring(int n) { return kbody_ring(n, 2); }

InteractionGraph InteractionGraph::complete(int n) { return kbody_complete(n, 2); }

InteractionGraph InteractionGraph::kbody_chain(int n, int k) {
  if (k < 1 || n < k) throw ContractError("kbody_chain: need n >= k >= 1");
  std::vector<std::vector<int>> edges;
  for (int i = 0; i + k <= n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) e[static_cast<std::size_t>(j)] = i + j;
    edges.push_back(std::move(e));
  }
  return InteractionGraph(n, std::move(edges));
}

InteractionGraph InteractionGraph::kbody_ring(int n, int k) {
  if (k < 1 || n <= k) throw ContractError("kbody_ring: need n > k >= 1");
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) e[static_cast<std::size_t>(j)] = (i + j) % n;
    edges.push_back(std::move(e));
  }
  return InteractionGraph(n, std::move(edges));
}

InteractionGraph InteractionGraph::kbody_complete(int n, int k) {
  if (k < 1 || n < k) throw ContractError("kbody_complete: need n >= k >= 1");
  std::vector<std::vector<int>> edges;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> e;
    for (int i = 0; i < n; ++i) {
      if (pick[static_cast<std::size_t>(i)]) e.push_back(i);
    }
    edges.push_back(std::move(e));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return InteractionGraph(n, std::move(edges));
}

InteractionGraph InteractionGraph::random(int n, double p, Rng& rng) {
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.push_back({i, j});
    }
  }
  return InteractionGraph(n, std::move(edges));
}

std::vector<int> InteractionGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& e : edges_) {
    for (int v : e) ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

GraphHamiltonian InteractionGraph::hamiltonian(double lambda0, double lambda1, bool require_positive) const {
  return GraphHamiltonian::uniform(n_, edges_, lambda0, lambda1, require_positive);
}

PairCensus kbody_census(const InteractionGraph& g) {
  PairCensus c;
  const auto& edges = g.edges();
  c.s = static_cast<std::int64_t>(edges.size());
  c.all = c.s * c.s;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (i == j) continue;
      const auto& a = edges[i];
      const auto& b = edges[j];
      bool shared = false;
      for (int v : a) shared = shared || std::binary_search(b.begin(), b.end(), v);
      ++(shared ? c.connected : c.disjoint);
    }
  }
  return c;
}

PairCensus census_bruteforce(const InteractionGraph& g) {
  if (g.arity() != 2 && !g.edges().empty()) throw ContractError("census_bruteforce: 2-body graph required");
  return kbody_census(g);
}

PairCensus census_by_degrees(const std::vector<int>& degrees) {
  std::int64_t total = 0, connected = 0;
  for (int d : degrees) {
    if (d < 0) throw ContractError("census_by_degrees: negative degree");
    total += d;
    connected += static_cast<std::int64_t>(d) * (d - 1);
  }
  if (total % 2 != 0) throw ContractError("census_by_degrees: degree sum is odd");
  PairCensus c;
  c.s = total / 2;
  c.connected = connected;
  c.all = c.s * c.s;
  c.disjoint = c.all - c.s - connected;
  return c;
}

ScalingReport scaling_report(const InteractionGraph& g) {
  if (g.arity() != 2 && !g.edges().empty()) throw ContractError("scaling_report: 2-body graph required");
  ScalingReport r;
  double norm1 = 0.0;
  for (int d : g.degrees()) {
    norm1 += d;
    r.norm2_sq += static_cast<double>(d) * d;
  }
  r.norm1_sq = norm1 * norm1;
  r.ratio = r.norm1_sq > 0.0 ? r.norm2_sq / r.norm1_sq : 0.0;
  r.census = census_bruteforce(g);
  return r;
}

ScalingVerdict scaling_verdict(const std::vector<int>& sizes, const std::vector<ScalingReport>& reports, double tol) {
  if (sizes.size() != reports.size() || sizes.size() < 2) {
    throw ContractError("scaling_verdict: need at least two (n, report) pairs");
  }
  // Least squares for ratio = alpha + beta * (1/n).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = 1.0 / sizes[i];
    const double y = reports[i].ratio;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ScalingVerdict v;
  v.beta = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  v.alpha = (sy - v.beta * sx) / m;
  v.gap = v.alpha < tol * reports.front().ratio;
  return v;
}

QfiWitnesses qfi_witnesses(const InteractionGraph& g, double lambda0, double lambda1, int resolution) {
  if (!(0.0 < lambda0 && lambda0 < lambda1)) throw ContractError("qfi_witnesses: need 0 < lambda0 < lambda1");
  if (g.vertices() > 24) throw SizeError("qfi_witnesses: configuration enumeration limited to n <= 24");
  const int n = g.vertices();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    double energy = 0.0;
    for (const auto& e : g.edges()) {
      double term = 1.0;
      for (int v : e) term *= ((x >> (n - 1 - v)) & 1U) ? lambda1 : lambda0;
      energy += term;
    }
    lo = std::min(lo, energy);
    hi = std::max(hi, energy);
  }
  QfiWitnesses w;
  w.max_all = (hi - lo) * (hi - lo);
  const auto h = g.hamiltonian(lambda0, lambda1);
  const auto best = max_qfi_symmetric_product(h, resolution);
  w.max_prod = best.value;
  w.p_star = best.p;
  const auto census = kbody_census(g);
  w.s_sq = static_cast<double>(census.s) * census.s;
  w.product_count = static_cast<double>(census.s + census.connected);
  const double m1 = best.p * lambda0 + (1 - best.p) * lambda1;
  const double m2 = best.p * lambda0 * lambda0 + (1 - best.p) * lambda1 * lambda1;
  double cov_min = std::numeric_limits<double>::infinity(), cov_max = 0.0;
  for (int t = 1; t <= std::max(g.arity(), 1); ++t) {
    const double cov = std::pow(m1, 2 * g.arity() - 2 * t) * (std::pow(m2, t) - std::pow(m1, 2 * t));
    cov_min = std::min(cov_min, cov);
    cov_max = std::max(cov_max, cov);
  }
  w.envelope_lower = 4.0 * cov_min * w.product_count;
  w.envelope_upper = 4.0 * cov_max * w.product_count;
  return w;
}

Shape parse_shape(const std::string& name) {
  if (name == "star") return Shape::kStar;
  if (name == "chain") return Shape::kChain;
  if (name == "ring") return Shape::kRing;
  if (name == "complete") return Shape::kComplete;
  throw ContractError("unknown shape '" + name + "' (star, chain, ring, complete)");
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::kStar: return "star";
    case Shape::kChain: return "chain";
    case Shape::kRing: return "ring";
    case Shape::kComplete: return "complete";
  }
  return "?";
}

InteractionGraph preset(Shape shape, int n, int k) {
  switch (shape) {
    case Shape::kStar:
      if (k != 2) throw ContractError("preset: star graphs are 2-body");
      return InteractionGraph::star(n);
    case Shape::kChain: return InteractionGraph::kbody_chain(n, k);
    case Shape::kRing: return InteractionGraph::kbody_ring(n, k);
    case Shape::kComplete: return InteractionGraph::kbody_complete(n, k);
  }
  throw ContractError("preset: unknown shape");
}

TableRow census_table_row(Shape shape, int n) {
  const std::int64_t m = n;
  TableRow r;
  switch (shape) {
    case Shape::kStar:
      r.s = m - 1;
      r.disjoint = 0;
      r.connected = (m - 1) * (m - 2);
      r.max_prod = static_cast<double>((m - 1) * (m - 1));
      break;
    case Shape::kChain:
      r.s = m - 1;
      r.disjoint = m * m - 5 * m + 6;
      r.connected = 2 * m - 4;
      r.max_prod = static_cast<double>(3 * m - 5);
      break;
    case Shape::kRing:
      r.s = m;
      r.disjoint = m * m - 3 * m;
      r.connected = 2 * m;
      r.max_prod = static_cast<double>(3 * m);
      break;
    case Shape::kComplete:
      r.s = m * (m - 1) / 2;
      r.disjoint = r.s * ((m - 2) * (m - 3) / 2);
      r.connected = r.s * 2 * (m - 2);
      r.max_prod = static_cast<double>(m * (m - 1)) * (static_cast<double>(m) - 1.5);
      break;
  }
  r.max_all = static_cast<double>(r.s) * static_cast<double>(r.s);
  return r;
}

TableRow kbody_table_row(Shape shape, int n, int k) {
  const std::int64_t m = n;
  TableRow r;
  switch (shape) {
    case Shape::kChain:
      r.s = m - (k - 1);
      r.max_prod = -1.0;  // only O(n) is known
      break;
    case Shape::kRing:
      r.s = m;
      r.disjoint = m * (m - (2 * k - 1));
      r.connected = r.s * r.s - r.s - r.disjoint;
      r.max_prod = static_cast<double>((2 * k - 1) * m);
      break;
    case Shape::kComplete: {
      r.s = static_cast<std::int64_t>(binomial(n, k));
      r.disjoint = r.s * static_cast<std::int64_t>(binomial(n - k, k));
      r.connected = r.s * r.s - r.s - r.disjoint;
      r.max_prod = static_cast<double>(r.s + r.connected);
      break;
    }
    case Shape::kStar:
      throw ContractError("kbody_table_row: no k-body star row");
  }
  r.max_all = static_cast<double>(r.s) * static_cast<double>(r.s);
  return r;
}

void write_graph(std::ostream& out, const InteractionGraph& g) {
  out << g.vertices() << ' ' << (g.arity() == 0 ? 2 : g.arity()) << '\n';
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i] + 1;
    out << '\n';
  }
}

InteractionGraph read_graph(std::istream& in) {
  std::string line;
  int n = 0, k = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> n >> k)) {
    throw ContractError("read_graph: missing 'n k' header");
  }
  std::vector<std::vector<int>> edges;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<int> e;
    int v = 0;
    while (fields >> v) e.push_back(v - 1);
    if (e.empty()) continue;
    if (static_cast<int>(e.size()) != k) throw ContractError("read_graph: hyperedge arity differs from header");
    edges.push_back(std::move(e));
  }
  return InteractionGraph(n, std::move(edges));
}

void save_graph(const std::string& path, const InteractionGraph& g) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write graph file '" + path + "'");
  write_graph(out, g);
}

InteractionGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

}  // namespace qfiwb
