#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qfiwb/hamiltonians.hpp"
#include "qfiwb/numerics.hpp"

namespace qfiwb {

/// Simple (hyper)graph on vertices 0..n-1. Every edge is a sorted k-set; edges are kept sorted.
class InteractionGraph {
 public:
  InteractionGraph(int n, std::vector<std::vector<int>> edges);

  static InteractionGraph star(int n);
  static InteractionGraph chain(int n);
  static InteractionGraph ring(int n);
  static InteractionGraph complete(int n);
  /// Windows {i, ..., i+k-1}: i = 0..n-k for the chain, all i mod n for the ring (n > k).
  static InteractionGraph kbody_chain(int n, int k);
  static InteractionGraph kbody_ring(int n, int k);
  static InteractionGraph kbody_complete(int n, int k);
  /// Every pair present independently with probability p.
  static InteractionGraph random(int n, double p, Rng& rng);

  int vertices() const { return n_; }
  /// 0 for an edgeless graph.
  int arity() const { return arity_; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  std::vector<int> degrees() const;

  /// Graph Hamiltonian with lambda0 |0><0| + lambda1 |1><1| on every site.
  GraphHamiltonian hamiltonian(double lambda0, double lambda1, bool require_positive = true) const;

 private:
  int n_;
  int arity_;
  std::vector<std::vector<int>> edges_;
};

/// Ordered pairs of edges: same edge, disjoint edges, and the rest ("connected").
struct PairCensus {
  std::int64_t s = 0;
  std::int64_t disjoint = 0;
  std::int64_t connected = 0;
  std::int64_t all = 0;
  bool operator==(const PairCensus&) const = default;
};

/// 2-body graphs only.
PairCensus census_bruteforce(const InteractionGraph& g);
/// Any fixed arity.
PairCensus kbody_census(const InteractionGraph& g);
/// s = sum d / 2, connected = sum d(d-1), disjoint = s^2 - s - connected. Throws on an odd sum.
PairCensus census_by_degrees(const std::vector<int>& degrees);

struct ScalingReport {
  double norm1_sq = 0.0;  // (sum d_k)^2
  double norm2_sq = 0.0;  // sum d_k^2
  double ratio = 0.0;     // norm2_sq / norm1_sq
  PairCensus census;
};

ScalingReport scaling_report(const InteractionGraph& g);

/// Fits ratio ~ alpha + beta / n over a family and reports a gap when alpha is below
/// `tol` times the first ratio.
struct ScalingVerdict {
  double alpha = 0.0;
  double beta = 0.0;
  bool gap = false;
};
ScalingVerdict scaling_verdict(const std::vector<int>& sizes, const std::vector<ScalingReport>& reports,
                               double tol = 0.05);

struct QfiWitnesses {
  double max_all = 0.0;   // (lambda_max - lambda_min)^2
  double max_prod = 0.0;  // best symmetric product state
  double p_star = 0.0;
  double s_sq = 0.0;                // |S|^2
  double product_count = 0.0;       // |T_all - T_disjoint| = s + connected
  double envelope_lower = 0.0;      // closed-form sandwich at p_star
  double envelope_upper = 0.0;
};

/// Spectrum from configuration enumeration (no dense matrix). Requires 0 < lambda0 < lambda1.
QfiWitnesses qfi_witnesses(const InteractionGraph& g, double lambda0, double lambda1, int resolution = 2000);

/// Closed-form entries for the preset shapes.
enum class Shape { kStar, kChain, kRing, kComplete };
Shape parse_shape(const std::string& name);
std::string shape_name(Shape s);
InteractionGraph preset(Shape shape, int n, int k = 2);

struct TableRow {
  std::int64_t s = 0;
  std::int64_t disjoint = -1;   // -1 where only an envelope is known
  std::int64_t connected = -1;
  double max_all = 0.0;         // |S|^2
  double max_prod = 0.0;        // |T_all - T_disjoint|
};

/// Pair-census row for a 2-body preset.
TableRow census_table_row(Shape shape, int n);
/// k-body row (chain, ring, complete); chain disjoint count has no closed form.
TableRow kbody_table_row(Shape shape, int n, int k);

/// Graph file: "n k" header, then one hyperedge per line as 1-based vertex indices.
void write_graph(std::ostream& out, const InteractionGraph& g);
InteractionGraph read_graph(std::istream& in);
void save_graph(const std::string& path, const InteractionGraph& g);
InteractionGraph load_graph(const std::string& path);

}  // namespace qfiwb
