#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace sched::graph {

/// Undirected edge u < v with a strictly positive consensus weight.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// Stable 64-bit key for an undirected edge, independent of discovery order.
constexpr std::uint64_t edge_key(int u, int v) noexcept {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
}

/// Weighted undirected multi-agent communication graph.
///
/// Immutable after construction. Each undirected edge carries one weight used
/// for both directions, so the induced weight matrix W is symmetric (and
/// therefore weight-balanced) by construction. Self-loops and nonpositive
/// weights are rejected.
class Topology {
 public:
  Topology(int n, std::vector<Edge> edges);

  int node_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Symmetric weight matrix W with W(u,v) = W(v,u) = w, zero diagonal.
  Eigen::MatrixXd weight_matrix() const;

  /// Neighbor lists (agent -> sorted neighbor ids).
  const std::vector<std::vector<int>>& adjacency() const noexcept { return adj_; }

 private:
  int n_;
  std::vector<Edge> edges_;  // normalized u < v, sorted lexicographically
  std::vector<std::vector<int>> adj_;
};

/// Laplacian eigenvalue summary of a connected graph.
struct SpectralInfo {
  double lambda2 = 0.0;  // smallest nonzero eigenvalue (algebraic connectivity)
  double lambdaN = 0.0;  // largest eigenvalue
};

/// Time-varying network: a fixed base topology plus an i.i.d. per-round,
/// per-edge link-failure process. Realizations only remove edges.
struct SwitchingNetwork {
  Topology base;
  double failure_rate = 0.0;  // p_l in [0, 1)
  std::uint64_t seed = 0;
  int window = 1;  // B of the uniform-connectivity window
};

/// Erdos-Renyi graph: each unordered pair is an edge independently with
/// probability p; every edge gets weight w. Deterministic in seed.
/// Requires n >= 2 and 0 < p <= 1.
Topology generate_er(int n, double p, double w, std::uint64_t seed);

/// L = D - W with D the diagonal of row sums of W. Rows sum to zero; PSD.
Eigen::MatrixXd laplacian(const Topology& t);

/// Exact lambda_2 and lambda_n of laplacian(t) via a dense symmetric
/// eigensolver. Throws disconnected-graph when lambda_2 would be zero.
SpectralInfo spectral_bounds(const Topology& t);

bool is_connected(const Topology& t);

/// Edge-set union across realizations sharing one node count. An edge present
/// in several inputs keeps the weight of its first occurrence.
Topology union_graph(std::span<const Topology> realizations);

/// Subgraph of the base surviving round k: each edge independently kept with
/// probability 1 - failure_rate, drawn from (seed, k, edge) only, so the same
/// round always yields the same realization.
Topology realize(const SwitchingNetwork& s, std::int64_t k);

/// True when the union of realizations over rounds [start, start+B) is
/// connected.
bool check_b_connectivity(const SwitchingNetwork& s, std::int64_t start, int B);

/// Bond-percolation threshold 1 - 1/d for an ER graph, with mean degree
/// d = p(n-1)/2. Throws degenerate-threshold when d <= 1.
double percolation_threshold(int n, double p);

/// Text edge-list format: header "n <count>", then one "u v w" line per edge.
void write_edge_list(const Topology& t, std::ostream& out);
Topology read_edge_list(std::istream& in);

}  // namespace sched::graph
