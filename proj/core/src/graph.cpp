#include "sched/graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

#include "sched/errors.hpp"
#include "sched/rng.hpp"

namespace sched::graph {
namespace {

constexpr std::uint64_t kErStream = 0x4552u;  // "ER"

std::vector<std::vector<int>> build_adjacency(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

}  // namespace

Topology::Topology(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw Error(Errc::invalid_parameter, "node count must be positive");
  for (Edge& e : edges_) {
    if (e.u == e.v) throw Error(Errc::invalid_parameter, "self-loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n_)
      throw Error(Errc::invalid_parameter, "edge endpoint out of range");
    if (!(e.w > 0.0)) throw Error(Errc::nonpositive_weight, "edge weight must be > 0");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      throw Error(Errc::invalid_parameter, "duplicate edge");
  }
  adj_ = build_adjacency(n_, edges_);
}

Eigen::MatrixXd Topology::weight_matrix() const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    w(e.u, e.v) = e.w;
    w(e.v, e.u) = e.w;
  }
  return w;
}

Topology generate_er(int n, double p, double w, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::invalid_parameter, "ER graph needs n >= 2");
  if (!(p > 0.0 && p <= 1.0))
    throw Error(Errc::invalid_parameter, "linking probability must be in (0, 1]");
  if (!(w > 0.0)) throw Error(Errc::nonpositive_weight, "edge weight must be > 0");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng::unit_at(seed, kErStream, edge_key(i, j)) < p) edges.push_back({i, j, w});
    }
  }
  return Topology(n, std::move(edges));
}

Eigen::MatrixXd laplacian(const Topology& t) {
  Eigen::MatrixXd w = t.weight_matrix();
  Eigen::VectorXd degree = w.rowwise().sum();
  Eigen::MatrixXd l = -w;
  l.diagonal() += degree;
  return l;
}

bool is_connected(const Topology& t) {
  const int n = t.node_count();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : t.adjacency()[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

SpectralInfo spectral_bounds(const Topology& t) {
  if (t.node_count() < 2)
    throw Error(Errc::invalid_parameter, "spectral bounds need at least 2 nodes");
  if (!is_connected(t))
    throw Error(Errc::disconnected_graph, "lambda_2 of a disconnected graph is zero");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(t),
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  return SpectralInfo{ev(1), ev(ev.size() - 1)};
}

Topology union_graph(std::span<const Topology> realizations) {
  if (realizations.empty())
    throw Error(Errc::invalid_parameter, "union of zero realizations");
  const int n = realizations.front().node_count();
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  for (const Topology& t : realizations) {
    if (t.node_count() != n)
      throw Error(Errc::mismatched_size, "realizations disagree on node count");
    for (const Edge& e : t.edges()) {
      if (seen.insert(edge_key(e.u, e.v)).second) edges.push_back(e);
    }
  }
  return Topology(n, std::move(edges));
}

Topology realize(const SwitchingNetwork& s, std::int64_t k) {
  if (!(s.failure_rate >= 0.0 && s.failure_rate < 1.0))
    throw Error(Errc::invalid_parameter, "failure rate must be in [0, 1)");
  std::vector<Edge> edges;
  edges.reserve(s.base.edge_count());
  for (const Edge& e : s.base.edges()) {
    const double draw =
        rng::unit_at(s.seed, static_cast<std::uint64_t>(k), edge_key(e.u, e.v));
    if (draw >= s.failure_rate) edges.push_back(e);
  }
  return Topology(s.base.node_count(), std::move(edges));
}

bool check_b_connectivity(const SwitchingNetwork& s, std::int64_t start, int B) {
  if (B < 1) throw Error(Errc::invalid_parameter, "window must be positive");
  std::vector<Topology> window;
  window.reserve(static_cast<std::size_t>(B));
  for (int r = 0; r < B; ++r) window.push_back(realize(s, start + r));
  return is_connected(union_graph(window));
}

double percolation_threshold(int n, double p) {
  if (n < 2 || !(p > 0.0 && p <= 1.0))
    throw Error(Errc::invalid_parameter, "need n >= 2 and p in (0, 1]");
  const double mean_degree = p * static_cast<double>(n - 1) / 2.0;
  if (mean_degree <= 1.0)
    throw Error(Errc::degenerate_threshold, "mean degree p(n-1)/2 must exceed 1");
  return 1.0 - 1.0 / mean_degree;
}

void write_edge_list(const Topology& t, std::ostream& out) {
  out << "n " << t.node_count() << "\n";
  char buf[96];
  for (const Edge& e : t.edges()) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.u, e.v, e.w);
    out << buf;
  }
}

Topology read_edge_list(std::istream& in) {
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "n")
    throw Error(Errc::config_parse, "edge list must start with 'n <count>'");
  std::vector<Edge> edges;
  Edge e;
  while (in >> e.u) {
    if (!(in >> e.v >> e.w))
      throw Error(Errc::config_parse, "truncated edge record");
    edges.push_back(e);
  }
  return Topology(n, std::move(edges));
}

}  // namespace sched::graph
