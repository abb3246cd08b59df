// curvature.hpp - Ollivier-Ricci curvature on weighted graphs
//
// kappa(x, y) = 1 - T(x, y) / d(x, y) for an edge {x, y}, where T is the
// cost of moving the probability measure around x onto the one around y.
// Two transport costs are provided: the exact optimal cost (a transportation
// LP, solved here by successive shortest augmenting paths) and the average
// cost of the fixed product coupling, which is much cheaper to evaluate and,
// being one feasible coupling among many, never undercuts the optimal cost.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ricci/error.hpp"
#include "ricci/graph.hpp"
#include "ricci/parallel.hpp"

namespace ricci {

enum class Method {
  kOptimal,  // exact Wasserstein-1 transport cost
  kAverage,  // product-coupling transport cost
};

enum class EdgeDenominator {
  kShortestPath,  // d(x, y) through the whole graph
  kEdgeWeight,    // w(x, y) of the edge itself
};

struct CurvatureParams {
  double alpha = 0.5;  // mass kept at the center node, in [0, 1]
  Method method = Method::kAverage;
  EdgeDenominator denominator = EdgeDenominator::kShortestPath;
};

inline void validate(const CurvatureParams& p) {
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
    throw DataError("alpha must be in [0, 1]");
  }
}

// Finite discrete probability measure on graph nodes.
struct Measure {
  std::vector<int> support;  // node indices, strictly increasing
  std::vector<double> mass;  // parallel to support, positive

  double total() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
  }
};

// m_x^alpha: mass alpha at x, the rest split evenly over x's neighbors.
// Zero-mass atoms are dropped, so alpha = 1 gives a point mass at x and
// alpha = 0 puts everything on the neighbors. An isolated node always gets
// a point mass.
inline Measure neighbor_measure(const Graph& g, int x, double alpha) {
  if (x < 0 || x >= g.node_count()) {
    throw DataError("unknown node index " + std::to_string(x));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DataError("alpha must be in [0, 1]");
  Measure m;
  const auto neigh = g.neighbors(x);
  if (neigh.empty() || alpha == 1.0) {
    m.support.push_back(x);
    m.mass.push_back(1.0);
    return m;
  }
  const double share = (1.0 - alpha) / static_cast<double>(neigh.size());
  // Neighbors are sorted by index; x is spliced into position.
  bool placed = alpha == 0.0;
  for (const Neighbor& n : neigh) {
    if (!placed && x < n.node) {
      m.support.push_back(x);
      m.mass.push_back(alpha);
      placed = true;
    }
    m.support.push_back(n.node);
    m.mass.push_back(share);
  }
  if (!placed) {
    m.support.push_back(x);
    m.mass.push_back(alpha);
  }
  return m;
}

struct TransportPlan {
  double cost = 0.0;
  // (position in source support, position in target support, mass moved);
  // only strictly positive moves are listed.
  std::vector<std::tuple<int, int, double>> moves;
};

namespace detail {

// Residual network for min-cost flow; arcs are stored in pairs so arc k's
// reverse is k ^ 1.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(nodes) {}

  int add_arc(int from, int to, double cap, double cost) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap, cost});
    arcs_.push_back({from, 0.0, -cost});
    head_[from].push_back(id);
    head_[to].push_back(id + 1);
    return id;
  }

  struct Arc {
    int to;
    double cap;
    double cost;
  };

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
};

inline constexpr double kCapEps = 1e-15;

// Successive shortest paths with node potentials. All arc costs are
// nonnegative going in (distances), and potentials keep reduced costs
// nonnegative afterwards, so plain Dijkstra finds each augmenting path.
// Returns total shipped mass; flow per arc is left in the network.
inline double min_cost_flow(FlowNetwork& net, int source, int sink) {
  const int n = static_cast<int>(net.head_.size());
  std::vector<double> potential(n, 0.0);
  std::vector<double> dist(n);
  std::vector<int> parent_arc(n);
  double shipped = 0.0;

  while (true) {
    const double inf = std::numeric_limits<double>::infinity();
    dist.assign(n, inf);
    parent_arc.assign(n, -1);
    dist[source] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (int id : net.head_[v]) {
        const auto& arc = net.arcs_[id];
        if (arc.cap <= kCapEps) continue;
        // Tiny negatives are floating-point noise from potential updates.
        const double reduced = std::max(0.0, arc.cost + potential[v] - potential[arc.to]);
        if (d + reduced < dist[arc.to]) {
          dist[arc.to] = d + reduced;
          parent_arc[arc.to] = id;
          heap.emplace(dist[arc.to], arc.to);
        }
      }
    }
    if (parent_arc[sink] < 0) break;
    for (int v = 0; v < n; ++v) {
      if (dist[v] < inf) potential[v] += dist[v];
    }

    double bottleneck = inf;
    for (int v = sink; v != source;) {
      const auto& arc = net.arcs_[parent_arc[v]];
      bottleneck = std::min(bottleneck, arc.cap);
      v = net.arcs_[parent_arc[v] ^ 1].to;
    }
    for (int v = sink; v != source;) {
      auto& arc = net.arcs_[parent_arc[v]];
      arc.cap -= bottleneck;
      if (arc.cap < kCapEps) arc.cap = 0.0;
      net.arcs_[parent_arc[v] ^ 1].cap += bottleneck;
      v = net.arcs_[parent_arc[v] ^ 1].to;
    }
    shipped += bottleneck;
  }
  return shipped;
}

}  // namespace detail

// Exact optimal transport cost between two measures under the given cost
// matrix (cost[i][j] = distance from mu.support[i] to nu.support[j]).
// Infinite entries are treated as unusable routes.
inline TransportPlan transport_cost_optimal(const Measure& mu, const Measure& nu,
                                            const std::vector<std::vector<double>>& cost) {
  const int m = static_cast<int>(mu.support.size());
  const int k = static_cast<int>(nu.support.size());
  if (static_cast<int>(cost.size()) != m) {
    throw DataError("cost matrix rows do not match source support");
  }
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != k) {
      throw DataError("cost matrix columns do not match target support");
    }
  }
  const double total_mu = mu.total();
  const double total_nu = nu.total();
  if (std::abs(total_mu - total_nu) > 1e-9) {
    throw DataError("transport requires equal total mass");
  }

  // Node layout: source, m left nodes, k right nodes, sink.
  const int S = 0;
  const int T = 1 + m + k;
  detail::FlowNetwork net(m + k + 2);
  for (int i = 0; i < m; ++i) {
    if (mu.mass[i] <= 0.0) throw DataError("measure mass must be positive");
    net.add_arc(S, 1 + i, mu.mass[i], 0.0);
  }
  for (int j = 0; j < k; ++j) {
    if (nu.mass[j] <= 0.0) throw DataError("measure mass must be positive");
    net.add_arc(1 + m + j, T, nu.mass[j], 0.0);
  }
  std::vector<std::pair<std::pair<int, int>, int>> lane_arcs;  // ((i, j), arc id)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      const double c = cost[i][j];
      if (std::isinf(c)) continue;
      if (!(c >= 0.0)) throw DataError("transport costs must be nonnegative");
      const int id = net.add_arc(1 + i, 1 + m + j, total_mu, c);
      lane_arcs.push_back({{i, j}, id});
    }
  }

  const double shipped = detail::min_cost_flow(net, S, T);
  if (shipped < total_mu - 1e-9) {
    throw NumericError("transport problem infeasible: supports are not mutually reachable");
  }

  TransportPlan plan;
  for (const auto& [ij, id] : lane_arcs) {
    const double flow = net.arcs_[id ^ 1].cap;  // reverse cap accumulates flow
    if (flow > detail::kCapEps) {
      plan.cost += flow * net.arcs_[id].cost;
      plan.moves.emplace_back(ij.first, ij.second, flow);
    }
  }
  return plan;
}

// Overload wiring the cost matrix from graph distances.
inline TransportPlan transport_cost_optimal(const DistanceOracle& oracle, const Measure& mu,
                                            const Measure& nu) {
  std::vector<std::vector<double>> cost(mu.support.size());
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    const auto& row = oracle.from(mu.support[i]);
    cost[i].reserve(nu.support.size());
    for (int t : nu.support) cost[i].push_back(row[t]);
  }
  return transport_cost_optimal(mu, nu, cost);
}

// Average transport cost of the product coupling: the center mass alpha
// rides along the x-to-y distance, and every neighbor pair (x_i, y_j)
// carries mass (1 - alpha) / (Deg(x) * Deg(y)).
inline double transport_cost_average(const DistanceOracle& oracle, int x, int y, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DataError("alpha must be in [0, 1]");
  const Graph& g = oracle.graph();
  const auto nx = g.neighbors(x);
  const auto ny = g.neighbors(y);
  if (nx.empty() || ny.empty()) {
    throw DataError("average transport needs both nodes to have neighbors");
  }
  double acc = alpha * oracle.between(x, y);
  const double pair_mass =
      (1.0 - alpha) / (static_cast<double>(nx.size()) * static_cast<double>(ny.size()));
  if (pair_mass > 0.0) {
    for (const Neighbor& a : nx) {
      const auto& row = oracle.from(a.node);
      for (const Neighbor& b : ny) {
        acc += pair_mass * row[b.node];
      }
    }
  }
  return acc;
}

// Transport cost T(x, y) for one edge under the chosen method.
inline double edge_transport_cost(const DistanceOracle& oracle, int edge_index,
                                  const CurvatureParams& params = {}) {
  validate(params);
  const Graph& g = oracle.graph();
  if (edge_index < 0 || edge_index >= g.edge_count()) {
    throw DataError("edge index out of range");
  }
  const EdgeRecord& rec = g.edges()[edge_index];
  if (params.method == Method::kAverage) {
    return transport_cost_average(oracle, rec.first, rec.second, params.alpha);
  }
  const Measure mu = neighbor_measure(g, rec.first, params.alpha);
  const Measure nu = neighbor_measure(g, rec.second, params.alpha);
  return transport_cost_optimal(oracle, mu, nu).cost;
}

inline double edge_curvature(const DistanceOracle& oracle, int edge_index,
                             const CurvatureParams& params = {}) {
  validate(params);
  const Graph& g = oracle.graph();
  if (edge_index < 0 || edge_index >= g.edge_count()) {
    throw DataError("edge index out of range");
  }
  const EdgeRecord& rec = g.edges()[edge_index];
  const double denom = params.denominator == EdgeDenominator::kShortestPath
                           ? oracle.between(rec.first, rec.second)
                           : g.weight_of_edge(edge_index);
  return 1.0 - edge_transport_cost(oracle, edge_index, params) / denom;
}

// Curvature of every edge, indexed like Graph::edges(). Rows of the distance
// cache fill on demand and are shared across threads.
inline std::vector<double> curvature_map(const DistanceOracle& oracle,
                                         const CurvatureParams& params = {}) {
  validate(params);
  const Graph& g = oracle.graph();
  std::vector<double> kappa(g.edge_count());
  parallel_for(g.edge_count(),
               [&](std::size_t e) { kappa[e] = edge_curvature(oracle, static_cast<int>(e), params); });
  return kappa;
}

inline std::vector<double> curvature_map(const Graph& g, const CurvatureParams& params = {}) {
  DistanceOracle oracle(g);
  return curvature_map(oracle, params);
}

}  // namespace ricci
