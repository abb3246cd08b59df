// graph.hpp - weighted undirected graph, edge-list I/O, shortest paths
//
// Graph is immutable after construction and safe for concurrent reads.
// Node identifiers are opaque strings; internal dense indices are assigned
// by sorted name order, so every iteration order is deterministic. Edges are
// stored canonically with endpoint(first) < endpoint(second) in node order
// and the edge list sorted, which is also the order used by all writers.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ricci/error.hpp"
#include "ricci/format.hpp"

namespace ricci {

// Marker for unreachable nodes. Always +infinity, never a sentinel number,
// so callers must handle disconnection explicitly.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct Neighbor {
  int node;        // neighbor index
  int edge_index;  // index into Graph::edges()
};

struct EdgeRecord {
  int first;   // smaller endpoint index
  int second;  // larger endpoint index
};

class Graph {
 public:
  Graph() : topo_(std::make_shared<const Topology>()) {}

  // nodes: full node set (may include isolated nodes); edges as name triples.
  static Graph from_parts(std::vector<std::string> nodes,
                          const std::vector<std::tuple<std::string, std::string, double>>& edges);

  // Convenience: node set inferred from edge endpoints.
  static Graph from_edges(const std::vector<std::tuple<std::string, std::string, double>>& edges);

  int node_count() const { return static_cast<int>(topo_->names.size()); }
  int edge_count() const { return static_cast<int>(topo_->edges.size()); }

  const std::vector<std::string>& node_names() const { return topo_->names; }
  const std::string& name(int v) const { return topo_->names.at(v); }

  // -1 when the name is unknown.
  int index_of(std::string_view name) const {
    auto it = topo_->index.find(std::string(name));
    return it == topo_->index.end() ? -1 : it->second;
  }
  bool has_node(std::string_view name) const { return index_of(name) >= 0; }

  std::span<const Neighbor> neighbors(int v) const {
    const auto& adj = topo_->adjacency.at(v);
    return {adj.data(), adj.size()};
  }
  int degree(int v) const { return static_cast<int>(topo_->adjacency.at(v).size()); }

  const std::vector<EdgeRecord>& edges() const { return topo_->edges; }
  const std::vector<double>& weights() const { return weights_; }
  double weight_of_edge(int edge_index) const { return weights_.at(edge_index); }

  // -1 when {a, b} is not an edge.
  int edge_index_between(int a, int b) const {
    for (const Neighbor& n : neighbors(a)) {
      if (n.node == b) return n.edge_index;
    }
    return -1;
  }

  double total_weight() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
  }

  // Same topology, new weights (one per edge, positive and finite).
  Graph with_weights(std::vector<double> weights) const;
  Graph with_unit_weights() const {
    return with_weights(std::vector<double>(weights_.size(), 1.0));
  }

 private:
  struct Topology {
    std::vector<std::string> names;               // sorted
    std::map<std::string, int> index;             // name -> dense index
    std::vector<EdgeRecord> edges;                // canonical order
    std::vector<std::vector<Neighbor>> adjacency; // sorted by neighbor index
  };

  Graph(std::shared_ptr<const Topology> topo, std::vector<double> weights)
      : topo_(std::move(topo)), weights_(std::move(weights)) {}

  static void check_weight(double w, const std::string& context) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw DataError("edge weight must be positive and finite" +
                      (context.empty() ? "" : " (" + context + ")"));
    }
  }

  std::shared_ptr<const Topology> topo_;
  std::vector<double> weights_;
};

inline Graph Graph::from_parts(
    std::vector<std::string> nodes,
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  auto topo = std::make_shared<Topology>();
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  topo->names = std::move(nodes);
  for (int i = 0; i < static_cast<int>(topo->names.size()); ++i) {
    topo->index.emplace(topo->names[i], i);
  }

  // Resolve, orient, and sort edges; weights follow the permutation.
  std::vector<std::pair<EdgeRecord, double>> resolved;
  resolved.reserve(edges.size());
  for (const auto& [u, v, w] : edges) {
    auto iu = topo->index.find(u);
    auto iv = topo->index.find(v);
    if (iu == topo->index.end() || iv == topo->index.end()) {
      throw DataError("edge endpoint not in node set: {" + u + ", " + v + "}");
    }
    if (iu->second == iv->second) throw DataError("self-loop on node '" + u + "'");
    check_weight(w, "{" + u + ", " + v + "}");
    EdgeRecord rec{std::min(iu->second, iv->second), std::max(iu->second, iv->second)};
    resolved.emplace_back(rec, w);
  }
  std::sort(resolved.begin(), resolved.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.first, a.first.second) < std::tie(b.first.first, b.first.second);
  });
  for (std::size_t i = 1; i < resolved.size(); ++i) {
    if (resolved[i].first.first == resolved[i - 1].first.first &&
        resolved[i].first.second == resolved[i - 1].first.second) {
      throw DataError("duplicate undirected edge {" + topo->names[resolved[i].first.first] +
                      ", " + topo->names[resolved[i].first.second] + "}");
    }
  }

  std::vector<double> weights;
  weights.reserve(resolved.size());
  topo->edges.reserve(resolved.size());
  topo->adjacency.assign(topo->names.size(), {});
  for (int e = 0; e < static_cast<int>(resolved.size()); ++e) {
    const EdgeRecord rec = resolved[e].first;
    topo->edges.push_back(rec);
    weights.push_back(resolved[e].second);
    topo->adjacency[rec.first].push_back({rec.second, e});
    topo->adjacency[rec.second].push_back({rec.first, e});
  }
  for (auto& adj : topo->adjacency) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return Graph(std::move(topo), std::move(weights));
}

inline Graph Graph::from_edges(
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  std::vector<std::string> nodes;
  nodes.reserve(edges.size() * 2);
  for (const auto& [u, v, w] : edges) {
    nodes.push_back(u);
    nodes.push_back(v);
  }
  return from_parts(std::move(nodes), edges);
}

inline Graph Graph::with_weights(std::vector<double> weights) const {
  if (weights.size() != weights_.size()) {
    throw DataError("weight vector size does not match edge count");
  }
  for (double w : weights) check_weight(w, "with_weights");
  return Graph(topo_, std::move(weights));
}

// ---------------------------------------------------------------------------
// Edge-list I/O
//
// UTF-8 text; '#' begins a comment line; fields separated by any run of
// spaces/tabs. Each data line is "u v" or "u v w" (weight defaults to 1.0).
// The writer emits one line per edge, "u<TAB>v<TAB>w", u before v in node
// order, lines sorted, weights at 17 significant digits. Nodes appear only
// as edge endpoints, so isolated nodes are not representable in this format.
// ---------------------------------------------------------------------------

inline Graph load_graph(std::string_view text) {
  std::vector<std::tuple<std::string, std::string, double>> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
    if (fields.empty() || fields[0].front() == '#') continue;
    if (fields.size() < 2 || fields.size() > 3) {
      throw DataError("line " + std::to_string(line_no) +
                      ": expected 2 or 3 fields, got " + std::to_string(fields.size()));
    }
    double w = 1.0;
    if (fields.size() == 3) {
      const std::string_view f = fields[2];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), w);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw DataError("line " + std::to_string(line_no) + ": unparsable weight '" +
                        std::string(f) + "'");
      }
      if (!std::isfinite(w) || w <= 0.0) {
        throw DataError("line " + std::to_string(line_no) +
                        ": weight must be positive and finite");
      }
    }
    if (fields[0] == fields[1]) {
      throw DataError("line " + std::to_string(line_no) + ": self-loop on '" +
                      std::string(fields[0]) + "'");
    }
    edges.emplace_back(std::string(fields[0]), std::string(fields[1]), w);
  }

  // Duplicate detection happens on name pairs so the error carries the line's
  // own spelling rather than the canonical one.
  std::map<std::pair<std::string_view, std::string_view>, bool> seen;
  for (const auto& [u, v, w] : edges) {
    std::pair<std::string_view, std::string_view> key(u, v);
    if (key.second < key.first) std::swap(key.first, key.second);
    if (!seen.emplace(key, true).second) {
      throw DataError("duplicate undirected edge {" + u + ", " + v + "}");
    }
  }
  return Graph::from_edges(edges);
}

inline std::string save_graph(const Graph& g) {
  std::string out;
  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgeRecord& rec = g.edges()[e];
    out += g.name(rec.first);
    out += '\t';
    out += g.name(rec.second);
    out += '\t';
    out += format_g17(g.weight_of_edge(e));
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

// Exact single-source shortest-path distances (Dijkstra); unreachable nodes
// get kUnreachable.
inline std::vector<double> shortest_distances(const Graph& g, int source) {
  if (source < 0 || source >= g.node_count()) {
    throw DataError("unknown source node index " + std::to_string(source));
  }
  std::vector<double> dist(g.node_count(), kUnreachable);
  dist[source] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const Neighbor& n : g.neighbors(v)) {
      const double cand = d + g.weight_of_edge(n.edge_index);
      if (cand < dist[n.node]) {
        dist[n.node] = cand;
        heap.emplace(cand, n.node);
      }
    }
  }
  return dist;
}

inline std::vector<double> shortest_distances(const Graph& g, std::string_view source) {
  const int s = g.index_of(source);
  if (s < 0) throw DataError("unknown source node '" + std::string(source) + "'");
  return shortest_distances(g, s);
}

inline bool is_connected(const Graph& g) {
  const int n = g.node_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        ++reached;
        stack.push_back(nb.node);
      }
    }
  }
  return reached == n;
}

// Per-source distance cache. Lazily fills one row per source; a row is
// computed exactly once even under concurrent access.
class DistanceOracle {
 public:
  // Takes its own copy of the graph (cheap: the topology is shared), so the
  // oracle stays valid however the caller's graph object is scoped.
  explicit DistanceOracle(Graph g)
      : graph_(std::move(g)),
        rows_(static_cast<std::size_t>(graph_.node_count())),
        flags_(std::make_unique<std::once_flag[]>(static_cast<std::size_t>(graph_.node_count()))) {}

  const Graph& graph() const { return graph_; }

  const std::vector<double>& from(int source) const {
    if (source < 0 || source >= graph_.node_count()) {
      throw DataError("unknown source node index " + std::to_string(source));
    }
    std::call_once(flags_[source],
                   [&] { rows_[source] = shortest_distances(graph_, source); });
    return rows_[source];
  }

  double between(int a, int b) const { return from(a).at(b); }

 private:
  Graph graph_;  // declared first: the other members size themselves off it
  mutable std::vector<std::vector<double>> rows_;
  std::unique_ptr<std::once_flag[]> flags_;
};

// ---------------------------------------------------------------------------
// Jaccard coefficient of an edge (Appendix-style tree-edge diagnostic):
// |pi_u ∩ pi_v| / |pi_u ∪ pi_v| over open neighborhoods, so u and v stay in
// the union through each other's neighbor set.
// ---------------------------------------------------------------------------
inline double jaccard(const Graph& g, std::string_view u, std::string_view v) {
  const int a = g.index_of(u);
  const int b = g.index_of(v);
  if (a < 0 || b < 0 || g.edge_index_between(a, b) < 0) {
    throw DataError("edge {" + std::string(u) + ", " + std::string(v) + "} not in graph");
  }
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  std::size_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i].node == nb[j].node) {
      ++inter;
      ++i;
      ++j;
    } else if (na[i].node < nb[j].node) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = na.size() + nb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace ricci
