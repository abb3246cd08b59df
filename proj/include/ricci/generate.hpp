// generate.hpp - random graph models and graph perturbation
//
// All generators take an explicit seed and are deterministic for a given
// (parameters, seed) pair across platforms; randomness goes through
// ricci::Rng only. Node names are decimal strings "0".."n-1" except for the
// grid model, which uses "r,c" coordinates.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ricci/error.hpp"
#include "ricci/graph.hpp"
#include "ricci/rng.hpp"

namespace ricci {

namespace detail {

inline std::vector<std::string> numbered_nodes(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

inline Graph build_unit(const std::vector<std::string>& nodes,
                        const std::set<std::pair<int, int>>& edge_set) {
  std::vector<std::tuple<std::string, std::string, double>> edges;
  edges.reserve(edge_set.size());
  for (const auto& [a, b] : edge_set) {
    edges.emplace_back(nodes[a], nodes[b], 1.0);
  }
  std::vector<std::string> copy = nodes;
  return Graph::from_parts(std::move(copy), edges);
}

}  // namespace detail

// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs kept with probability p,
// pairs visited in lexicographic order.
inline Graph generate_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw DataError("gnp: n must be nonnegative");
  if (p < 0.0 || p > 1.0) throw DataError("gnp: p must be in [0, 1]");
  Rng rng(seed);
  std::set<std::pair<int, int>> edge_set;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.unit() < p) edge_set.insert({i, j});
    }
  }
  return detail::build_unit(detail::numbered_nodes(n), edge_set);
}

// Kleinberg small-world grid: an n-by-n lattice named "r,c" with the four
// nearest lattice edges, plus q independent long-range contacts per node,
// target u chosen with probability proportional to manhattan(v, u)^-r.
// Contacts are added as undirected edges; duplicates (either from the grid
// or from another node's contact) collapse, so the final edge count is a
// random variable slightly below n*n*(q + 2) - boundary terms.
inline Graph generate_kleinberg(int n, int q, double r, std::uint64_t seed) {
  if (n <= 0) throw DataError("kleinberg: grid side must be positive");
  if (q < 0) throw DataError("kleinberg: q must be nonnegative");
  if (r < 0.0) throw DataError("kleinberg: r must be nonnegative");
  Rng rng(seed);
  const int total = n * n;
  auto id = [n](int row, int col) { return row * n + col; };

  std::vector<std::string> nodes;
  nodes.reserve(total);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      nodes.push_back(std::to_string(row) + "," + std::to_string(col));
    }
  }

  std::set<std::pair<int, int>> edge_set;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      if (row + 1 < n) edge_set.insert({id(row, col), id(row + 1, col)});
      if (col + 1 < n) edge_set.insert({id(row, col), id(row, col + 1)});
    }
  }

  // Weighted choice over all other nodes; weights depend only on the source
  // cell, so the cumulative table is rebuilt per node.
  std::vector<double> cumulative(total);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const int v = id(row, col);
      double acc = 0.0;
      for (int row2 = 0; row2 < n; ++row2) {
        for (int col2 = 0; col2 < n; ++col2) {
          const int u = id(row2, col2);
          if (u != v) {
            const double dist = std::abs(row - row2) + std::abs(col - col2);
            acc += std::pow(dist, -r);
          }
          cumulative[u] = acc;
        }
      }
      for (int c = 0; c < q; ++c) {
        const double pick = rng.unit() * acc;
        const int u = static_cast<int>(
            std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
        const int target = std::min(u, total - 1);
        if (target == v) continue;
        edge_set.insert({std::min(v, target), std::max(v, target)});
      }
    }
  }
  return detail::build_unit(nodes, edge_set);
}

// Barabasi-Albert preferential attachment: start from k isolated seed nodes,
// then each arriving node attaches k edges to distinct existing nodes chosen
// proportionally to degree (uniformly while all degrees are zero). Final
// size is (n - k) * k edges.
inline Graph generate_pref_attach(int n, int k, std::uint64_t seed) {
  if (k < 1) throw DataError("pref_attach: k must be at least 1");
  if (n < k + 1) throw DataError("pref_attach: n must exceed k");
  Rng rng(seed);
  std::set<std::pair<int, int>> edge_set;
  // repeated_targets holds one entry per edge endpoint, so sampling a uniform
  // element is degree-proportional sampling.
  std::vector<int> repeated_targets;
  repeated_targets.reserve(static_cast<std::size_t>(2) * (n - k) * k);

  for (int v = k; v < n; ++v) {
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < k) {
      int target;
      if (repeated_targets.empty()) {
        target = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
      } else {
        target = repeated_targets[rng.below(repeated_targets.size())];
      }
      chosen.insert(target);
    }
    for (int target : chosen) {
      edge_set.insert({std::min(v, target), std::max(v, target)});
      repeated_targets.push_back(v);
      repeated_targets.push_back(target);
    }
  }
  return detail::build_unit(detail::numbered_nodes(n), edge_set);
}

// Random d-regular graph via the pairing model: d stubs per node, paired
// uniformly; pairs forming self-loops or duplicate edges send their stubs
// back into the pool. If the leftover stubs cannot be completed the whole
// attempt is discarded; after max_attempts failures the parameters are
// reported as infeasible in practice.
inline Graph generate_random_regular(int n, int d, std::uint64_t seed, int max_attempts = 1000) {
  if (n <= 0 || d < 0) throw DataError("random_regular: n must be positive, d nonnegative");
  if ((static_cast<long long>(n) * d) % 2 != 0) {
    throw DataError("random_regular: n * d must be even");
  }
  if (d >= n) throw DataError("random_regular: d must be below n");
  Rng rng(seed);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::set<std::pair<int, int>> edge_set;
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v) {
      for (int c = 0; c < d; ++c) stubs.push_back(v);
    }
    bool stuck = false;
    while (!stubs.empty()) {
      rng.shuffle(stubs);
      std::vector<int> leftover;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const int a = std::min(stubs[i], stubs[i + 1]);
        const int b = std::max(stubs[i], stubs[i + 1]);
        if (a == b || edge_set.count({a, b})) {
          leftover.push_back(stubs[i]);
          leftover.push_back(stubs[i + 1]);
        } else {
          edge_set.insert({a, b});
        }
      }
      if (leftover.size() == stubs.size()) {
        // No pair succeeded; the remaining stubs can never be placed.
        stuck = true;
        break;
      }
      stubs = std::move(leftover);
    }
    if (!stuck) return detail::build_unit(detail::numbered_nodes(n), edge_set);
  }
  throw NumericError("random_regular: no simple graph found in " +
                     std::to_string(max_attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Perturbation. Removal keeps the original node names, so a ground-truth
// correspondence between the original and the perturbed graph is the identity
// on names; GroundTruthMap packages that for alignment scoring.
// ---------------------------------------------------------------------------

struct GroundTruthMap {
  // pairs[i] = (node index in first graph, node index in second graph)
  std::vector<std::pair<int, int>> pairs;

  static GroundTruthMap by_name(const Graph& a, const Graph& b) {
    GroundTruthMap out;
    for (int v = 0; v < a.node_count(); ++v) {
      const int w = b.index_of(a.name(v));
      if (w >= 0) out.pairs.emplace_back(v, w);
    }
    return out;
  }
};

// Removes `count` nodes chosen uniformly without replacement (with incident
// edges). Surviving isolated nodes are kept.
inline Graph remove_random_nodes(const Graph& g, int count, std::uint64_t seed) {
  if (count < 0 || count > g.node_count()) {
    throw DataError("remove_random_nodes: count out of range");
  }
  Rng rng(seed);
  const auto doomed = rng.sample_indices(g.node_count(), count);
  std::vector<char> dead(g.node_count(), 0);
  for (std::size_t v : doomed) dead[v] = 1;

  std::vector<std::string> nodes;
  for (int v = 0; v < g.node_count(); ++v) {
    if (!dead[v]) nodes.push_back(g.name(v));
  }
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgeRecord& rec = g.edges()[e];
    if (!dead[rec.first] && !dead[rec.second]) {
      edges.emplace_back(g.name(rec.first), g.name(rec.second), g.weight_of_edge(e));
    }
  }
  return Graph::from_parts(std::move(nodes), edges);
}

// Removes `count` edges chosen uniformly without replacement; all nodes stay.
inline Graph remove_random_edges(const Graph& g, int count, std::uint64_t seed) {
  if (count < 0 || count > g.edge_count()) {
    throw DataError("remove_random_edges: count out of range");
  }
  Rng rng(seed);
  const auto doomed = rng.sample_indices(g.edge_count(), count);
  std::vector<char> dead(g.edge_count(), 0);
  for (std::size_t e : doomed) dead[e] = 1;

  std::vector<std::string> nodes = g.node_names();
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (dead[e]) continue;
    const EdgeRecord& rec = g.edges()[e];
    edges.emplace_back(g.name(rec.first), g.name(rec.second), g.weight_of_edge(e));
  }
  return Graph::from_parts(std::move(nodes), edges);
}

// Removes explicitly named edges; unknown edges are an error.
inline Graph remove_named_edges(const Graph& g,
                                const std::vector<std::pair<std::string, std::string>>& which) {
  std::vector<char> dead(g.edge_count(), 0);
  for (const auto& [u, v] : which) {
    const int a = g.index_of(u);
    const int b = g.index_of(v);
    const int e = (a >= 0 && b >= 0) ? g.edge_index_between(a, b) : -1;
    if (e < 0) throw DataError("edge {" + u + ", " + v + "} not in graph");
    dead[e] = 1;
  }
  std::vector<std::string> nodes = g.node_names();
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (dead[e]) continue;
    const EdgeRecord& rec = g.edges()[e];
    edges.emplace_back(g.name(rec.first), g.name(rec.second), g.weight_of_edge(e));
  }
  return Graph::from_parts(std::move(nodes), edges);
}

}  // namespace ricci
