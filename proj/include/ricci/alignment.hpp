// alignment.hpp - landmark embedding and bipartite graph alignment
//
// Nodes are embedded by their distance vectors to a small landmark set,
// candidate pairs are scored by the 2-norm gap between embeddings, and a
// bipartite matcher (exact Hungarian or greedy) turns scores into an
// injective node map. Evaluation helpers score a matching against the
// name-based ground truth.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ricci/error.hpp"
#include "ricci/generate.hpp"
#include "ricci/graph.hpp"
#include "ricci/rng.hpp"
#include "ricci/stats.hpp"

namespace ricci {

struct LandmarkSet {
  std::vector<int> nodes;  // selection order matters: coordinates follow it
};

// Farthest-point landmark selection: a seeded uniform first pick, then each
// new landmark maximizes the minimum distance to the landmarks so far, ties
// going to the smallest node index. `eligible` restricts the candidate pool
// (for aligning against a graph that lost nodes); empty means every node.
inline LandmarkSet select_landmarks(const DistanceOracle& oracle, int k, std::uint64_t seed,
                                    std::vector<int> eligible = {}) {
  const Graph& g = oracle.graph();
  if (eligible.empty()) {
    eligible.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) eligible[v] = v;
  } else {
    std::sort(eligible.begin(), eligible.end());
    eligible.erase(std::unique(eligible.begin(), eligible.end()), eligible.end());
    for (int v : eligible) {
      if (v < 0 || v >= g.node_count()) throw DataError("eligible node index out of range");
    }
  }
  if (k < 1) throw DataError("landmark count must be at least 1");
  if (k > static_cast<int>(eligible.size())) {
    throw DataError("landmark count exceeds eligible node count");
  }
  if (!is_connected(g)) throw DataError("landmark selection requires a connected graph");

  Rng rng(seed);
  LandmarkSet out;
  out.nodes.push_back(eligible[rng.below(eligible.size())]);

  std::vector<double> min_dist(eligible.size());
  {
    const auto& row = oracle.from(out.nodes[0]);
    for (std::size_t i = 0; i < eligible.size(); ++i) min_dist[i] = row[eligible[i]];
  }
  while (static_cast<int>(out.nodes.size()) < k) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < eligible.size(); ++i) {
      if (min_dist[i] > min_dist[best]) best = i;
    }
    out.nodes.push_back(eligible[best]);
    const auto& row = oracle.from(eligible[best]);
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      min_dist[i] = std::min(min_dist[i], row[eligible[i]]);
    }
  }
  return out;
}

// Distance vectors to the landmarks, one row per node. Nodes that cannot
// reach every landmark are flagged invalid and listed in `excluded`; their
// rows are left infinite.
struct CoordinateTable {
  int landmark_count = 0;
  std::vector<std::vector<double>> coords;  // node index -> k distances
  std::vector<char> valid;
  std::vector<int> excluded;                // invalid node indices, ascending

  // Sum and count over all entries of valid rows; the scale the eps default
  // hangs on.
  std::pair<double, std::size_t> entry_sum() const {
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t v = 0; v < coords.size(); ++v) {
      if (!valid[v]) continue;
      for (double x : coords[v]) acc += x;
      count += coords[v].size();
    }
    return {acc, count};
  }

  double mean_entry() const {
    const auto [acc, count] = entry_sum();
    if (count == 0) throw DataError("coordinate table has no valid rows");
    return acc / static_cast<double>(count);
  }
};

inline CoordinateTable coordinates(const DistanceOracle& oracle, const LandmarkSet& landmarks) {
  const Graph& g = oracle.graph();
  if (landmarks.nodes.empty()) throw DataError("landmark set is empty");
  for (int l : landmarks.nodes) {
    if (l < 0 || l >= g.node_count()) throw DataError("landmark index out of range");
  }
  CoordinateTable table;
  table.landmark_count = static_cast<int>(landmarks.nodes.size());
  table.coords.assign(g.node_count(),
                      std::vector<double>(landmarks.nodes.size(), kUnreachable));
  table.valid.assign(g.node_count(), 1);
  for (std::size_t j = 0; j < landmarks.nodes.size(); ++j) {
    const auto& row = oracle.from(landmarks.nodes[j]);
    for (int v = 0; v < g.node_count(); ++v) {
      table.coords[v][j] = row[v];
      if (std::isinf(row[v])) table.valid[v] = 0;
    }
  }
  for (int v = 0; v < g.node_count(); ++v) {
    if (!table.valid[v]) table.excluded.push_back(v);
  }
  return table;
}

// Pairwise embedding gap between every valid node of A and every valid node
// of B. Rows and columns remember which node they describe.
struct SimilarityMatrix {
  std::vector<int> row_nodes;  // node indices in the first graph
  std::vector<int> col_nodes;  // node indices in the second graph
  std::vector<std::vector<double>> cost;
};

inline SimilarityMatrix similarity_matrix(const CoordinateTable& a, const CoordinateTable& b) {
  if (a.landmark_count != b.landmark_count) {
    throw DataError("coordinate tables use different landmark counts");
  }
  SimilarityMatrix sim;
  for (std::size_t v = 0; v < a.coords.size(); ++v) {
    if (a.valid[v]) sim.row_nodes.push_back(static_cast<int>(v));
  }
  for (std::size_t v = 0; v < b.coords.size(); ++v) {
    if (b.valid[v]) sim.col_nodes.push_back(static_cast<int>(v));
  }
  if (sim.row_nodes.empty() || sim.col_nodes.empty()) {
    throw DataError("similarity matrix has no valid rows or columns");
  }
  sim.cost.assign(sim.row_nodes.size(), std::vector<double>(sim.col_nodes.size(), 0.0));
  for (std::size_t i = 0; i < sim.row_nodes.size(); ++i) {
    const auto& u = a.coords[sim.row_nodes[i]];
    for (std::size_t j = 0; j < sim.col_nodes.size(); ++j) {
      const auto& v = b.coords[sim.col_nodes[j]];
      double acc = 0.0;
      for (int t = 0; t < a.landmark_count; ++t) {
        const double d = u[t] - v[t];
        acc += d * d;
      }
      sim.cost[i][j] = std::sqrt(acc);
    }
  }
  return sim;
}

struct AlignmentResult {
  // (first-graph node, second-graph node), sorted by first-graph node index
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> pair_costs;  // parallel to pairs
  double total_cost = 0.0;
};

namespace detail {

inline void check_costs(const SimilarityMatrix& sim) {
  if (sim.cost.empty() || sim.cost[0].empty()) throw DataError("empty similarity matrix");
  for (const auto& row : sim.cost) {
    for (double c : row) {
      if (!std::isfinite(c)) throw DataError("matching requires finite costs");
    }
  }
}

inline AlignmentResult package_pairs(const SimilarityMatrix& sim,
                                     std::vector<std::pair<int, int>> index_pairs) {
  std::sort(index_pairs.begin(), index_pairs.end());
  AlignmentResult out;
  for (const auto& [i, j] : index_pairs) {
    out.pairs.emplace_back(sim.row_nodes[i], sim.col_nodes[j]);
    out.pair_costs.push_back(sim.cost[i][j]);
    out.total_cost += sim.cost[i][j];
  }
  return out;
}

}  // namespace detail

// Exact minimum-cost assignment of size min(rows, cols). Rectangular inputs
// are padded to square with a cost strictly above anything real, so padded
// pairs never displace a real optimum; they are dropped from the result.
inline AlignmentResult match_hungarian(const SimilarityMatrix& sim) {
  detail::check_costs(sim);
  const int rows = static_cast<int>(sim.cost.size());
  const int cols = static_cast<int>(sim.cost[0].size());
  const int n = std::max(rows, cols);

  double max_cost = 0.0;
  for (const auto& row : sim.cost) {
    for (double c : row) max_cost = std::max(max_cost, c);
  }
  const double pad = (1.0 + max_cost) * static_cast<double>(n);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, pad));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a[i][j] = sim.cost[i][j];
  }

  // Shortest augmenting path assignment with dual potentials; p[j] is the
  // row currently matched to column j, column 0 is a virtual staging slot.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::pair<int, int>> index_pairs;
  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= rows && j <= cols) index_pairs.emplace_back(i - 1, j - 1);
  }
  return detail::package_pairs(sim, std::move(index_pairs));
}

// Repeatedly takes the cheapest remaining pair, ties resolved by row order
// then column order, until the smaller side is exhausted.
inline AlignmentResult match_greedy(const SimilarityMatrix& sim) {
  detail::check_costs(sim);
  const int rows = static_cast<int>(sim.cost.size());
  const int cols = static_cast<int>(sim.cost[0].size());
  std::vector<std::tuple<double, int, int>> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) entries.emplace_back(sim.cost[i][j], i, j);
  }
  std::sort(entries.begin(), entries.end());

  std::vector<char> row_used(rows, 0), col_used(cols, 0);
  std::vector<std::pair<int, int>> index_pairs;
  const int target = std::min(rows, cols);
  for (const auto& [c, i, j] : entries) {
    if (static_cast<int>(index_pairs.size()) == target) break;
    if (row_used[i] || col_used[j]) continue;
    row_used[i] = 1;
    col_used[j] = 1;
    index_pairs.emplace_back(i, j);
  }
  return detail::package_pairs(sim, std::move(index_pairs));
}

// Threshold below which two distance vectors count as "the same place".
// The equivalence check compares vectors carrying one entry per shared
// node, so a genuine mismatch grows like sqrt(vector length); multiplier
// is a per-entry tolerance, taken as a fraction of the typical coordinate
// magnitude pooled over both tables.
inline double default_equivalence_eps(const CoordinateTable& a, const CoordinateTable& b,
                                      double multiplier = 0.1) {
  const auto [sa, ca] = a.entry_sum();
  const auto [sb, cb] = b.entry_sum();
  if (ca == 0 || cb == 0) throw DataError("coordinate tables have no valid rows");
  const double per_entry = multiplier * (sa + sb) / static_cast<double>(ca + cb);
  std::size_t rows_a = 0, rows_b = 0;
  for (char f : a.valid) rows_a += (f != 0);
  for (char f : b.valid) rows_b += (f != 0);
  const std::size_t shared = std::min(rows_a, rows_b);
  return per_entry * std::sqrt(static_cast<double>(shared > 1 ? shared - 1 : 1));
}

// Fraction of matched pairs (u, v) whose full distance vectors agree: u's
// distances in g1 and v's distances in g2 to every ground-truth node pair
// (shared names, in first-graph node order, skipping u and v themselves)
// must differ by less than eps in 2-norm. A matched pair can score correct
// without being the literal truth pair when its two nodes are structurally
// interchangeable, which is exactly the point of the definition.
inline double accuracy_connected_equivalence(const DistanceOracle& o1, const DistanceOracle& o2,
                                             const AlignmentResult& result, double eps) {
  if (result.pairs.empty()) throw DataError("empty matching");
  if (!(eps > 0.0)) throw DataError("eps must be positive");
  const GroundTruthMap truth = GroundTruthMap::by_name(o1.graph(), o2.graph());
  if (truth.pairs.empty()) throw DataError("graphs share no node names");

  std::size_t correct = 0;
  for (const auto& [u, v] : result.pairs) {
    const auto& du = o1.from(u);
    const auto& dv = o2.from(v);
    double acc = 0.0;
    for (const auto& [a, b] : truth.pairs) {
      if (a == u || b == v) continue;
      if (std::isinf(du[a]) || std::isinf(dv[b])) {
        throw DataError("matched node cannot reach a ground-truth node");
      }
      const double d = du[a] - dv[b];
      acc += d * d;
    }
    if (std::sqrt(acc) < eps) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(result.pairs.size());
}

inline double accuracy_connected_equivalence(const Graph& g1, const Graph& g2,
                                             const AlignmentResult& result, double eps) {
  DistanceOracle o1(g1), o2(g2);
  return accuracy_connected_equivalence(o1, o2, result, eps);
}

// Relative change of metric distances from one source node: for each shared
// target v, s = (d1 - d2) / d1 with each graph measured in its own weights.
// The source itself is excluded.
inline std::map<std::string, double> stretch_ratios(const Graph& g1, const Graph& g2,
                                                    const std::string& source) {
  const int s1 = g1.index_of(source);
  const int s2 = g2.index_of(source);
  if (s1 < 0 || s2 < 0) throw DataError("source node '" + source + "' missing from a graph");
  const auto d1 = shortest_distances(g1, s1);
  const auto d2 = shortest_distances(g2, s2);

  std::map<std::string, double> out;
  for (int v = 0; v < g1.node_count(); ++v) {
    if (v == s1) continue;
    const int w = g2.index_of(g1.name(v));
    if (w < 0) continue;
    if (std::isinf(d1[v]) || std::isinf(d2[w])) {
      throw DataError("target '" + g1.name(v) + "' unreachable from source");
    }
    out.emplace(g1.name(v), (d1[v] - d2[w]) / d1[v]);
  }
  return out;
}

// 1-based rank of each true counterpart within its row, costs ascending;
// tied costs all receive the lowest rank of the tie group (rank = one plus
// the number of strictly cheaper entries).
inline std::map<int, int> similarity_rank(const SimilarityMatrix& sim,
                                          const GroundTruthMap& truth) {
  std::map<int, std::size_t> row_of, col_of;
  for (std::size_t i = 0; i < sim.row_nodes.size(); ++i) row_of[sim.row_nodes[i]] = i;
  for (std::size_t j = 0; j < sim.col_nodes.size(); ++j) col_of[sim.col_nodes[j]] = j;

  std::map<int, int> ranks;
  for (const auto& [a, b] : truth.pairs) {
    const auto ri = row_of.find(a);
    const auto cj = col_of.find(b);
    if (ri == row_of.end() || cj == col_of.end()) {
      throw DataError("ground-truth node missing from similarity matrix");
    }
    const auto& row = sim.cost[ri->second];
    const double own = row[cj->second];
    int smaller = 0;
    for (double c : row) {
      if (c < own) ++smaller;
    }
    ranks.emplace(a, 1 + smaller);
  }
  return ranks;
}

}  // namespace ricci
