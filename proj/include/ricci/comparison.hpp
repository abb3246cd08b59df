// comparison.hpp - curvature-distribution signatures and graph distances
//
// A graph's signature is simply its sorted multiset of edge curvatures, one
// atom of mass 1/|E| per edge. Signatures compare by exact 1-D earth mover
// distance, giving a pairwise distance matrix between whole graphs.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/graph.hpp"

namespace ricci {

struct CurvatureSignature {
  std::string label;
  CurvatureParams params;
  std::vector<double> samples;  // sorted ascending, one per edge
};

inline CurvatureSignature curvature_signature(const Graph& g, const CurvatureParams& params = {},
                                              std::string label = "") {
  if (g.edge_count() == 0) throw DataError("signature needs at least one edge");
  if (!is_connected(g)) throw DataError("signature requires a connected graph");
  CurvatureSignature sig;
  sig.label = std::move(label);
  sig.params = params;
  sig.samples = curvature_map(g, params);
  std::sort(sig.samples.begin(), sig.samples.end());
  return sig;
}

// Exact earth mover distance between empirical distributions of possibly
// different sizes: the L1 gap between the two quantile functions. Both are
// step functions with jumps at i/n and j/m, so integrating over the merged
// breakpoints is exact; segment boundaries are tracked in integer units of
// 1/(n*m) to keep the sweep itself free of rounding.
inline double emd_1d(const CurvatureSignature& a, const CurvatureSignature& b) {
  const std::int64_t n = static_cast<std::int64_t>(a.samples.size());
  const std::int64_t m = static_cast<std::int64_t>(b.samples.size());
  if (n == 0 || m == 0) throw DataError("earth mover distance needs nonempty signatures");

  double acc = 0.0;
  std::int64_t pos = 0;  // current position in units of 1/(n*m)
  std::int64_t i = 0, j = 0;
  const std::int64_t total = n * m;
  while (pos < total) {
    const std::int64_t next_i = (i + 1) * m;  // where a's step i ends
    const std::int64_t next_j = (j + 1) * n;  // where b's step j ends
    const std::int64_t end = std::min(next_i, next_j);
    acc += std::abs(a.samples[i] - b.samples[j]) * static_cast<double>(end - pos);
    pos = end;
    if (next_i == end) ++i;
    if (next_j == end) ++j;
  }
  return acc / static_cast<double>(total);
}

struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d;  // symmetric, zero diagonal
};

// Pairwise signature distances over a labeled graph collection.
inline DistanceMatrix distance_matrix(const std::vector<std::pair<std::string, Graph>>& graphs,
                                      const CurvatureParams& params = {}) {
  if (graphs.size() < 2) throw DataError("distance matrix needs at least two graphs");
  std::vector<CurvatureSignature> sigs;
  sigs.reserve(graphs.size());
  DistanceMatrix out;
  for (const auto& [label, g] : graphs) {
    out.labels.push_back(label);
    sigs.push_back(curvature_signature(g, params, label));
  }
  out.d.assign(graphs.size(), std::vector<double>(graphs.size(), 0.0));
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    for (std::size_t j = i + 1; j < sigs.size(); ++j) {
      const double dist = emd_1d(sigs[i], sigs[j]);
      out.d[i][j] = dist;
      out.d[j][i] = dist;
    }
  }
  return out;
}

}  // namespace ricci
