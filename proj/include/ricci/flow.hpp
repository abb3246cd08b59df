// flow.hpp - discrete Ricci flow on edge weights
//
// Each step stretches negatively curved edges and shrinks positively curved
// ones: w <- w - eps * kappa * w, with all curvatures taken from the weights
// as they were at the start of the step. Weights are then rescaled so their
// sum equals the edge count, which pins down the overall scale the flow
// would otherwise drift in.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/graph.hpp"
#include "ricci/parallel.hpp"
#include "ricci/stats.hpp"

namespace ricci {

struct FlowParams {
  double epsilon = 1.0;        // step size
  int iterations = 50;         // maximum number of weight updates
  double tolerance = 1e-4;     // stop when max |kappa change| drops below this
  CurvatureParams curvature;   // method used inside the flow
};

inline void validate(const FlowParams& p) {
  validate(p.curvature);
  if (!(p.epsilon >= 0.0)) throw DataError("epsilon must be nonnegative");
  if (p.iterations < 0) throw DataError("iterations must be nonnegative");
  if (!(p.tolerance >= 0.0)) throw DataError("tolerance must be nonnegative");
}

// One row per curvature evaluation; row i describes the weights after i
// updates, so the first row is the input graph and the last row is the
// returned graph.
struct FlowHistoryRow {
  int iter = 0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double kappa_mean = 0.0;
  double kappa_std = 0.0;
  double total_weight = 0.0;
};

struct FlowResult {
  Graph graph;                       // final weights
  std::vector<double> kappa;         // curvature of the final weights
  std::vector<FlowHistoryRow> history;
  bool converged = false;            // tolerance reached before the cap
  int updates = 0;                   // weight updates actually applied
};

// Smallest weight the flow will produce; keeps shortest paths well defined
// when an edge collapses.
inline constexpr double kWeightFloor = 1e-12;

// Rescales weights to make their sum equal the edge count (so the all-ones
// metric is a fixed point of normalization).
inline Graph normalize_weights(const Graph& g) {
  if (g.edge_count() == 0) return g;
  const double total = g.total_weight();
  if (!(total > 0.0)) throw NumericError("cannot normalize: nonpositive total weight");
  const double scale = static_cast<double>(g.edge_count()) / total;
  std::vector<double> w = g.weights();
  for (double& x : w) x = std::max(x * scale, kWeightFloor);
  return g.with_weights(std::move(w));
}

// Applies one flow update with precomputed curvatures and renormalizes.
inline Graph flow_step(const Graph& g, const std::vector<double>& kappa, double epsilon) {
  if (kappa.size() != static_cast<std::size_t>(g.edge_count())) {
    throw DataError("curvature vector size does not match edge count");
  }
  std::vector<double> w = g.weights();
  for (std::size_t e = 0; e < w.size(); ++e) {
    w[e] = std::max(w[e] - epsilon * kappa[e] * w[e], kWeightFloor);
  }
  return normalize_weights(g.with_weights(std::move(w)));
}

inline FlowHistoryRow summarize(int iter, const std::vector<double>& kappa, double total_weight) {
  FlowHistoryRow row;
  row.iter = iter;
  row.kappa_min = *std::min_element(kappa.begin(), kappa.end());
  row.kappa_max = *std::max_element(kappa.begin(), kappa.end());
  row.kappa_mean = mean(kappa);
  row.kappa_std = stddev(kappa);
  row.total_weight = total_weight;
  return row;
}

// Runs the flow until the curvature stops moving (max absolute change below
// params.tolerance between consecutive evaluations) or the iteration cap is
// reached, whichever comes first. Weights are normalized on entry, so every
// history row satisfies the sum-equals-edge-count invariant; curvature is
// scale-invariant, so this does not alter the trajectory. A tolerance of 0
// disables early stopping.
inline FlowResult ricci_flow(const Graph& g, const FlowParams& params = {}) {
  validate(params);
  if (g.edge_count() == 0) throw DataError("ricci flow needs at least one edge");

  FlowResult result;
  Graph current = normalize_weights(g);
  std::vector<double> prev_kappa;
  for (int iter = 0;; ++iter) {
    DistanceOracle oracle(current);
    std::vector<double> kappa = curvature_map(oracle, params.curvature);
    result.history.push_back(summarize(iter, kappa, current.total_weight()));

    if (!prev_kappa.empty()) {
      double change = 0.0;
      for (std::size_t e = 0; e < kappa.size(); ++e) {
        change = std::max(change, std::abs(kappa[e] - prev_kappa[e]));
      }
      if (change < params.tolerance) {
        result.converged = true;
        result.graph = std::move(current);
        result.kappa = std::move(kappa);
        return result;
      }
    }
    if (iter == params.iterations) {
      result.graph = std::move(current);
      result.kappa = std::move(kappa);
      return result;
    }
    current = flow_step(current, kappa, params.epsilon);
    prev_kappa = std::move(kappa);
    ++result.updates;
  }
}

// ---------------------------------------------------------------------------
// Metric uniformity: spread of the transport-to-distance ratio across edges.
// A perfectly uniform metric moves mass at the same relative cost everywhere,
// so the interquartile range of the ratios drops toward zero.
// ---------------------------------------------------------------------------

struct UniformityReport {
  std::vector<double> ratios;  // T(x, y) / d(x, y), indexed like edges()
  double iqr = 0.0;
};

inline UniformityReport metric_uniformity(const DistanceOracle& oracle,
                                          const CurvatureParams& params = {}) {
  validate(params);
  const Graph& g = oracle.graph();
  if (g.edge_count() == 0) throw DataError("uniformity needs at least one edge");
  UniformityReport report;
  report.ratios.resize(g.edge_count());
  parallel_for(g.edge_count(), [&](std::size_t e) {
    const EdgeRecord& rec = g.edges()[e];
    const double denom = params.denominator == EdgeDenominator::kShortestPath
                             ? oracle.between(rec.first, rec.second)
                             : g.weight_of_edge(static_cast<int>(e));
    report.ratios[e] = edge_transport_cost(oracle, static_cast<int>(e), params) / denom;
  });
  report.iqr = interquartile_range(report.ratios);
  return report;
}

inline UniformityReport metric_uniformity(const Graph& g, const CurvatureParams& params = {}) {
  DistanceOracle oracle(g);
  return metric_uniformity(oracle, params);
}

}  // namespace ricci
