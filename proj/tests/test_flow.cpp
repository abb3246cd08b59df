#include "ricci/flow.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ricci/generate.hpp"
#include "ricci/graph.hpp"
#include "ricci/stats.hpp"
#include "support/karate.hpp"

using ricci::DataError;
using ricci::FlowParams;
using ricci::Graph;

namespace {

TEST(Normalize, RescalesToEdgeCount) {
  const Graph g = Graph::from_edges({{"a", "b", 1.0}, {"b", "c", 2.0}, {"c", "d", 3.0}});
  const Graph n = ricci::normalize_weights(g);
  EXPECT_DOUBLE_EQ(n.weight_of_edge(0), 0.5);
  EXPECT_DOUBLE_EQ(n.weight_of_edge(1), 1.0);
  EXPECT_DOUBLE_EQ(n.weight_of_edge(2), 1.5);
  EXPECT_DOUBLE_EQ(n.total_weight(), 3.0);
  // already normalized weights are a fixed point
  const Graph again = ricci::normalize_weights(n);
  for (int e = 0; e < n.edge_count(); ++e) {
    EXPECT_DOUBLE_EQ(again.weight_of_edge(e), n.weight_of_edge(e));
  }
}

TEST(FlowStep, HandComputedUpdate) {
  const Graph g = Graph::from_edges({{"a", "b", 1.0}, {"b", "c", 1.0}});
  const Graph next = ricci::flow_step(g, {0.5, -0.5}, 1.0);
  // 1 - 0.5 = 0.5 and 1 + 0.5 = 1.5 already sum to the edge count
  EXPECT_DOUBLE_EQ(next.weight_of_edge(0), 0.5);
  EXPECT_DOUBLE_EQ(next.weight_of_edge(1), 1.5);
  EXPECT_THROW(ricci::flow_step(g, {0.5}, 1.0), DataError);
}

TEST(FlowStep, FloorStopsEdgeCollapse) {
  // kappa = 1 with epsilon = 1 would zero the weight; the floor plus
  // renormalization keeps the metric alive
  const Graph g = Graph::from_edges({{"a", "b", 1.0}});
  const Graph next = ricci::flow_step(g, {1.0}, 1.0);
  EXPECT_GT(next.weight_of_edge(0), 0.0);
  EXPECT_DOUBLE_EQ(next.total_weight(), 1.0);
}

TEST(RicciFlow, ZeroStepKeepsNormalizedWeights) {
  const Graph g = fixtures::karate_club();
  FlowParams params;
  params.epsilon = 0.0;
  params.iterations = 3;
  params.tolerance = 0.0;
  const ricci::FlowResult result = ricci::ricci_flow(g, params);
  EXPECT_EQ(result.updates, 3);
  for (int e = 0; e < g.edge_count(); ++e) {
    EXPECT_DOUBLE_EQ(result.graph.weight_of_edge(e), 1.0);
  }
}

TEST(RicciFlow, HistoryRowsTrackIterations) {
  const Graph g = fixtures::karate_club();
  FlowParams params;
  params.iterations = 5;
  params.tolerance = 0.0;  // no early stop
  const ricci::FlowResult result = ricci::ricci_flow(g, params);
  EXPECT_EQ(result.updates, 5);
  EXPECT_FALSE(result.converged);
  ASSERT_EQ(result.history.size(), 6u);  // initial state plus one row per update
  for (std::size_t i = 0; i < result.history.size(); ++i) {
    const auto& row = result.history[i];
    EXPECT_EQ(row.iter, static_cast<int>(i));
    EXPECT_NEAR(row.total_weight, g.edge_count(), 1e-9);
    EXPECT_LE(row.kappa_min, row.kappa_mean);
    EXPECT_GE(row.kappa_max, row.kappa_mean);
    EXPECT_GE(row.kappa_std, 0.0);
  }
  // the final history row describes the returned graph
  EXPECT_NEAR(result.history.back().kappa_mean, ricci::mean(result.kappa), 1e-12);
}

TEST(RicciFlow, WeightedInputIsNormalizedOnEntry) {
  Graph g = fixtures::karate_club();
  std::vector<double> w(g.edge_count());
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = 0.5 + 0.01 * static_cast<double>(e);
  g = g.with_weights(w);
  FlowParams params;
  params.iterations = 2;
  params.tolerance = 0.0;
  const ricci::FlowResult result = ricci::ricci_flow(g, params);
  for (const auto& row : result.history) {
    EXPECT_NEAR(row.total_weight, g.edge_count(), 1e-9);
  }
}

TEST(RicciFlow, SymmetricGraphConvergesImmediately) {
  // complete graph: every edge sees the same curvature, so the first update
  // changes nothing after normalization and the flow reports convergence
  const Graph k4 = Graph::from_edges({{"a", "b", 1.0},
                                      {"a", "c", 1.0},
                                      {"a", "d", 1.0},
                                      {"b", "c", 1.0},
                                      {"b", "d", 1.0},
                                      {"c", "d", 1.0}});
  const ricci::FlowResult result = ricci::ricci_flow(k4);
  EXPECT_TRUE(result.converged);
  EXPECT_EQ(result.updates, 1);
  for (int e = 0; e < k4.edge_count(); ++e) {
    EXPECT_NEAR(result.graph.weight_of_edge(e), 1.0, 1e-12);
  }
}

TEST(RicciFlow, KarateCurvatureSpreadShrinks) {
  const Graph g = fixtures::karate_club();
  FlowParams params;
  params.iterations = 20;
  const ricci::FlowResult result = ricci::ricci_flow(g, params);
  EXPECT_LT(result.history.back().kappa_std, 0.5 * result.history.front().kappa_std);
}

TEST(RicciFlow, ParameterValidation) {
  const Graph g = fixtures::karate_club();
  FlowParams bad;
  bad.epsilon = -1.0;
  EXPECT_THROW(ricci::ricci_flow(g, bad), DataError);
  FlowParams bad2;
  bad2.iterations = -1;
  EXPECT_THROW(ricci::ricci_flow(g, bad2), DataError);
  EXPECT_THROW(ricci::ricci_flow(Graph()), DataError);
}

TEST(Uniformity, ConstantRatioGraphHasZeroIqr) {
  // on a complete graph every edge moves mass at the same relative cost
  const Graph k4 = Graph::from_edges({{"a", "b", 1.0},
                                      {"a", "c", 1.0},
                                      {"a", "d", 1.0},
                                      {"b", "c", 1.0},
                                      {"b", "d", 1.0},
                                      {"c", "d", 1.0}});
  const ricci::UniformityReport report = ricci::metric_uniformity(k4);
  EXPECT_NEAR(report.iqr, 0.0, 1e-12);
  ASSERT_EQ(report.ratios.size(), 6u);
  for (double r : report.ratios) EXPECT_NEAR(r, report.ratios[0], 1e-12);
}

TEST(Uniformity, FlowTightensKarate) {
  const Graph g = fixtures::karate_club();
  const double before = ricci::metric_uniformity(g).iqr;
  FlowParams params;
  params.iterations = 20;
  const Graph flowed = ricci::ricci_flow(g, params).graph;
  const double after = ricci::metric_uniformity(flowed).iqr;
  EXPECT_LT(after, before);
}

}  // namespace
