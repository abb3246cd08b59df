#include "ricci/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ricci/curvature.hpp"
#include "ricci/generate.hpp"
#include "ricci/graph.hpp"
#include "ricci/rng.hpp"
#include "support/karate.hpp"
#include "support/oracles.hpp"

using ricci::CurvatureParams;
using ricci::CurvatureSignature;
using ricci::DataError;
using ricci::Graph;
using ricci::Method;

namespace {

Graph k4() {
  return Graph::from_edges({{"a", "b", 1.0},
                            {"a", "c", 1.0},
                            {"a", "d", 1.0},
                            {"b", "c", 1.0},
                            {"b", "d", 1.0},
                            {"c", "d", 1.0}});
}

CurvatureSignature sig_of(std::vector<double> samples) {
  CurvatureSignature s;
  std::sort(samples.begin(), samples.end());
  s.samples = std::move(samples);
  return s;
}

TEST(Signature, CompleteGraphIsConstant) {
  CurvatureParams params;
  params.method = Method::kOptimal;
  const CurvatureSignature sig = ricci::curvature_signature(k4(), params, "k4");
  EXPECT_EQ(sig.label, "k4");
  ASSERT_EQ(sig.samples.size(), 6u);
  for (double k : sig.samples) EXPECT_NEAR(k, 2.0 / 3.0, 1e-9);
}

TEST(Signature, SamplesAreSortedPerEdge) {
  const Graph g = fixtures::karate_club();
  const CurvatureSignature sig = ricci::curvature_signature(g);
  ASSERT_EQ(sig.samples.size(), static_cast<std::size_t>(g.edge_count()));
  EXPECT_TRUE(std::is_sorted(sig.samples.begin(), sig.samples.end()));
  // same multiset as the raw curvature map
  std::vector<double> raw = ricci::curvature_map(g, CurvatureParams{});
  std::sort(raw.begin(), raw.end());
  EXPECT_EQ(sig.samples, raw);
}

TEST(Signature, RejectsEmptyAndDisconnected) {
  EXPECT_THROW(ricci::curvature_signature(Graph()), DataError);
  const Graph split = Graph::from_edges({{"a", "b", 1.0}, {"c", "d", 1.0}});
  EXPECT_THROW(ricci::curvature_signature(split), DataError);
}

TEST(Signature, IgnoresNodeNames) {
  const Graph g1 = Graph::from_edges({{"a", "b", 1.0}, {"b", "c", 1.0}, {"c", "a", 1.0},
                                      {"c", "d", 1.0}});
  const Graph g2 = Graph::from_edges({{"x", "y", 1.0}, {"y", "z", 1.0}, {"z", "x", 1.0},
                                      {"z", "w", 1.0}});
  const auto s1 = ricci::curvature_signature(g1).samples;
  const auto s2 = ricci::curvature_signature(g2).samples;
  ASSERT_EQ(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_NEAR(s1[i], s2[i], 1e-12);
}

TEST(Emd, HandValues) {
  EXPECT_DOUBLE_EQ(ricci::emd_1d(sig_of({0.0, 1.0}), sig_of({0.5, 0.5})), 0.5);
  EXPECT_DOUBLE_EQ(ricci::emd_1d(sig_of({0.0}), sig_of({1.0})), 1.0);
  EXPECT_DOUBLE_EQ(ricci::emd_1d(sig_of({0.0, 0.0}), sig_of({1.0})), 1.0);
  // one atom versus two atoms half a unit apart on each side
  EXPECT_DOUBLE_EQ(ricci::emd_1d(sig_of({0.5}), sig_of({0.0, 1.0})), 0.5);
  EXPECT_DOUBLE_EQ(ricci::emd_1d(sig_of({1.0, 2.0, 3.0}), sig_of({1.0, 2.0, 3.0})), 0.0);
  EXPECT_THROW(ricci::emd_1d(sig_of({}), sig_of({1.0})), DataError);
}

TEST(Emd, EqualLengthIsMeanSortedGap) {
  ricci::Rng rng(314);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(8), b(8);
    for (double& x : a) x = rng.unit() * 4.0 - 2.0;
    for (double& x : b) x = rng.unit() * 4.0 - 2.0;
    const CurvatureSignature sa = sig_of(a);
    const CurvatureSignature sb = sig_of(b);
    double mean_gap = 0.0;
    for (int i = 0; i < 8; ++i) mean_gap += std::abs(sa.samples[i] - sb.samples[i]);
    mean_gap /= 8.0;
    EXPECT_NEAR(ricci::emd_1d(sa, sb), mean_gap, 1e-12);
  }
}

TEST(Emd, MatchesTransportOracleOnUnequalLengths) {
  ricci::Rng rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int m = 2 + static_cast<int>(rng.below(5));
    std::vector<double> a(n), b(m);
    for (double& x : a) x = rng.unit() * 2.0 - 1.0;
    for (double& x : b) x = rng.unit() * 2.0 - 1.0;
    const CurvatureSignature sa = sig_of(a);
    const CurvatureSignature sb = sig_of(b);

    // uniform atoms with |a_i - b_j| ground cost solved as a transport LP
    std::vector<double> mu(n, 1.0 / n), nu(m, 1.0 / m);
    std::vector<std::vector<double>> cost(n, std::vector<double>(m));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) cost[i][j] = std::abs(sa.samples[i] - sb.samples[j]);
    }
    const double lp = oracle::transport_cost_lp(mu, nu, cost);
    EXPECT_NEAR(ricci::emd_1d(sa, sb), lp, 1e-9) << "sizes " << n << "x" << m;
  }
}

TEST(Emd, MetricProperties) {
  ricci::Rng rng(161803);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(2 + rng.below(4)), b(2 + rng.below(4)), c(2 + rng.below(4));
    for (double& x : a) x = rng.unit();
    for (double& x : b) x = rng.unit();
    for (double& x : c) x = rng.unit();
    const CurvatureSignature sa = sig_of(a), sb = sig_of(b), sc = sig_of(c);
    const double ab = ricci::emd_1d(sa, sb);
    const double ba = ricci::emd_1d(sb, sa);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_GE(ab, 0.0);
    EXPECT_DOUBLE_EQ(ricci::emd_1d(sa, sa), 0.0);
    EXPECT_LE(ab, ricci::emd_1d(sa, sc) + ricci::emd_1d(sc, sb) + 1e-12);
  }
}

TEST(DistanceMatrix, DuplicateGraphsSitAtZero) {
  const Graph g = fixtures::karate_club();
  const ricci::DistanceMatrix dm =
      ricci::distance_matrix({{"one", g}, {"two", g}, {"k4", k4()}});
  EXPECT_EQ(dm.labels, (std::vector<std::string>{"one", "two", "k4"}));
  EXPECT_DOUBLE_EQ(dm.d[0][1], 0.0);
  EXPECT_GT(dm.d[0][2], 0.0);
  for (std::size_t i = 0; i < dm.d.size(); ++i) {
    EXPECT_DOUBLE_EQ(dm.d[i][i], 0.0);
    for (std::size_t j = 0; j < dm.d.size(); ++j) {
      EXPECT_DOUBLE_EQ(dm.d[i][j], dm.d[j][i]);
    }
  }
}

TEST(DistanceMatrix, NeedsTwoGraphs) {
  EXPECT_THROW(ricci::distance_matrix({{"only", k4()}}), DataError);
  EXPECT_THROW(ricci::distance_matrix({}), DataError);
}

}  // namespace
