// Test oracles: slow, independent reference implementations that the fast
// library code is checked against. Nothing here shares an algorithm with
// the code under test: transport goes through a generic equality-form LP
// simplex, distances through Floyd-Warshall, assignment through exhaustive
// permutation search.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ricci/graph.hpp"

namespace oracle {

struct LpResult {
  double value = 0.0;
  std::vector<double> x;
};

// Minimize c.x subject to A x = b, x >= 0. Dense two-phase tableau simplex
// with Bland's anti-cycling rule; fine for the tiny instances tests build.
inline LpResult solve_equality_lp(std::vector<std::vector<double>> A, std::vector<double> b,
                                  const std::vector<double>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != n) throw std::invalid_argument("ragged LP matrix");
    if (b[i] < 0.0) {
      b[i] = -b[i];
      for (double& a : A[i]) a = -a;
    }
  }

  const int total = n + m;  // structural variables then one artificial per row
  std::vector<std::vector<double>> tab(m, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = A[i][j];
    tab[i][n + i] = 1.0;
    tab[i][total] = b[i];
    basis[i] = n + i;
  }

  auto pivot = [&](int row, int col) {
    const double p = tab[row][col];
    for (double& v : tab[row]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = tab[i][col];
      if (std::abs(f) < 1e-13) continue;
      for (int j = 0; j <= total; ++j) tab[i][j] -= f * tab[row][j];
    }
    basis[row] = col;
  };

  // One simplex phase: minimize obj over columns [0, limit).
  auto run = [&](const std::vector<double>& obj, int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit && enter < 0; ++j) {
        bool in_basis = false;
        for (int i = 0; i < m; ++i) {
          if (basis[i] == j) {
            in_basis = true;
            break;
          }
        }
        if (in_basis) continue;
        double reduced = obj[j];
        for (int i = 0; i < m; ++i) reduced -= obj[basis[i]] * tab[i][j];
        if (reduced < -1e-9) enter = j;  // Bland: first eligible index
      }
      if (enter < 0) return;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (tab[i][enter] <= 1e-9) continue;
        const double ratio = tab[i][total] / tab[i][enter];
        if (ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) throw std::runtime_error("LP unbounded");
      pivot(leave, enter);
    }
  };

  std::vector<double> phase1_obj(total, 0.0);
  for (int j = n; j < total; ++j) phase1_obj[j] = 1.0;
  run(phase1_obj, total);
  double infeasibility = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= n) infeasibility += tab[i][total];
  }
  if (infeasibility > 1e-7) throw std::runtime_error("LP infeasible");

  // Swap leftover artificials for structural columns where possible; rows
  // that offer none are redundant and keep a zero-valued artificial.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab[i][j]) > 1e-9) {
        pivot(i, j);
        break;
      }
    }
  }

  std::vector<double> phase2_obj(total, 0.0);
  for (int j = 0; j < n; ++j) phase2_obj[j] = c[j];
  run(phase2_obj, n);

  LpResult result;
  result.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = tab[i][total];
  }
  for (int j = 0; j < n; ++j) result.value += c[j] * result.x[j];
  return result;
}

// Optimal transport cost by generic LP over the full coupling polytope.
inline double transport_cost_lp(const std::vector<double>& mu, const std::vector<double>& nu,
                                const std::vector<std::vector<double>>& cost) {
  const int m = static_cast<int>(mu.size());
  const int k = static_cast<int>(nu.size());
  const int n = m * k;
  std::vector<std::vector<double>> A(m + k, std::vector<double>(n, 0.0));
  std::vector<double> c(n, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      A[i][i * k + j] = 1.0;
      A[m + j][i * k + j] = 1.0;
      c[i * k + j] = cost[i][j];
    }
  }
  std::vector<double> b(mu);
  b.insert(b.end(), nu.begin(), nu.end());
  return solve_equality_lp(std::move(A), std::move(b), c).value;
}

// All-pairs shortest paths, the cubic way.
inline std::vector<std::vector<double>> apsp_floyd_warshall(const ricci::Graph& g) {
  const int n = g.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const ricci::EdgeRecord& rec = g.edges()[e];
    d[rec.first][rec.second] = std::min(d[rec.first][rec.second], g.weight_of_edge(e));
    d[rec.second][rec.first] = d[rec.first][rec.second];
  }
  for (int via = 0; via < n; ++via) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][via] + d[via][j] < d[i][j]) d[i][j] = d[i][via] + d[via][j];
      }
    }
  }
  return d;
}

// Minimum assignment cost over every injection of rows into columns
// (rows <= cols required); factorially slow, for tiny matrices only.
inline double assignment_exhaustive(const std::vector<std::vector<double>>& cost) {
  const int rows = static_cast<int>(cost.size());
  const int cols = static_cast<int>(cost[0].size());
  if (rows > cols) throw std::invalid_argument("needs rows <= cols");
  std::vector<int> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::sort(perm.begin(), perm.end());
  do {
    double acc = 0.0;
    for (int i = 0; i < rows; ++i) acc += cost[i][perm[i]];
    best = std::min(best, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle
