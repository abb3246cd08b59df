// stats.hpp - small numeric summaries used by flow history and reports
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ricci/error.hpp"

namespace ricci {

inline double mean(const std::vector<double>& v) {
  if (v.empty()) throw DataError("mean of empty vector");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Population standard deviation (N in the denominator).
inline double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

// Quantile by linear interpolation between order statistics, the common
// "type 7" rule: h = (n-1)p, q = x[floor(h)] + (h - floor(h)) * (x[floor(h)+1] - x[floor(h)]).
// Input need not be sorted.
inline double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw DataError("quantile of empty vector");
  if (p < 0.0 || p > 1.0) throw DataError("quantile p outside [0,1]");
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = h - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

// 75th minus 25th percentile under the type-7 quantile rule.
inline double interquartile_range(const std::vector<double>& v) {
  return quantile(v, 0.75) - quantile(v, 0.25);
}

}  // namespace ricci
