// io.hpp - file plumbing and report writers
//
// Writers build the whole document in memory and publish it with a
// temp-file-plus-rename, so a crash mid-write never leaves a truncated
// output behind.
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ricci/error.hpp"
#include "ricci/flow.hpp"
#include "ricci/format.hpp"
#include "ricci/graph.hpp"
#include "ricci/comparison.hpp"

namespace ricci {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("read failure on '" + path + "'");
  return buf.str();
}

inline void write_text_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw DataError("write failure on '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DataError("cannot move '" + tmp.string() + "' into place: " + ec.message());
  }
}

inline Graph load_graph_file(const std::string& path) {
  try {
    return load_graph(read_text_file(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

inline void save_graph_file(const std::string& path, const Graph& g) {
  write_text_file_atomic(path, save_graph(g));
}

// CSV with header u,v,kappa; edges in the canonical sorted order.
inline std::string curvature_csv(const Graph& g, const std::vector<double>& kappa) {
  if (kappa.size() != static_cast<std::size_t>(g.edge_count())) {
    throw DataError("curvature vector size does not match edge count");
  }
  std::string out = "u,v,kappa\n";
  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgeRecord& rec = g.edges()[e];
    out += g.name(rec.first);
    out += ',';
    out += g.name(rec.second);
    out += ',';
    out += format_g17(kappa[e]);
    out += '\n';
  }
  return out;
}

inline std::string flow_history_csv(const std::vector<FlowHistoryRow>& history) {
  std::string out = "iter,kappa_min,kappa_max,kappa_mean,kappa_std,total_weight\n";
  for (const FlowHistoryRow& row : history) {
    out += std::to_string(row.iter);
    out += ',';
    out += format_g17(row.kappa_min);
    out += ',';
    out += format_g17(row.kappa_max);
    out += ',';
    out += format_g17(row.kappa_mean);
    out += ',';
    out += format_g17(row.kappa_std);
    out += ',';
    out += format_g17(row.total_weight);
    out += '\n';
  }
  return out;
}

// Symmetric distance matrix with labels on both axes.
inline std::string distance_matrix_csv(const DistanceMatrix& matrix) {
  std::string out = "label";
  for (const std::string& l : matrix.labels) {
    out += ',';
    out += l;
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    out += matrix.labels[i];
    for (std::size_t j = 0; j < matrix.labels.size(); ++j) {
      out += ',';
      out += format_g17(matrix.d[i][j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ricci
