// ricci - command-line front end for the curvature/flow/alignment library.
//
// Exit statuses: 0 success, 2 usage error, 3 data error, 4 numeric failure.
// Every output file is written atomically; with a fixed --seed each command
// is byte-for-byte reproducible.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ricci/ricci.hpp"

namespace {

using nlohmann::json;

// Readable numbers for the one-line summaries; files use full precision.
std::string g6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every subcommand needs at least one edge; fail up front with the file name
// instead of deep inside whatever statistic hits the empty set first.
ricci::Graph load_edges_file(const std::string& path) {
  ricci::Graph g = ricci::load_graph_file(path);
  if (g.edge_count() == 0) throw ricci::DataError("no edges in " + path);
  return g;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateOpts {
  std::string model;
  int n = 0;
  double p = -1.0;
  int q = -1;
  double r = -1.0;
  int k = -1;
  int d = -1;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_generate(const GenerateOpts& o) {
  ricci::Graph g;
  if (o.model == "gnp") {
    if (o.p < 0.0) throw UsageError("--p is required for model gnp");
    g = ricci::generate_gnp(o.n, o.p, o.seed);
  } else if (o.model == "kleinberg") {
    if (o.q < 0 || o.r < 0.0) throw UsageError("--q and --r are required for model kleinberg");
    g = ricci::generate_kleinberg(o.n, o.q, o.r, o.seed);
  } else if (o.model == "pref-attach") {
    if (o.k < 0) throw UsageError("--k is required for model pref-attach");
    g = ricci::generate_pref_attach(o.n, o.k, o.seed);
  } else if (o.model == "random-regular") {
    if (o.d < 0) throw UsageError("--d is required for model random-regular");
    g = ricci::generate_random_regular(o.n, o.d, o.seed);
  } else {
    throw UsageError("unknown model '" + o.model +
                     "' (expected gnp, kleinberg, pref-attach, random-regular)");
  }
  ricci::save_graph_file(o.output, g);
  std::cout << "generated model=" << o.model << " nodes=" << g.node_count()
            << " edges=" << g.edge_count() << " seed=" << o.seed << " -> " << o.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// perturb
// ---------------------------------------------------------------------------

struct PerturbOpts {
  std::string input;
  std::string output;
  int remove_nodes = 0;
  int remove_edges = 0;
  std::vector<std::string> drop_edges;  // "u,v" pairs
  std::uint64_t seed = 1;
};

int cmd_perturb(const PerturbOpts& o) {
  ricci::Graph g = load_edges_file(o.input);
  const int before_nodes = g.node_count();
  const int before_edges = g.edge_count();
  if (!o.drop_edges.empty()) {
    std::vector<std::pair<std::string, std::string>> named;
    for (const std::string& spec : o.drop_edges) {
      const auto comma = spec.find(',');
      if (comma == std::string::npos || comma == 0 || comma + 1 == spec.size()) {
        throw UsageError("--drop-edge expects 'u,v', got '" + spec + "'");
      }
      named.emplace_back(spec.substr(0, comma), spec.substr(comma + 1));
    }
    g = ricci::remove_named_edges(g, named);
  }
  if (o.remove_edges > 0) g = ricci::remove_random_edges(g, o.remove_edges, o.seed);
  if (o.remove_nodes > 0) g = ricci::remove_random_nodes(g, o.remove_nodes, o.seed);
  ricci::save_graph_file(o.output, g);
  std::cout << "perturbed nodes=" << before_nodes << "->" << g.node_count()
            << " edges=" << before_edges << "->" << g.edge_count() << " -> " << o.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// shared curvature options
// ---------------------------------------------------------------------------

ricci::CurvatureParams make_curvature_params(const std::string& method, double alpha,
                                             const std::string& denominator) {
  ricci::CurvatureParams params;
  params.alpha = alpha;
  params.method = method == "otd" ? ricci::Method::kOptimal : ricci::Method::kAverage;
  params.denominator = denominator == "weight" ? ricci::EdgeDenominator::kEdgeWeight
                                               : ricci::EdgeDenominator::kShortestPath;
  return params;
}

struct CurvatureOpts {
  std::string input;
  std::string output;
  std::string method = "atd";
  double alpha = 0.5;
  std::string denominator = "path";
};

int cmd_curvature(const CurvatureOpts& o) {
  const ricci::Graph g = load_edges_file(o.input);
  const auto params = make_curvature_params(o.method, o.alpha, o.denominator);
  const std::vector<double> kappa = ricci::curvature_map(g, params);
  if (!o.output.empty()) {
    ricci::write_text_file_atomic(o.output, ricci::curvature_csv(g, kappa));
  }
  std::cout << "curvature method=" << o.method << " alpha=" << g6(o.alpha)
            << " edges=" << g.edge_count() << " mean=" << g6(ricci::mean(kappa))
            << " std=" << g6(ricci::stddev(kappa))
            << " min=" << g6(*std::min_element(kappa.begin(), kappa.end()))
            << " max=" << g6(*std::max_element(kappa.begin(), kappa.end()));
  if (!o.output.empty()) std::cout << " -> " << o.output;
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

struct FlowOpts {
  std::string input;
  std::string output;
  std::string history;
  std::string method = "atd";
  double alpha = 0.5;
  double epsilon = 1.0;
  int iterations = 50;
  double tolerance = 1e-4;
};

int cmd_flow(const FlowOpts& o) {
  const ricci::Graph g = load_edges_file(o.input);
  ricci::FlowParams params;
  params.epsilon = o.epsilon;
  params.iterations = o.iterations;
  params.tolerance = o.tolerance;
  params.curvature = make_curvature_params(o.method, o.alpha, "path");
  const ricci::FlowResult result = ricci::ricci_flow(g, params);
  ricci::save_graph_file(o.output, result.graph);
  if (!o.history.empty()) {
    ricci::write_text_file_atomic(o.history, ricci::flow_history_csv(result.history));
  }
  std::cout << "flow method=" << o.method << " updates=" << result.updates
            << " converged=" << (result.converged ? "yes" : "no")
            << " kappa_mean=" << g6(ricci::mean(result.kappa))
            << " kappa_std=" << g6(ricci::stddev(result.kappa)) << " -> " << o.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// uniformity
// ---------------------------------------------------------------------------

struct UniformityOpts {
  std::string input;
  std::string output;
  std::string method = "atd";
  double alpha = 0.5;
  std::string denominator = "path";
};

int cmd_uniformity(const UniformityOpts& o) {
  const ricci::Graph g = load_edges_file(o.input);
  const auto params = make_curvature_params(o.method, o.alpha, o.denominator);
  const ricci::UniformityReport report = ricci::metric_uniformity(g, params);
  if (!o.output.empty()) {
    std::string csv = "u,v,ratio\n";
    for (int e = 0; e < g.edge_count(); ++e) {
      const ricci::EdgeRecord& rec = g.edges()[e];
      csv += g.name(rec.first) + "," + g.name(rec.second) + "," +
             ricci::format_g17(report.ratios[e]) + "\n";
    }
    ricci::write_text_file_atomic(o.output, csv);
  }
  std::cout << "uniformity method=" << o.method << " edges=" << g.edge_count()
            << " iqr=" << g6(report.iqr);
  if (!o.output.empty()) std::cout << " -> " << o.output;
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// align
// ---------------------------------------------------------------------------

struct AlignOpts {
  std::string g1, g2;
  std::string output;
  std::string sim_csv;
  int landmarks = 2;
  std::string metric = "rf-atd";
  std::string matcher = "hungarian";
  int repeats = 10;
  std::uint64_t seed = 1;
  double eps_multiplier = 0.1;
  double alpha = 0.5;
  double epsilon = 1.0;
  int iterations = 50;
  double tolerance = 1e-4;
};

int cmd_align(const AlignOpts& o) {
  const ricci::Graph g1 = load_edges_file(o.g1);
  const ricci::Graph g2 = load_edges_file(o.g2);

  ricci::AlignSpec spec;
  if (o.metric == "rf-atd") {
    spec.metric = ricci::MetricChoice::kRfAtd;
  } else if (o.metric == "rf-otd") {
    spec.metric = ricci::MetricChoice::kRfOtd;
  } else if (o.metric == "hop") {
    spec.metric = ricci::MetricChoice::kHop;
  } else {
    throw UsageError("unknown metric '" + o.metric + "' (expected rf-atd, rf-otd, hop)");
  }
  if (o.matcher == "hungarian") {
    spec.matcher = ricci::Matcher::kHungarian;
  } else if (o.matcher == "greedy") {
    spec.matcher = ricci::Matcher::kGreedy;
  } else {
    throw UsageError("unknown matcher '" + o.matcher + "' (expected hungarian, greedy)");
  }
  spec.landmarks = o.landmarks;
  spec.repeats = o.repeats;
  spec.seed = o.seed;
  spec.eps_multiplier = o.eps_multiplier;
  spec.flow.epsilon = o.epsilon;
  spec.flow.iterations = o.iterations;
  spec.flow.tolerance = o.tolerance;
  spec.flow.curvature.alpha = o.alpha;
  if (!o.sim_csv.empty() && o.repeats != 1) {
    throw UsageError("--sim-csv needs --repeats 1 (one matrix per draw)");
  }

  ricci::AlignContext ctx(g1, g2, spec.metric, spec.flow);
  const ricci::AlignReport report = ricci::run_alignment(ctx, spec);

  if (!o.sim_csv.empty()) {
    const auto& rep = report.repeats.front();
    ricci::LandmarkSet l1, l2;
    for (const std::string& name : rep.landmarks) {
      l1.nodes.push_back(ctx.g1.index_of(name));
      l2.nodes.push_back(ctx.g2.index_of(name));
    }
    const auto sim = ricci::similarity_matrix(ricci::coordinates(*ctx.metric1, l1),
                                              ricci::coordinates(*ctx.metric2, l2));
    std::string csv = "node";
    for (int c : sim.col_nodes) csv += "," + ctx.g2.name(c);
    csv += "\n";
    for (std::size_t i = 0; i < sim.row_nodes.size(); ++i) {
      csv += ctx.g1.name(sim.row_nodes[i]);
      for (double c : sim.cost[i]) csv += "," + ricci::format_g17(c);
      csv += "\n";
    }
    ricci::write_text_file_atomic(o.sim_csv, csv);
  }

  if (!o.output.empty()) {
    json doc;
    doc["params"] = {{"metric", o.metric},        {"landmarks", o.landmarks},
                     {"matcher", o.matcher},      {"repeats", o.repeats},
                     {"seed", o.seed},            {"eps_multiplier", o.eps_multiplier},
                     {"alpha", o.alpha},          {"epsilon", o.epsilon},
                     {"iterations", o.iterations}, {"tolerance", o.tolerance}};
    doc["accuracy"] = {{"mean", report.accuracy_mean}, {"std", report.accuracy_std}};
    doc["rank"] = {{"mean", report.rank_mean}, {"std", report.rank_std}};
    doc["seeds"] = json::array();
    doc["repeats"] = json::array();
    for (const auto& rep : report.repeats) {
      doc["seeds"].push_back(rep.seed);
      json entry;
      entry["seed"] = rep.seed;
      entry["landmarks"] = rep.landmarks;
      entry["eps"] = rep.eps;
      entry["accuracy"] = rep.accuracy;
      entry["total_cost"] = rep.total_cost;
      entry["mean_rank"] = rep.mean_rank;
      json matching = json::object();
      for (const auto& [u, v] : rep.matching.pairs) {
        matching[ctx.g1.name(u)] = ctx.g2.name(v);
      }
      entry["matching"] = std::move(matching);
      doc["repeats"].push_back(std::move(entry));
    }
    ricci::write_text_file_atomic(o.output, doc.dump(2) + "\n");
  }

  std::cout << "align metric=" << o.metric << " matcher=" << o.matcher
            << " landmarks=" << o.landmarks << " repeats=" << o.repeats
            << " accuracy=" << g6(report.accuracy_mean) << "+-" << g6(report.accuracy_std)
            << " rank_mean=" << g6(report.rank_mean);
  if (!o.output.empty()) std::cout << " -> " << o.output;
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOpts {
  std::vector<std::string> inputs;
  std::string output;
  std::string method = "atd";
  double alpha = 0.5;
};

int cmd_compare(const CompareOpts& o) {
  std::vector<std::pair<std::string, ricci::Graph>> graphs;
  for (const std::string& path : o.inputs) {
    std::string label = path;
    std::replace(label.begin(), label.end(), ',', '_');
    graphs.emplace_back(label, load_edges_file(path));
  }
  const auto params = make_curvature_params(o.method, o.alpha, "path");
  const ricci::DistanceMatrix matrix = ricci::distance_matrix(graphs, params);
  ricci::write_text_file_atomic(o.output, ricci::distance_matrix_csv(matrix));

  double off = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.labels.size(); ++j) {
      off += matrix.d[i][j];
      ++count;
    }
  }
  std::cout << "compare graphs=" << graphs.size()
            << " mean_offdiag=" << g6(count ? off / count : 0.0) << " -> " << o.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ollivier-Ricci curvature, Ricci flow metrics, graph alignment and comparison"};
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* c_gen = app.add_subcommand("generate", "Generate a random graph");
  c_gen->add_option("--model", gen.model, "gnp | kleinberg | pref-attach | random-regular")
      ->required();
  c_gen->add_option("--n", gen.n, "node count (grid side for kleinberg)")->required();
  c_gen->add_option("--p", gen.p, "edge probability (gnp)");
  c_gen->add_option("--q", gen.q, "long-range contacts per node (kleinberg)");
  c_gen->add_option("--r", gen.r, "distance exponent (kleinberg)");
  c_gen->add_option("--k", gen.k, "edges per new node (pref-attach)");
  c_gen->add_option("--d", gen.d, "degree (random-regular)");
  c_gen->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  c_gen->add_option("-o,--output", gen.output, "output edge list")->required();

  PerturbOpts pert;
  auto* c_pert = app.add_subcommand("perturb", "Remove nodes or edges from a graph");
  c_pert->add_option("-i,--input", pert.input, "input edge list")
      ->required()
      ->check(CLI::ExistingFile);
  c_pert->add_option("-o,--output", pert.output, "output edge list")->required();
  c_pert->add_option("--remove-nodes", pert.remove_nodes, "random nodes to remove")
      ->check(CLI::NonNegativeNumber);
  c_pert->add_option("--remove-edges", pert.remove_edges, "random edges to remove")
      ->check(CLI::NonNegativeNumber);
  c_pert->add_option("--drop-edge", pert.drop_edges, "named edge 'u,v' to remove (repeatable)");
  c_pert->add_option("--seed", pert.seed, "random seed")->capture_default_str();

  CurvatureOpts curv;
  auto* c_curv = app.add_subcommand("curvature", "Per-edge Ollivier-Ricci curvature");
  c_curv->add_option("-i,--input", curv.input, "input edge list")
      ->required()
      ->check(CLI::ExistingFile);
  c_curv->add_option("-o,--output", curv.output, "curvature CSV (u,v,kappa)");
  c_curv->add_option("--method", curv.method, "otd | atd")
      ->check(CLI::IsMember({"otd", "atd"}))
      ->capture_default_str();
  c_curv->add_option("--alpha", curv.alpha, "center mass in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_curv->add_option("--denominator", curv.denominator, "path | weight")
      ->check(CLI::IsMember({"path", "weight"}))
      ->capture_default_str();

  FlowOpts flow;
  auto* c_flow = app.add_subcommand("flow", "Run discrete Ricci flow on edge weights");
  c_flow->add_option("-i,--input", flow.input, "input edge list")
      ->required()
      ->check(CLI::ExistingFile);
  c_flow->add_option("-o,--output", flow.output, "output edge list (flowed weights)")->required();
  c_flow->add_option("--history", flow.history, "per-iteration curvature stats CSV");
  c_flow->add_option("--method", flow.method, "otd | atd")
      ->check(CLI::IsMember({"otd", "atd"}))
      ->capture_default_str();
  c_flow->add_option("--alpha", flow.alpha, "center mass in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_flow->add_option("--epsilon", flow.epsilon, "step size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_flow->add_option("--iterations", flow.iterations, "maximum weight updates")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  c_flow->add_option("--tolerance", flow.tolerance, "curvature-change stop threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  UniformityOpts unif;
  auto* c_unif = app.add_subcommand("uniformity", "Interquartile range of transport ratios");
  c_unif->add_option("-i,--input", unif.input, "input edge list")
      ->required()
      ->check(CLI::ExistingFile);
  c_unif->add_option("-o,--output", unif.output, "per-edge ratio CSV (u,v,ratio)");
  c_unif->add_option("--method", unif.method, "otd | atd")
      ->check(CLI::IsMember({"otd", "atd"}))
      ->capture_default_str();
  c_unif->add_option("--alpha", unif.alpha, "center mass in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_unif->add_option("--denominator", unif.denominator, "path | weight")
      ->check(CLI::IsMember({"path", "weight"}))
      ->capture_default_str();

  AlignOpts al;
  auto* c_align = app.add_subcommand("align", "Landmark-based alignment of two graphs");
  c_align->add_option("--g1", al.g1, "first graph")->required()->check(CLI::ExistingFile);
  c_align->add_option("--g2", al.g2, "second graph")->required()->check(CLI::ExistingFile);
  c_align->add_option("-o,--output", al.output, "JSON report");
  c_align->add_option("--sim-csv", al.sim_csv, "similarity matrix CSV (requires --repeats 1)");
  c_align->add_option("--landmarks", al.landmarks, "landmark count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_align->add_option("--metric", al.metric, "rf-atd | rf-otd | hop")
      ->check(CLI::IsMember({"rf-atd", "rf-otd", "hop"}))
      ->capture_default_str();
  c_align->add_option("--matcher", al.matcher, "hungarian | greedy")
      ->check(CLI::IsMember({"hungarian", "greedy"}))
      ->capture_default_str();
  c_align->add_option("--repeats", al.repeats, "landmark draws to average")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_align->add_option("--seed", al.seed, "base seed; draw i uses seed+i")->capture_default_str();
  c_align->add_option("--eps-multiplier", al.eps_multiplier,
                      "per-entry equivalence tolerance as a fraction of the mean coordinate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_align->add_option("--alpha", al.alpha, "center mass in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_align->add_option("--epsilon", al.epsilon, "flow step size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_align->add_option("--iterations", al.iterations, "flow iteration cap")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  c_align->add_option("--tolerance", al.tolerance, "flow stop threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CompareOpts cmp;
  auto* c_cmp = app.add_subcommand("compare", "Curvature-signature distance matrix");
  c_cmp->add_option("--inputs", cmp.inputs, "two or more edge lists")
      ->required()
      ->expected(2, -1)
      ->check(CLI::ExistingFile);
  c_cmp->add_option("-o,--output", cmp.output, "distance matrix CSV")->required();
  c_cmp->add_option("--method", cmp.method, "otd | atd")
      ->check(CLI::IsMember({"otd", "atd"}))
      ->capture_default_str();
  c_cmp->add_option("--alpha", cmp.alpha, "center mass in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_gen->parsed()) return cmd_generate(gen);
    if (c_pert->parsed()) return cmd_perturb(pert);
    if (c_curv->parsed()) return cmd_curvature(curv);
    if (c_flow->parsed()) return cmd_flow(flow);
    if (c_unif->parsed()) return cmd_uniformity(unif);
    if (c_align->parsed()) return cmd_align(al);
    if (c_cmp->parsed()) return cmd_compare(cmp);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ricci::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const ricci::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
