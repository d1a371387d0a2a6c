// gcaofp: preprocessing, runs, baselines, parameter sweeps, ER density study
// and partition evaluation. All tables are written as CSV.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gcaofp/gcaofp.hpp>

namespace fs = std::filesystem;
using namespace gcaofp;

namespace {

struct GraphFlags {
  std::string edges;
  bool directed = false;
  bool weighted = false;
  bool normalize = false;
};

struct ModelFlags {
  double lambda = 1.4;
  double psi = 0.4;
  double beta = 0.9;
  double gamma = 1.0;
  double epsilon = 1e-6;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  std::optional<std::size_t> init_k;
  std::string mode = "linear";
  std::size_t max_iters = 10000;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& g) {
  cmd->add_option("--edges", g.edges, "edge list file")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--directed", g.directed, "read each line as one arc (default: undirected)");
  cmd->add_flag("--weighted", g.weighted, "third column is the arc weight");
  cmd->add_flag("--normalize", g.normalize, "drop nonpositive weights and scale into (0, 1]");
}

void add_model_flags(CLI::App* cmd, ModelFlags& m) {
  cmd->add_option("--lambda", m.lambda, "community susceptibility")->capture_default_str();
  cmd->add_option("--psi", m.psi, "confidence level of the community game")->capture_default_str();
  cmd->add_option("--beta", m.beta, "initial opinion confidence bound")->capture_default_str();
  cmd->add_option("--gamma", m.gamma, "per-step shrink factor of the bound")->capture_default_str();
  cmd->add_option("--epsilon", m.epsilon, "convergence threshold on max |dx|")->capture_default_str();
  cmd->add_option("--seed", m.seed, "first seed; repeat r uses seed + r")->capture_default_str();
  cmd->add_option("--repeats", m.repeats, "number of seeds")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--init-k", m.init_k, "initial labels drawn from [0, k) (default: n)");
  cmd->add_option("--mode", m.mode, "opinion weighting")
      ->capture_default_str()
      ->check(CLI::IsMember({"linear", "binary"}));
  cmd->add_option("--max-iters", m.max_iters, "outer iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
}

Network load_network(const GraphFlags& g) {
  EdgeList list = read_edge_list(g.edges, {g.directed, g.weighted, g.normalize});
  if (list.arcs.empty()) throw GraphError(g.edges + ": no arcs");
  if (g.normalize) list = normalize_weights(list);
  return Network::build(list);
}

Params make_params(const ModelFlags& m, std::size_t n, std::uint64_t seed) {
  Params p = Params::uniform(n, m.lambda);
  p.psi = m.psi;
  p.beta = m.beta;
  p.gamma = m.gamma;
  p.epsilon = m.epsilon;
  p.mode = parse_weighting_mode(m.mode);
  p.max_outer_iters = m.max_iters;
  p.seed = seed;
  p.init_k = m.init_k;
  return p;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_traces(const fs::path& dir, std::uint64_t seed, const Network& net, const RunResult& r) {
  fs::create_directories(dir);
  const std::string stem = "run_" + std::to_string(seed);
  {
    auto out = open_out(dir / (stem + "_opinions.csv"));
    write_snapshot_csv(out, r.opinion_trace);
  }
  {
    auto out = open_out(dir / (stem + "_labels.csv"));
    write_snapshot_csv(out, r.label_trace);
  }
  {
    auto out = open_out(dir / (stem + "_potential.csv"));
    write_potential_csv(out, r.potential_trace);
  }
  {
    auto out = open_out(dir / (stem + "_welfare.csv"));
    write_series_csv(out, r.welfare_trace);
  }
  {
    auto out = open_out(dir / (stem + "_partition.txt"));
    write_labels(out, net, r.final_partition);
  }
}

std::string join_row(double value, const RunSummary& s) {
  std::ostringstream row;
  row << format_real(value) << ',';
  write_summary_csv_row(row, s);
  return row.str();
}

int cmd_preprocess(const GraphFlags& g, const std::string& out_path) {
  const Network net = largest_scc(load_network(g));
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_edge_list(out, net);
  }
  std::cout << "n=" << net.size() << '\n'
            << "arcs=" << net.arc_count() << '\n'
            << "edges=" << net.edge_count() << '\n'
            << "mean_degree=" << format_real(net.mean_degree()) << '\n';
  return 0;
}

int cmd_run(const GraphFlags& g, const ModelFlags& m, const std::string& gt_path, const std::string& trace_dir,
            const std::string& out_path, const std::string& model, const BaselineParams& bp) {
  const Network net = load_network(g);
  std::optional<Partition> gt;
  if (!gt_path.empty()) gt = read_labels(gt_path, net);

  std::vector<RunSummary> rows;
  for (std::size_t rep = 0; rep < m.repeats; ++rep) {
    const std::uint64_t seed = m.seed + rep;
    const Params params = make_params(m, net.size(), seed);
    RunResult r;
    if (model == "gcaofp") {
      r = run_gcaofp_seeded(net, params);
    } else {
      r = run_baseline(parse_baseline_model(model), net, init_opinions(net.size(), seed), bp);
      for (const auto& x : r.opinion_trace) {
        r.welfare_trace.push_back(social_welfare(OpinionVector(x), r.final_partition, net, params));
      }
    }
    const RunSummary s = summarize(net, params, r, gt);
    if (rep > 0) std::cout << '\n';
    write_summary_kv(std::cout, s);
    if (!trace_dir.empty()) write_traces(trace_dir, seed, net, r);
    rows.push_back(s);
  }

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << summary_csv_header(gt.has_value()) << '\n';
    for (const auto& s : rows) write_summary_csv_row(out, s);
  }
  return 0;
}

int cmd_sweep(const GraphFlags& g, const ModelFlags& m, const std::string& param, std::vector<double> values,
              const std::string& gt_path, const std::string& out_path) {
  if (values.empty()) throw std::invalid_argument("sweep: empty value list");
  std::sort(values.begin(), values.end());
  const Network net = load_network(g);
  std::optional<Partition> gt;
  if (!gt_path.empty()) gt = read_labels(gt_path, net);

  std::ostringstream table;
  table << "value," << summary_csv_header(gt.has_value()) << '\n';
  for (double v : values) {
    ModelFlags point = m;
    (param == "lambda" ? point.lambda : point.psi) = v;
    for (std::size_t rep = 0; rep < m.repeats; ++rep) {
      const Params params = make_params(point, net.size(), m.seed + rep);
      table << join_row(v, summarize(net, params, run_gcaofp_seeded(net, params), gt));
    }
  }
  if (out_path.empty()) {
    std::cout << table.str();
  } else {
    auto out = open_out(out_path);
    out << table.str();
  }
  return 0;
}

int cmd_er_study(std::size_t n, std::vector<double> ps, const ModelFlags& m, const std::string& out_path) {
  if (ps.empty()) throw std::invalid_argument("er-study: empty p list");
  std::sort(ps.begin(), ps.end());
  std::ostringstream table;
  table << "p,seed,oswg\n";
  for (double p : ps) {
    for (std::size_t rep = 0; rep < m.repeats; ++rep) {
      const std::uint64_t seed = m.seed + rep;
      const ErRun run = er_density_run(n, p, seed, make_params(m, 1, seed));
      table << format_real(p) << ',' << seed << ',' << format_real(run.oswg) << '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << table.str();
  } else {
    auto out = open_out(out_path);
    out << table.str();
  }
  return 0;
}

int cmd_eval(const std::string& partition_path, const std::string& gt_path) {
  const auto found = read_label_pairs(partition_path);
  const auto truth = read_label_pairs(gt_path);
  std::map<std::string, std::string> truth_of(truth.begin(), truth.end());
  std::map<std::string, std::size_t> a_ids, b_ids;
  std::vector<std::size_t> a, b;
  for (const auto& [node, label] : found) {
    const auto it = truth_of.find(node);
    if (it == truth_of.end()) throw std::runtime_error(gt_path + ": no label for node '" + node + "'");
    a.push_back(a_ids.try_emplace(label, a_ids.size()).first->second);
    b.push_back(b_ids.try_emplace(it->second, b_ids.size()).first->second);
  }
  if (a.empty()) throw std::runtime_error(partition_path + ": no labels");
  const Partition pa(std::move(a)), pb(std::move(b));
  std::cout << "ari=" << format_real(ari(pa, pb)) << '\n' << "ami=" << format_real(ami(pa, pb)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community-aware opinion formation on networks"};
  app.require_subcommand(1);

  GraphFlags graph;
  ModelFlags model;
  std::string out_path, gt_path, trace_dir, baseline = "gcaofp", param, partition_path;
  std::vector<double> values, p_list;
  std::size_t er_n = 200;
  BaselineParams bp;

  auto* pre = app.add_subcommand("preprocess", "extract the largest strongly connected component");
  add_graph_flags(pre, graph);
  pre->add_option("--out", out_path, "canonical edge list to write");

  auto* run = app.add_subcommand("run", "simulate one or more seeds");
  add_graph_flags(run, graph);
  add_model_flags(run, model);
  run->add_option("--gt", gt_path, "ground-truth labels")->check(CLI::ExistingFile);
  run->add_option("--trace-dir", trace_dir, "directory for per-run trace CSVs");
  run->add_option("--out", out_path, "aggregate CSV, one row per seed");
  run->add_option("--model", baseline, "dynamics")
      ->capture_default_str()
      ->check(CLI::IsMember({"gcaofp", "hk", "degroot", "fj"}));
  run->add_option("--rho", bp.rho, "HK confidence range")->capture_default_str();
  run->add_option("--fj-s", bp.susceptibility, "FJ susceptibility")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "grid over lambda or psi");
  add_graph_flags(sweep, graph);
  add_model_flags(sweep, model);
  sweep->add_option("--param", param, "swept parameter")->required()->check(CLI::IsMember({"lambda", "psi"}));
  sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');
  sweep->add_option("--gt", gt_path, "ground-truth labels")->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "grid CSV (default: stdout)");

  auto* er = app.add_subcommand("er-study", "OSWG on directed Erdos-Renyi graphs of varying density");
  add_model_flags(er, model);
  er->add_option("--n", er_n, "nodes")->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  er->add_option("--p-list", p_list, "comma-separated arc probabilities")->required()->delimiter(',');
  er->add_option("--out", out_path, "CSV (default: stdout)");

  auto* eval = app.add_subcommand("eval", "ARI and AMI of a partition against ground truth");
  eval->add_option("--partition", partition_path, "node label file")->required()->check(CLI::ExistingFile);
  eval->add_option("--gt", gt_path, "ground-truth labels")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  bp.epsilon = model.epsilon;
  bp.max_iters = model.max_iters;
  try {
    if (*pre) return cmd_preprocess(graph, out_path);
    if (*run) return cmd_run(graph, model, gt_path, trace_dir, out_path, baseline, bp);
    if (*sweep) return cmd_sweep(graph, model, param, values, gt_path, out_path);
    if (*er) return cmd_er_study(er_n, p_list, model, out_path);
    if (*eval) return cmd_eval(partition_path, gt_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
