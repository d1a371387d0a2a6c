#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"
#include "metrics.hpp"
#include "state.hpp"

namespace gcaofp {

struct ErRun {
  std::size_t n = 0;  // agents kept after SCC extraction
  std::size_t arcs = 0;
  double oswg = 0.0;
  RunResult result;
};

/// One point of the ER density study. x(0) and S(0) are drawn for all n
/// agents from `seed` alone, so the same agents start identically at every p;
/// the run uses their restriction to the largest SCC.
inline ErRun er_density_run(std::size_t n, double p, std::uint64_t seed, const Params& base) {
  const Network full = erdos_renyi(n, p, seed);
  const auto keep = largest_scc_nodes(full);
  const Network net = induced_subgraph(full, keep);
  const OpinionVector x_all = init_opinions(n, seed);
  const Partition part_all = init_partition(n, base.init_k.value_or(n), seed);
  std::vector<double> x0;
  std::vector<std::size_t> labels0;
  for (std::size_t i : keep) {
    x0.push_back(x_all[i]);
    labels0.push_back(part_all[i]);
  }
  Params params = base;
  params.lambda.assign(net.size(), base.lambda.empty() ? 1.4 : base.lambda.front());
  params.init_k.reset();
  params.seed = seed;

  ErRun out;
  out.n = net.size();
  out.arcs = net.arc_count();
  out.result = run_gcaofp(net, OpinionVector(std::move(x0)), Partition(std::move(labels0)), params);
  out.oswg = oswg(out.result.welfare_trace.front(), out.result.welfare_trace.back(), params, net);
  return out;
}

}  // namespace gcaofp
