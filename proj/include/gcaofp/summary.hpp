#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "graph.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "state.hpp"

namespace gcaofp {

/// Scalar outcome of one run, the unit of every aggregate table.
struct RunSummary {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t arcs = 0;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t num_communities = 0;
  double icsw = 0.0;
  double rcsw = 0.0;
  double oswg = 0.0;
  double acl = 0.0;
  std::optional<double> ari;
  std::optional<double> ami;
};

/// sw(0) and sw(T*) are taken from the first and last welfare_trace entries.
inline RunSummary summarize(const Network& net, const Params& params, const RunResult& r,
                            const std::optional<Partition>& ground_truth = std::nullopt) {
  RunSummary s;
  s.seed = params.seed;
  s.n = net.size();
  s.arcs = net.arc_count();
  s.iterations = r.iterations;
  s.converged = r.converged;
  s.num_communities = r.final_partition.num_communities();
  const double sw0 = r.welfare_trace.front();
  const double sw_star = r.welfare_trace.back();
  s.icsw = icsw(sw0, params, net);
  s.rcsw = rcsw(sw_star, params, net);
  s.oswg = oswg(sw0, sw_star, params, net);
  s.acl = acl(r.final_opinions, r.final_partition);
  if (ground_truth) {
    s.ari = ari(r.final_partition, *ground_truth);
    s.ami = ami(r.final_partition, *ground_truth);
  }
  return s;
}

inline void write_summary_kv(std::ostream& out, const RunSummary& s) {
  out << "seed=" << s.seed << '\n'
      << "n=" << s.n << '\n'
      << "arcs=" << s.arcs << '\n'
      << "iterations=" << s.iterations << '\n'
      << "converged=" << (s.converged ? "true" : "false") << '\n'
      << "num_communities=" << s.num_communities << '\n'
      << "icsw=" << format_real(s.icsw) << '\n'
      << "rcsw=" << format_real(s.rcsw) << '\n'
      << "oswg=" << format_real(s.oswg) << '\n'
      << "acl=" << format_real(s.acl) << '\n';
  if (s.ari) out << "ari=" << format_real(*s.ari) << '\n';
  if (s.ami) out << "ami=" << format_real(*s.ami) << '\n';
}

inline std::string summary_csv_header(bool with_gt) {
  std::string h = "seed,iterations,converged,num_communities,icsw,rcsw,oswg,acl";
  if (with_gt) h += ",ari,ami";
  return h;
}

inline void write_summary_csv_row(std::ostream& out, const RunSummary& s) {
  out << s.seed << ',' << s.iterations << ',' << (s.converged ? 1 : 0) << ',' << s.num_communities << ','
      << format_real(s.icsw) << ',' << format_real(s.rcsw) << ',' << format_real(s.oswg) << ','
      << format_real(s.acl);
  if (s.ari) out << ',' << format_real(*s.ari) << ',' << format_real(s.ami.value_or(0.0));
  out << '\n';
}

}  // namespace gcaofp
