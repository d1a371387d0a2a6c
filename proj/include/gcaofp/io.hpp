#pragma once

#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "state.hpp"

namespace gcaofp {

/// Decimal with 12 significant digits, '.' separator.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Long-format snapshot table: iter,agent,value.
template <typename T>
void write_snapshot_csv(std::ostream& out, const std::vector<std::vector<T>>& trace) {
  out << "iter,agent,value\n";
  for (std::size_t t = 0; t < trace.size(); ++t) {
    for (std::size_t i = 0; i < trace[t].size(); ++i) {
      out << t << ',' << i << ',';
      if constexpr (std::is_floating_point_v<T>) {
        out << format_real(trace[t][i]);
      } else {
        out << trace[t][i];
      }
      out << '\n';
    }
  }
}

/// Reads an iter,agent,value table back into per-iteration rows.
inline std::vector<std::vector<double>> read_snapshot_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "iter,agent,value") {
    throw std::runtime_error("snapshot csv: missing header");
  }
  std::vector<std::vector<double>> trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t t = 0, i = 0;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "%zu,%zu,%lf", &t, &i, &v) != 3) {
      throw std::runtime_error("snapshot csv: bad row '" + line + "'");
    }
    if (trace.size() <= t) trace.resize(t + 1);
    if (trace[t].size() != i) throw std::runtime_error("snapshot csv: rows out of order");
    trace[t].push_back(v);
  }
  return trace;
}

/// sweep,phi with a running sweep index across all community phases.
inline void write_potential_csv(std::ostream& out, const std::vector<std::vector<double>>& phases) {
  out << "sweep,phi\n";
  std::size_t k = 0;
  for (const auto& phase : phases) {
    for (double phi : phase) out << k++ << ',' << format_real(phi) << '\n';
  }
}

inline void write_series_csv(std::ostream& out, const std::vector<double>& series) {
  out << "iter,value\n";
  for (std::size_t t = 0; t < series.size(); ++t) out << t << ',' << format_real(series[t]) << '\n';
}

/// `node_token label_token` pairs in file order, comments skipped.
inline std::vector<std::pair<std::string, std::string>> parse_label_pairs(std::istream& in,
                                                                          const std::string& source = "<stream>") {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto fields = detail::split_fields(line);
    if (fields.size() != 2) {
      throw std::runtime_error(source + ":" + std::to_string(lineno) + ": expected 'node label'");
    }
    pairs.emplace_back(std::move(fields[0]), std::move(fields[1]));
  }
  return pairs;
}

inline std::vector<std::pair<std::string, std::string>> read_label_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file '" + path + "'");
  return parse_label_pairs(in, path);
}

/// Label tokens become dense ids by first appearance. Every agent needs a label;
/// tokens not in the network are ignored (they were pruned by preprocessing).
inline Partition labels_for(const std::vector<std::pair<std::string, std::string>>& pairs, const Network& net,
                            const std::string& source = "<stream>") {
  constexpr std::size_t missing = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(net.size(), missing);
  std::unordered_map<std::string, std::size_t> ids;
  for (const auto& [node_token, label_token] : pairs) {
    const auto node = net.index_of(node_token);
    if (!node) continue;
    auto [it, inserted] = ids.try_emplace(label_token, ids.size());
    labels[*node] = it->second;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == missing) throw std::runtime_error(source + ": no label for node '" + net.token(i) + "'");
  }
  return Partition(std::move(labels));
}

inline Partition parse_labels(std::istream& in, const Network& net, const std::string& source = "<stream>") {
  return labels_for(parse_label_pairs(in, source), net, source);
}

inline Partition read_labels(const std::string& path, const Network& net) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file '" + path + "'");
  return parse_labels(in, net, path);
}

inline void write_labels(std::ostream& out, const Network& net, const Partition& part) {
  for (std::size_t i = 0; i < net.size(); ++i) out << net.token(i) << ' ' << part[i] << '\n';
}

}  // namespace gcaofp
