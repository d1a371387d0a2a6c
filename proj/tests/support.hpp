#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gcaofp/gcaofp.hpp>

namespace gcaofp::testing {

inline Network net_from(const std::string& text, bool directed, bool weighted = false) {
  std::istringstream in(text);
  return Network::build(parse_edge_list(in, {directed, weighted, false}));
}

inline Network karate() { return load_edge_list(std::string(GCAOFP_DATA_DIR) + "/karate.txt", false, false); }

inline Partition karate_truth(const Network& net) {
  return read_labels(std::string(GCAOFP_DATA_DIR) + "/karate_gt.txt", net);
}

/// Complete undirected graph on tokens 0..n-1.
inline Network complete(std::size_t n) {
  std::ostringstream s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s << i << ' ' << j << '\n';
  }
  return net_from(s.str(), false);
}

/// Two triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
inline Network two_triangles() { return net_from("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n", false); }

/// Random directed network, strongly connected by an added cycle 0->1->..->0.
inline Network random_strong(std::size_t n, double p, std::uint64_t seed, bool weighted) {
  Rng rng(seed);
  EdgeList list;
  list.directed = true;
  for (std::size_t i = 0; i < n; ++i) list.tokens.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    list.arcs.push_back({i, (i + 1) % n, weighted ? 0.1 + rng.uniform01() : 1.0});
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && j != (i + 1) % n && rng.uniform01() < p) {
        list.arcs.push_back({i, j, weighted ? 0.1 + rng.uniform01() : 1.0});
      }
    }
  }
  return Network::build(list);
}

inline Partition random_partition(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = rng.below(k);
  return Partition(std::move(labels));
}

inline OpinionVector random_opinions(std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform01();
  return OpinionVector(std::move(x));
}

/// Every set partition of {0..n-1} as restricted growth strings.
inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> a(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_used) -> void {
    if (i == n) {
      out.emplace_back(a);
      return;
    }
    for (std::size_t l = 0; l <= max_used + 1; ++l) {
      a[i] = l;
      self(self, i + 1, std::max(max_used, l));
    }
  };
  if (n == 0) return out;
  a[0] = 0;
  rec(rec, 1, 0);
  return out;
}

}  // namespace gcaofp::testing
