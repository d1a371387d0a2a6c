#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace gcaofp {

struct Arc {
  std::size_t src = 0;
  std::size_t dst = 0;
  double weight = 1.0;
};

/// Raw parsed arcs before any validation. Duplicates are allowed and weights
/// may be signed; self-loops are already gone.
struct EdgeList {
  std::vector<std::string> tokens;
  std::vector<Arc> arcs;
  bool directed = true;
};

struct EdgeListOptions {
  bool directed = true;
  bool weighted = false;
  // Keep nonpositive weights so normalize_weights can see them.
  bool allow_nonpositive = false;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_comment_or_blank(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#' || line[pos] == '%';
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.emplace_back(line.substr(start, i - start));
  }
  return fields;
}

inline std::optional<double> parse_real(const std::string& s) {
  // strtod honours the C locale, which is what we want for a '.' separator.
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace detail

inline EdgeList parse_edge_list(std::istream& in, const EdgeListOptions& opts,
                                const std::string& source = "<stream>") {
  EdgeList out;
  out.directed = opts.directed;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = index.try_emplace(tok, out.tokens.size());
    if (inserted) out.tokens.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    const auto fields = detail::split_fields(line);
    const std::size_t expected = opts.weighted ? 3 : 2;
    // An unweighted read tolerates a trailing weight column and ignores it.
    if (fields.size() != expected && !(!opts.weighted && fields.size() == 3)) {
      throw GraphError(source + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(expected) + " fields, got " +
                       std::to_string(fields.size()));
    }
    double w = 1.0;
    if (opts.weighted) {
      const auto parsed = detail::parse_real(fields[2]);
      if (!parsed) {
        throw GraphError(source + ":" + std::to_string(lineno) + ": bad weight '" + fields[2] + "'");
      }
      w = *parsed;
      if (w <= 0.0 && !opts.allow_nonpositive) {
        throw GraphError(source + ":" + std::to_string(lineno) +
                         ": nonpositive weight; run with weight normalization");
      }
    } else if (fields.size() == 3 && !detail::parse_real(fields[2])) {
      throw GraphError(source + ":" + std::to_string(lineno) + ": bad weight '" + fields[2] + "'");
    }
    const std::size_t u = intern(fields[0]);
    const std::size_t v = intern(fields[1]);
    if (u == v) continue;
    out.arcs.push_back({u, v, w});
    if (!opts.directed) out.arcs.push_back({v, u, w});
  }
  return out;
}

inline EdgeList read_edge_list(const std::string& path, const EdgeListOptions& opts) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open edge list '" + path + "'");
  return parse_edge_list(in, opts, path);
}

/// Sums duplicate (src, dst) arcs; result sorted by (src, dst).
inline std::vector<Arc> merge_duplicate_arcs(std::vector<Arc> arcs) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  std::vector<Arc> merged;
  merged.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (!merged.empty() && merged.back().src == a.src && merged.back().dst == a.dst) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

/// Drops arcs whose (summed) weight is not positive, then divides by the
/// largest remaining weight so every weight lies in (0, 1].
/// Connectivity may be lost: run largest_scc afterwards.
inline EdgeList normalize_weights(const EdgeList& in) {
  EdgeList out;
  out.tokens = in.tokens;
  out.directed = in.directed;
  double max_w = 0.0;
  for (const Arc& a : merge_duplicate_arcs(in.arcs)) {
    if (a.weight > 0.0) {
      out.arcs.push_back(a);
      max_w = std::max(max_w, a.weight);
    }
  }
  if (out.arcs.empty()) throw GraphError("normalize_weights: no positive weights remain");
  for (Arc& a : out.arcs) a.weight /= max_w;
  return out;
}

/// Immutable sparse directed weighted graph over dense indices 0..n-1.
///
/// Three adjacency views are kept: out-arcs (W_ij > 0), in-arcs (W_ji > 0) and
/// the undirected union (W_ij + W_ji > 0) with both directed weights per slot.
/// Rows are sorted by neighbor index.
class Network {
 public:
  struct Neighbor {
    std::size_t index;
    double weight;
  };
  struct UnionNeighbor {
    std::size_t index;
    double w_out;  // W_ij
    double w_in;   // W_ji
  };

  Network() = default;

  static Network build(const EdgeList& list) {
    Network g;
    g.tokens_ = list.tokens;
    g.directed_ = list.directed;
    const std::size_t n = g.tokens_.size();
    for (std::size_t i = 0; i < n; ++i) g.index_.emplace(g.tokens_[i], i);
    if (g.index_.size() != n) throw GraphError("duplicate node tokens");

    g.arcs_ = merge_duplicate_arcs(list.arcs);
    for (const Arc& a : g.arcs_) {
      if (a.src >= n || a.dst >= n) throw GraphError("arc endpoint out of range");
      if (a.src == a.dst) throw GraphError("self-loop in network");
      if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
        throw GraphError("arc weights must be positive and finite");
      }
      g.total_weight_ += a.weight;
    }

    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const Arc& a : g.arcs_) {
      ++g.out_offsets_[a.src + 1];
      ++g.in_offsets_[a.dst + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      g.out_offsets_[i + 1] += g.out_offsets_[i];
      g.in_offsets_[i + 1] += g.in_offsets_[i];
    }
    g.out_.resize(g.arcs_.size());
    g.in_.resize(g.arcs_.size());
    {
      std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
      for (std::size_t k = 0; k < g.arcs_.size(); ++k) {
        const Arc& a = g.arcs_[k];
        g.out_[k] = {a.dst, a.weight};
        // arcs_ is sorted by src, so each in-row comes out sorted too.
        g.in_[cursor[a.dst]++] = {a.src, a.weight};
      }
    }

    g.union_offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto out = g.out_neighbors(i);
      auto in = g.in_neighbors(i);
      std::size_t p = 0, q = 0;
      while (p < out.size() || q < in.size()) {
        if (q == in.size() || (p < out.size() && out[p].index < in[q].index)) {
          g.union_.push_back({out[p].index, out[p].weight, 0.0});
          ++p;
        } else if (p == out.size() || in[q].index < out[p].index) {
          g.union_.push_back({in[q].index, 0.0, in[q].weight});
          ++q;
        } else {
          g.union_.push_back({out[p].index, out[p].weight, in[q].weight});
          ++p;
          ++q;
        }
      }
      g.union_offsets_[i + 1] = g.union_.size();
    }
    return g;
  }

  std::size_t size() const { return tokens_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  /// Table-style edge count: arcs for directed input, arcs / 2 for undirected.
  std::size_t edge_count() const { return directed_ ? arcs_.size() : arcs_.size() / 2; }
  double mean_degree() const {
    return size() == 0 ? 0.0 : static_cast<double>(arcs_.size()) / static_cast<double>(size());
  }
  double total_weight() const { return total_weight_; }
  bool directed() const { return directed_; }

  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Neighbor> out_neighbors(std::size_t i) const {
    return {out_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
  }
  std::span<const Neighbor> in_neighbors(std::size_t i) const {
    return {in_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
  }
  std::span<const UnionNeighbor> union_neighbors(std::size_t i) const {
    return {union_.data() + union_offsets_[i], union_offsets_[i + 1] - union_offsets_[i]};
  }
  /// Start of agent i's row in the flattened union adjacency.
  std::size_t union_offset(std::size_t i) const { return union_offsets_[i]; }
  std::size_t union_slot_count() const { return union_.size(); }

  /// W_ij, or 0 when there is no arc. O(log out-degree).
  double weight(std::size_t i, std::size_t j) const {
    auto row = out_neighbors(i);
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Neighbor& nb, std::size_t v) { return nb.index < v; });
    return (it != row.end() && it->index == j) ? it->weight : 0.0;
  }

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(std::size_t i) const { return tokens_[i]; }
  std::optional<std::size_t> index_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  EdgeList to_edge_list() const { return {tokens_, arcs_, directed_}; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Arc> arcs_;
  bool directed_ = true;
  double total_weight_ = 0.0;
  std::vector<std::size_t> out_offsets_, in_offsets_, union_offsets_;
  std::vector<Neighbor> out_, in_;
  std::vector<UnionNeighbor> union_;
};

inline Network load_edge_list(const std::string& path, bool directed, bool weighted) {
  return Network::build(read_edge_list(path, {directed, weighted, false}));
}

/// Tarjan's algorithm, iterative. Returns a component id per node; ids are
/// assigned in order of completion (reverse topological order of the
/// condensation).
inline std::vector<std::size_t> strongly_connected_components(const Network& g) {
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.size();
  std::vector<std::size_t> order(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next out-edge position)
  std::size_t counter = 0, ncomp = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != unvisited) continue;
    call.emplace_back(root, 0);
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto row = g.out_neighbors(v);
      if (pos < row.size()) {
        const std::size_t w = row[pos++].index;
        if (order[w] == unvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      const std::size_t done = v;
      if (low[done] == order[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != done);
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

/// Induced subgraph on `keep` (must be sorted ascending). Tokens and relative
/// order are preserved.
inline Network induced_subgraph(const Network& g, std::span<const std::size_t> keep) {
  constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> remap(g.size(), absent);
  EdgeList list;
  list.directed = g.directed();
  for (std::size_t k = 0; k < keep.size(); ++k) {
    remap[keep[k]] = k;
    list.tokens.push_back(g.token(keep[k]));
  }
  for (const Arc& a : g.arcs()) {
    if (remap[a.src] != absent && remap[a.dst] != absent) {
      list.arcs.push_back({remap[a.src], remap[a.dst], a.weight});
    }
  }
  return Network::build(list);
}

/// Nodes of the largest strongly connected component, ascending. Ties go to
/// the component holding the smallest index.
inline std::vector<std::size_t> largest_scc_nodes(const Network& g) {
  if (g.size() == 0) throw GraphError("largest_scc: empty network");
  const auto comp = strongly_connected_components(g);
  std::vector<std::size_t> count(g.size(), 0);
  for (std::size_t c : comp) ++count[c];
  std::size_t best = comp[0];
  for (std::size_t i = 0; i < g.size(); ++i) {
    // Scanning in index order: a strict > keeps the earliest-seen component on ties.
    if (count[comp[i]] > count[best]) best = comp[i];
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (comp[i] == best) keep.push_back(i);
  }
  return keep;
}

inline Network largest_scc(const Network& g) {
  const auto keep = largest_scc_nodes(g);
  return induced_subgraph(g, keep);
}

/// Forward and backward BFS from node 0 both reach every node.
inline bool is_strongly_connected(const Network& g) {
  if (g.size() == 0) return false;
  auto reaches_all = [&](bool forward) {
    std::vector<bool> seen(g.size(), false);
    std::vector<std::size_t> queue{0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t v = queue[head];
      for (const auto& nb : forward ? g.out_neighbors(v) : g.in_neighbors(v)) {
        if (!seen[nb.index]) {
          seen[nb.index] = true;
          queue.push_back(nb.index);
        }
      }
    }
    return queue.size() == g.size();
  };
  return reaches_all(true) && reaches_all(false);
}

/// Directed G(n, p): each ordered pair i != j gets a unit arc with probability p.
/// A draw with zero arcs is redrawn from the same stream, up to 64 times.
inline Network erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw GraphError("erdos_renyi: n must be at least 2");
  if (!(p > 0.0 && p <= 1.0)) throw GraphError("erdos_renyi: p must lie in (0, 1]");
  Rng rng(seed, Stream::graph);
  EdgeList list;
  list.directed = true;
  for (std::size_t i = 0; i < n; ++i) list.tokens.push_back(std::to_string(i));
  for (int attempt = 0; attempt < 64; ++attempt) {
    list.arcs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && rng.uniform01() < p) list.arcs.push_back({i, j, 1.0});
      }
    }
    if (!list.arcs.empty()) return Network::build(list);
  }
  throw GraphError("erdos_renyi: every draw was empty");
}

/// Canonical edge list: undirected networks write each edge once (i < j),
/// weights only when some weight differs from 1.
inline void write_edge_list(std::ostream& out, const Network& g) {
  bool weighted = false;
  for (const Arc& a : g.arcs()) weighted = weighted || a.weight != 1.0;
  char buf[64];
  for (const Arc& a : g.arcs()) {
    if (!g.directed() && a.src > a.dst) continue;
    out << g.token(a.src) << ' ' << g.token(a.dst);
    if (weighted) {
      std::snprintf(buf, sizeof buf, " %.17g", a.weight);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace gcaofp
