#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"
#include "state.hpp"

namespace gcaofp {

/// Pair scores Y_ij of the community game, one per connected pair
/// (W_ij + W_ji > 0), stored aligned with Network::union_neighbors.
///
///   D_ij = psi - |x_i - x_j|,  B_ij = max(D_ij, 0)
///   Y_ij = (lambda_i D_ij - B_ij) W_ij + (lambda_j D_ji - B_ji) W_ji
///
/// Y is symmetric bit-for-bit: both directed terms are always added in
/// (lower index, higher index) order. Holds a pointer to the network, which
/// must outlive it.
class PairScores {
 public:
  PairScores(const Network& net, std::vector<double> y, std::vector<double> d)
      : net_(&net), y_(std::move(y)), d_(std::move(d)) {}

  const Network& network() const { return *net_; }
  std::size_t size() const { return net_->size(); }

  /// Y values aligned with net.union_neighbors(i).
  std::span<const double> row(std::size_t i) const {
    return {y_.data() + net_->union_offset(i), net_->union_neighbors(i).size()};
  }

  double score(std::size_t i, std::size_t j) const { return lookup(y_, i, j); }
  double d(std::size_t i, std::size_t j) const { return lookup(d_, i, j); }
  double b(std::size_t i, std::size_t j) const { return std::max(d(i, j), 0.0); }

 private:
  double lookup(const std::vector<double>& v, std::size_t i, std::size_t j) const {
    auto row = net_->union_neighbors(i);
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const Network::UnionNeighbor& nb, std::size_t x) {
      return nb.index < x;
    });
    if (it == row.end() || it->index != j) return 0.0;
    return v[net_->union_offset(i) + static_cast<std::size_t>(it - row.begin())];
  }

  const Network* net_;
  std::vector<double> y_;
  std::vector<double> d_;
};

inline PairScores pair_scores(const OpinionVector& x, const Network& net, const Params& params) {
  if (x.size() != net.size() || params.lambda.size() != net.size()) {
    throw std::invalid_argument("pair_scores: size mismatch");
  }
  std::vector<double> y(net.union_slot_count()), d(net.union_slot_count());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const std::size_t base = net.union_offset(i);
    auto row = net.union_neighbors(i);
    for (std::size_t s = 0; s < row.size(); ++s) {
      const auto& nb = row[s];
      const std::size_t j = nb.index;
      const double dij = params.psi - std::abs(x[i] - x[j]);
      const double bij = std::max(dij, 0.0);
      const double term_i = (params.lambda_of(i) * dij - bij) * nb.w_out;
      const double term_j = (params.lambda_of(j) * dij - bij) * nb.w_in;
      y[base + s] = i < j ? term_i + term_j : term_j + term_i;
      d[base + s] = dij;
    }
  }
  return PairScores(net, std::move(y), std::move(d));
}

/// Labels of i's union neighbors plus i's own label, ascending.
inline std::vector<std::size_t> candidate_labels(std::size_t i, const Partition& part, const Network& net) {
  std::vector<std::size_t> labels{part[i]};
  for (const auto& nb : net.union_neighbors(i)) labels.push_back(part[nb.index]);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

/// u*_i(ell) = sum of Y_ij over union neighbors j labelled ell. Zero for a
/// label no neighbor carries.
inline double label_utility(std::size_t i, std::size_t ell, const Partition& part, const PairScores& y) {
  auto nbrs = y.network().union_neighbors(i);
  auto ys = y.row(i);
  double u = 0.0;
  for (std::size_t s = 0; s < nbrs.size(); ++s) {
    if (part[nbrs[s].index] == ell) u += ys[s];
  }
  return u;
}

/// phi* = sum over unordered same-community connected pairs of Y_ij.
inline double potential(const Partition& part, const PairScores& y) {
  const Network& net = y.network();
  double phi = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto nbrs = net.union_neighbors(i);
    auto ys = y.row(i);
    for (std::size_t s = 0; s < nbrs.size(); ++s) {
      const std::size_t j = nbrs[s].index;
      if (j > i && part[i] == part[j]) phi += ys[s];
    }
  }
  return phi;
}

struct SweepStats {
  std::size_t changes = 0;
  double delta_phi = 0.0;
  std::uint64_t pair_visits = 0;  // neighbor terms read + one own-label candidate per agent
};

/// Per-agent label accumulator, reused across agents and sweeps.
class LabelScratch {
 public:
  void reserve_labels(std::size_t max_label) {
    if (acc_.size() <= max_label) {
      acc_.resize(max_label + 1, 0.0);
      mark_.resize(max_label + 1, 0);
    }
  }
  void add(std::size_t label, double v) {
    if (!mark_[label]) {
      mark_[label] = 1;
      touched_.push_back(label);
    }
    acc_[label] += v;
  }
  double value(std::size_t label) const { return mark_[label] ? acc_[label] : 0.0; }
  const std::vector<std::size_t>& touched() const { return touched_; }
  void clear() {
    for (std::size_t l : touched_) {
      acc_[l] = 0.0;
      mark_[l] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> acc_;
  std::vector<char> mark_;
  std::vector<std::size_t> touched_;
};

/// One asynchronous best-response pass. Agents are visited once each in a
/// fresh random permutation; each moves to the candidate label of highest
/// utility, but only on a strict gain. Among equally good non-current labels
/// the smallest id wins.
inline SweepStats best_response_sweep(Partition& part, const PairScores& y, Rng& rng,
                                      LabelScratch& scratch) {
  const Network& net = y.network();
  const std::size_t n = net.size();
  if (part.size() != n) throw std::invalid_argument("best_response_sweep: size mismatch");
  scratch.reserve_labels(part.max_label());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  SweepStats stats;
  for (std::size_t i : order) {
    auto nbrs = net.union_neighbors(i);
    auto ys = y.row(i);
    for (std::size_t s = 0; s < nbrs.size(); ++s) scratch.add(part[nbrs[s].index], ys[s]);
    stats.pair_visits += nbrs.size() + 1;

    const std::size_t own = part[i];
    const double current = scratch.value(own);
    std::size_t best = own;
    double best_u = current;
    for (std::size_t l : scratch.touched()) {
      if (l == own) continue;
      const double u = scratch.value(l);
      if (u > best_u || (u == best_u && best != own && l < best)) {
        best = l;
        best_u = u;
      }
    }
    if (best != own) {
      part.set(i, best);
      ++stats.changes;
      stats.delta_phi += best_u - current;
    }
    scratch.clear();
  }
  return stats;
}

inline SweepStats best_response_sweep(Partition& part, const PairScores& y, Rng& rng) {
  LabelScratch scratch;
  return best_response_sweep(part, y, rng, scratch);
}

struct CdpResult {
  std::vector<double> potential_trace;  // phi at entry, then after every sweep that changed a label
  std::size_t sweeps = 0;
  std::uint64_t pair_visits = 0;
};

class NonTermination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Best-response sweeps on a fixed Y until one sweep changes nothing. The
/// result is a pure Nash equilibrium of the label game.
inline CdpResult run_cdp(Partition& part, const PairScores& y, std::size_t max_sweeps, Rng& rng) {
  CdpResult out;
  LabelScratch scratch;
  out.potential_trace.push_back(potential(part, y));
  for (;;) {
    if (out.sweeps == max_sweeps) {
      throw NonTermination("community phase exceeded " + std::to_string(max_sweeps) + " sweeps");
    }
    const SweepStats s = best_response_sweep(part, y, rng, scratch);
    ++out.sweeps;
    out.pair_visits += s.pair_visits;
    if (s.changes == 0) break;
    out.potential_trace.push_back(potential(part, y));
  }
  return out;
}

inline CdpResult run_cdp(const OpinionVector& x, Partition& part, const Network& net, const Params& params,
                         Rng& rng) {
  const PairScores y = pair_scores(x, net, params);
  return run_cdp(part, y, params.max_sweeps, rng);
}

/// Exhaustive unilateral-deviation check: number of (agent, candidate label)
/// pairs that would strictly raise the agent's utility.
inline std::size_t count_improving_deviations(const Partition& part, const PairScores& y) {
  const Network& net = y.network();
  std::size_t count = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double current = label_utility(i, part[i], part, y);
    for (std::size_t l : candidate_labels(i, part, net)) {
      if (l != part[i] && label_utility(i, l, part, y) > current) ++count;
    }
  }
  return count;
}

inline bool is_nash_equilibrium(const Partition& part, const PairScores& y) {
  return count_improving_deviations(part, y) == 0;
}

}  // namespace gcaofp
