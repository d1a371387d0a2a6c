#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "game.hpp"
#include "graph.hpp"
#include "metrics.hpp"
#include "opinion.hpp"
#include "rng.hpp"
#include "state.hpp"

namespace gcaofp {

inline double max_abs_change(const OpinionVector& a, const OpinionVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Co-evolution of communities and opinions. Each outer step T:
///   1. Y from x(T); best-response sweeps to a Nash partition (x frozen)
///   2. x(T+1) from the community-aware bounded-confidence update
///   3. stop when max_i |x_i(T+1) - x_i(T)| < epsilon
/// Hitting max_outer_iters leaves converged = false.
inline RunResult run_gcaofp(const Network& net, const OpinionVector& x0, const Partition& part0, const Params& params) {
  params.validate(net.size());
  if (x0.size() != net.size() || part0.size() != net.size()) {
    throw std::invalid_argument("run_gcaofp: initial state size mismatch");
  }
  if (!is_strongly_connected(net)) throw std::invalid_argument("run_gcaofp: network is not strongly connected");

  RunResult r;
  Rng rng(params.seed, Stream::sweeps);
  OpinionVector x = x0;
  x.time = 0;
  Partition part = part0;
  r.opinion_trace.push_back(x.values);
  r.label_trace.push_back(part.labels());
  r.welfare_trace.push_back(social_welfare(x, part, net, params));

  for (std::size_t t = 0; t < params.max_outer_iters; ++t) {
    std::uint64_t touches = 0;
    if (params.freeze_partition) {
      r.potential_trace.emplace_back();
      r.sweeps_per_iter.push_back(0);
    } else {
      const PairScores y = pair_scores(x, net, params);
      touches += net.union_slot_count();
      CdpResult cdp = run_cdp(part, y, params.max_sweeps, rng);
      touches += cdp.pair_visits;
      r.potential_trace.push_back(std::move(cdp.potential_trace));
      r.sweeps_per_iter.push_back(cdp.sweeps);
    }
    OpinionVector next = opinion_step(x, part, net, params, t, &touches);
    r.arc_touches_per_iter.push_back(touches);
    const double change = max_abs_change(next, x);
    x = std::move(next);
    r.iterations = t + 1;
    r.opinion_trace.push_back(x.values);
    r.label_trace.push_back(part.labels());
    r.welfare_trace.push_back(social_welfare(x, part, net, params));
    if (change < params.epsilon) {
      r.converged = true;
      break;
    }
  }

  r.partition_stable =
      params.freeze_partition || is_nash_equilibrium(part, pair_scores(x, net, params));
  r.final_opinions = std::move(x);
  r.final_partition = std::move(part);
  return r;
}

/// Random x(0) and labels in [0, init_k) from params.seed, then run_gcaofp.
inline RunResult run_gcaofp_seeded(const Network& net, const Params& params) {
  const std::size_t k = params.init_k.value_or(net.size());
  return run_gcaofp(net, init_opinions(net.size(), params.seed), init_partition(net.size(), k, params.seed), params);
}

enum class BaselineModel { hk, degroot, fj };

inline BaselineModel parse_baseline_model(const std::string& s) {
  if (s == "hk") return BaselineModel::hk;
  if (s == "degroot") return BaselineModel::degroot;
  if (s == "fj") return BaselineModel::fj;
  throw std::invalid_argument("unknown baseline model '" + s + "'");
}

struct BaselineParams {
  double rho = 0.8;          // HK confidence range
  double susceptibility = 0.5;  // FJ weight on social influence
  double epsilon = 1e-6;
  std::size_t max_iters = 10000;
};

/// x(T+1) = P x(T), P the row-normalized W + I.
inline OpinionVector degroot_step(const OpinionVector& x, const Network& net) {
  std::vector<double> next(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    double num = x[i], den = 1.0;
    for (const auto& nb : net.out_neighbors(i)) {
      num += nb.weight * x[nb.index];
      den += nb.weight;
    }
    next[i] = num / den;
  }
  return OpinionVector(std::move(next), x.time + 1);
}

/// x(T+1) = s P~ x(T) + (1 - s) x(0), P~ the row-normalized W.
inline OpinionVector fj_step(const OpinionVector& x, const OpinionVector& x0, const Network& net, double s) {
  std::vector<double> next(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    double num = 0.0, den = 0.0;
    for (const auto& nb : net.out_neighbors(i)) {
      num += nb.weight * x[nb.index];
      den += nb.weight;
    }
    const double social = den > 0.0 ? num / den : x[i];
    next[i] = s * social + (1.0 - s) * x0[i];
  }
  return OpinionVector(std::move(next), x.time + 1);
}

/// Community-blind baselines. The partition is the whole network throughout.
inline RunResult run_baseline(BaselineModel model, const Network& net, const OpinionVector& x0,
                              const BaselineParams& bp) {
  if (x0.size() != net.size()) throw std::invalid_argument("run_baseline: size mismatch");
  if (!(bp.epsilon > 0.0) || bp.max_iters == 0) throw std::invalid_argument("run_baseline: bad termination settings");
  if (model == BaselineModel::fj && !(bp.susceptibility >= 0.0 && bp.susceptibility <= 1.0)) {
    throw std::invalid_argument("run_baseline: FJ susceptibility must lie in [0, 1]");
  }
  RunResult r;
  const Partition whole = Partition::single(net.size());
  OpinionVector x = x0;
  x.time = 0;
  r.opinion_trace.push_back(x.values);
  r.label_trace.push_back(whole.labels());
  for (std::size_t t = 0; t < bp.max_iters; ++t) {
    OpinionVector next;
    switch (model) {
      case BaselineModel::hk: next = hk_step(x, net, bp.rho); break;
      case BaselineModel::degroot: next = degroot_step(x, net); break;
      case BaselineModel::fj: next = fj_step(x, x0, net, bp.susceptibility); break;
    }
    const double change = max_abs_change(next, x);
    x = std::move(next);
    r.iterations = t + 1;
    r.opinion_trace.push_back(x.values);
    r.label_trace.push_back(whole.labels());
    r.sweeps_per_iter.push_back(0);
    if (change < bp.epsilon) {
      r.converged = true;
      break;
    }
  }
  r.partition_stable = true;
  r.final_opinions = std::move(x);
  r.final_partition = whole;
  return r;
}

}  // namespace gcaofp
