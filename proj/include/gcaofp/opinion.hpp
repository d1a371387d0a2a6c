#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "state.hpp"

namespace gcaofp {

/// Opinion weights agent i uses at one step. self_weight + sum of
/// neighbor_weights is 1; only trusted neighbors appear.
struct WeightRow {
  double self_weight = 1.0;
  std::vector<std::pair<std::size_t, double>> neighbor_weights;
};

/// beta * gamma^T.
inline double confidence_bound(const Params& params, std::size_t step) {
  return params.beta * std::pow(params.gamma, static_cast<double>(step));
}

namespace detail {

/// Calls emit(j, theta_ij) for every out-neighbor j with theta_ij > 0 and
/// returns sum of theta. theta_ij = (same ? lambda_i : 1) * omega_ij.
template <typename Emit>
double trusted_row(std::size_t i, const OpinionVector& x, const Partition& part, const Network& net,
                   const Params& params, double bound, Emit&& emit) {
  double total = 0.0;
  const double lambda_i = params.lambda_of(i);
  for (const auto& nb : net.out_neighbors(i)) {
    const std::size_t j = nb.index;
    const double gap = std::abs(x[i] - x[j]);
    double omega;
    if (params.mode == WeightingMode::linear) {
      omega = nb.weight * std::max(bound - gap, 0.0);
    } else {
      omega = gap < bound ? 1.0 : 0.0;
    }
    if (omega <= 0.0) continue;
    const double theta = part.same(i, j) ? lambda_i * omega : omega;
    emit(j, theta);
    total += theta;
  }
  return total;
}

inline void check_sizes(const OpinionVector& x, const Partition& part, const Network& net, const Params& params) {
  if (x.size() != net.size() || part.size() != net.size() || params.lambda.size() != net.size()) {
    throw std::invalid_argument("opinion update: size mismatch");
  }
}

}  // namespace detail

inline std::vector<WeightRow> compute_weights(const OpinionVector& x, const Partition& part, const Network& net,
                                              const Params& params, std::size_t step) {
  detail::check_sizes(x, part, net, params);
  const double bound = confidence_bound(params, step);
  std::vector<WeightRow> rows(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    WeightRow& row = rows[i];
    const double total = detail::trusted_row(i, x, part, net, params, bound, [&](std::size_t j, double theta) {
      row.neighbor_weights.emplace_back(j, theta);
    });
    const double denom = total + 1.0;
    row.self_weight = 1.0 / denom;
    for (auto& [j, w] : row.neighbor_weights) w /= denom;
  }
  return rows;
}

/// Synchronous community-aware bounded-confidence update from the frozen x(T):
///   x_i(T+1) = delta_i x_i(T) + sum_j Phi_ij x_j(T)
inline OpinionVector opinion_step(const OpinionVector& x, const Partition& part, const Network& net,
                                  const Params& params, std::size_t step, std::uint64_t* arc_touches = nullptr) {
  detail::check_sizes(x, part, net, params);
  const double bound = confidence_bound(params, step);
  std::vector<double> next(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    double weighted = x[i];
    const double total = detail::trusted_row(i, x, part, net, params, bound,
                                             [&](std::size_t j, double theta) { weighted += theta * x[j]; });
    next[i] = std::clamp(weighted / (total + 1.0), 0.0, 1.0);
  }
  if (arc_touches) *arc_touches += net.arc_count();
  return OpinionVector(std::move(next), x.time + 1);
}

/// Hegselmann-Krause: each agent takes the mean over itself and the
/// out-neighbors within distance rho (strict).
inline OpinionVector hk_step(const OpinionVector& x, const Network& net, double rho) {
  if (x.size() != net.size()) throw std::invalid_argument("hk_step: size mismatch");
  if (!(rho > 0.0)) throw std::invalid_argument("hk_step: rho must be positive");
  std::vector<double> next(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    double sum = x[i];
    std::size_t count = 1;
    for (const auto& nb : net.out_neighbors(i)) {
      if (std::abs(x[nb.index] - x[i]) < rho) {
        sum += x[nb.index];
        ++count;
      }
    }
    next[i] = sum / static_cast<double>(count);
  }
  return OpinionVector(std::move(next), x.time + 1);
}

}  // namespace gcaofp
