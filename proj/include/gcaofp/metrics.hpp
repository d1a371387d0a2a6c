#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "state.hpp"

namespace gcaofp {

/// sw = sum over arcs i->j of
///   lambda_i (psi - |dx|) W_ij        if i, j share a community
///   max(psi - |dx|, 0) W_ij           otherwise
inline double social_welfare(const OpinionVector& x, const Partition& part, const Network& net, const Params& params) {
  if (x.size() != net.size() || part.size() != net.size() || params.lambda.size() != net.size()) {
    throw std::invalid_argument("social_welfare: size mismatch");
  }
  double sw = 0.0;
  for (const Arc& a : net.arcs()) {
    const double d = params.psi - std::abs(x[a.src] - x[a.dst]);
    sw += part.same(a.src, a.dst) ? params.lambda_of(a.src) * d * a.weight : std::max(d, 0.0) * a.weight;
  }
  return sw;
}

namespace detail {

inline double uniform_lambda_or_throw(const Params& params, const char* what) {
  if (!params.uniform_lambda()) {
    throw std::invalid_argument(std::string(what) + " is only defined for uniform lambda");
  }
  return params.lambda.front();
}

inline double positive_total_weight(const Network& net) {
  if (!(net.total_weight() > 0.0)) throw std::invalid_argument("welfare ratio needs positive total weight");
  return net.total_weight();
}

}  // namespace detail

/// Overall social welfare gain, (sw* - sw0) / (lambda W). In [-1, 1].
inline double oswg(double sw0, double sw_star, const Params& params, const Network& net) {
  const double lambda = detail::uniform_lambda_or_throw(params, "OSWG");
  return (sw_star - sw0) / (lambda * detail::positive_total_weight(net));
}

/// sw0 / (lambda psi W): initial welfare relative to full consensus.
inline double icsw(double sw0, const Params& params, const Network& net) {
  const double lambda = detail::uniform_lambda_or_throw(params, "ICSW");
  return sw0 / (lambda * params.psi * detail::positive_total_weight(net));
}

/// sw* / (lambda psi W).
inline double rcsw(double sw_star, const Params& params, const Network& net) {
  const double lambda = detail::uniform_lambda_or_throw(params, "RCSW");
  return sw_star / (lambda * params.psi * detail::positive_total_weight(net));
}

/// Average consensus level: mean over non-empty communities of the mean
/// closeness 1 - |x_i - c_k| of members to their community mean c_k.
inline double acl(const OpinionVector& x, const Partition& part) {
  if (x.size() != part.size() || x.size() == 0) throw std::invalid_argument("acl: size mismatch or empty");
  const Partition p = part.compacted();
  const std::size_t k = p.num_communities();
  std::vector<double> sum(k, 0.0), closeness(k, 0.0);
  std::vector<std::size_t> count(k, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum[p[i]] += x[i];
    ++count[p[i]];
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = sum[p[i]] / static_cast<double>(count[p[i]]);
    closeness[p[i]] += 1.0 - std::abs(x[i] - c);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) total += closeness[c] / static_cast<double>(count[c]);
  return total / static_cast<double>(k);
}

namespace detail {

struct Contingency {
  std::size_t n = 0;
  std::vector<std::size_t> row_sums;  // cluster sizes in a
  std::vector<std::size_t> col_sums;  // cluster sizes in b
  std::vector<std::size_t> cells;     // nonzero n_ij
  std::vector<std::pair<std::size_t, std::size_t>> cell_index;
};

inline Contingency contingency(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("partition length mismatch");
  const Partition ca = a.compacted(), cb = b.compacted();
  Contingency t;
  t.n = a.size();
  t.row_sums.assign(ca.num_communities(), 0);
  t.col_sums.assign(cb.num_communities(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cells;
  for (std::size_t i = 0; i < t.n; ++i) {
    ++t.row_sums[ca[i]];
    ++t.col_sums[cb[i]];
    ++cells[{ca[i], cb[i]}];
  }
  for (const auto& [ij, c] : cells) {
    t.cell_index.push_back(ij);
    t.cells.push_back(c);
  }
  return t;
}

inline double comb2(std::size_t k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k - (k > 0)); }

}  // namespace detail

/// Adjusted Rand index (Hubert-Arabie). 1 when the index equals its maximum
/// and expectation at once (e.g. both partitions trivial).
inline double ari(const Partition& a, const Partition& b) {
  const auto t = detail::contingency(a, b);
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (std::size_t c : t.cells) index += detail::comb2(c);
  for (std::size_t c : t.row_sums) sum_a += detail::comb2(c);
  for (std::size_t c : t.col_sums) sum_b += detail::comb2(c);
  const double total = detail::comb2(t.n);
  const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (index - expected) / denom;
}

/// Mutual information in nats.
inline double mutual_information(const Partition& a, const Partition& b) {
  const auto t = detail::contingency(a, b);
  const double n = static_cast<double>(t.n);
  double mi = 0.0;
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    const double nij = static_cast<double>(t.cells[k]);
    const double ai = static_cast<double>(t.row_sums[t.cell_index[k].first]);
    const double bj = static_cast<double>(t.col_sums[t.cell_index[k].second]);
    mi += nij / n * std::log(n * nij / (ai * bj));
  }
  return std::max(mi, 0.0);
}

inline double entropy(const Partition& a) {
  const auto t = detail::contingency(a, a);
  const double n = static_cast<double>(t.n);
  double h = 0.0;
  for (std::size_t c : t.row_sums) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

/// E[MI] under the permutation (hypergeometric) model with fixed margins.
inline double expected_mutual_information(const Partition& a, const Partition& b) {
  const auto t = detail::contingency(a, b);
  const std::size_t N = t.n;
  const double n = static_cast<double>(N);
  const double lg_n = std::lgamma(n + 1.0);
  double emi = 0.0;
  for (std::size_t ai : t.row_sums) {
    for (std::size_t bj : t.col_sums) {
      const std::size_t lo = std::max<std::size_t>(1, ai + bj > N ? ai + bj - N : 0);
      const std::size_t hi = std::min(ai, bj);
      const double a = static_cast<double>(ai), b = static_cast<double>(bj);
      const double lg_fixed =
          std::lgamma(a + 1.0) + std::lgamma(b + 1.0) + std::lgamma(n - a + 1.0) + std::lgamma(n - b + 1.0) - lg_n;
      for (std::size_t k = lo; k <= hi; ++k) {
        const double nij = static_cast<double>(k);
        const double log_p = lg_fixed - std::lgamma(nij + 1.0) - std::lgamma(a - nij + 1.0) -
                             std::lgamma(b - nij + 1.0) - std::lgamma(n - a - b + nij + 1.0);
        emi += nij / n * std::log(n * nij / (a * b)) * std::exp(log_p);
      }
    }
  }
  return emi;
}

/// Adjusted mutual information, arithmetic-mean normalization:
///   (MI - E[MI]) / ((H(a) + H(b)) / 2 - E[MI])
/// Equivalent partitions (including two single-cluster ones) score exactly 1.
inline double ami(const Partition& a, const Partition& b) {
  const auto t = detail::contingency(a, b);
  // Equivalent up to relabeling: MI equals both entropies, the ratio is 1.
  if (t.cells.size() == t.row_sums.size() && t.cells.size() == t.col_sums.size()) return 1.0;
  const double mi = mutual_information(a, b);
  const double emi = expected_mutual_information(a, b);
  const double denom = 0.5 * (entropy(a) + entropy(b)) - emi;
  if (std::abs(denom) < 1e-15) return 0.0;
  return (mi - emi) / denom;
}

}  // namespace gcaofp
