#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rng.hpp"

namespace gcaofp {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Opinions x(T) in [0, 1]^n at step `time`.
struct OpinionVector {
  std::vector<double> values;
  std::size_t time = 0;

  OpinionVector() = default;
  explicit OpinionVector(std::vector<double> v, std::size_t t = 0) : values(std::move(v)), time(t) {}

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

/// One community label per agent. same(i, j) is the membership product s_i s_j^T.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::size_t> labels) : labels_(std::move(labels)) {}

  static Partition single(std::size_t n) { return Partition(std::vector<std::size_t>(n, 0)); }
  static Partition singletons(std::size_t n) {
    std::vector<std::size_t> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = i;
    return Partition(std::move(l));
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t operator[](std::size_t i) const { return labels_[i]; }
  void set(std::size_t i, std::size_t label) { labels_[i] = label; }
  bool same(std::size_t i, std::size_t j) const { return labels_[i] == labels_[j]; }
  const std::vector<std::size_t>& labels() const { return labels_; }

  std::size_t max_label() const {
    std::size_t m = 0;
    for (std::size_t l : labels_) m = l > m ? l : m;
    return m;
  }

  std::size_t num_communities() const {
    std::unordered_map<std::size_t, char> seen;
    for (std::size_t l : labels_) seen.emplace(l, 0);
    return seen.size();
  }

  /// Relabels to 0..K-1 in order of first appearance.
  Partition compacted() const {
    std::unordered_map<std::size_t, std::size_t> remap;
    std::vector<std::size_t> out(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      auto [it, inserted] = remap.try_emplace(labels_[i], remap.size());
      out[i] = it->second;
    }
    return Partition(std::move(out));
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> labels_;
};

/// Weighting of in-range neighbors in the opinion update: linear uses
/// W_ij * ReLU(bound - |dx|); binary uses the unit step [W_ij > 0 and |dx| < bound].
enum class WeightingMode { linear, binary };

inline std::string to_string(WeightingMode m) { return m == WeightingMode::linear ? "linear" : "binary"; }

inline WeightingMode parse_weighting_mode(const std::string& s) {
  if (s == "linear") return WeightingMode::linear;
  if (s == "binary") return WeightingMode::binary;
  throw ParamError("unknown weighting mode '" + s + "'");
}

struct Params {
  std::vector<double> lambda;  // community susceptibility, one per agent
  double psi = 0.4;            // confidence level of the community game
  double beta = 0.9;           // initial opinion confidence bound
  double gamma = 1.0;          // per-step shrink factor of the bound
  double epsilon = 1e-6;       // convergence threshold on max |dx|
  WeightingMode mode = WeightingMode::linear;
  std::size_t max_outer_iters = 10000;
  std::size_t max_sweeps = 1000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> init_k;  // random initial labels in [0, k); defaults to n
  // Skip the community game and keep the initial partition throughout.
  bool freeze_partition = false;

  static Params uniform(std::size_t n, double lambda_value) {
    Params p;
    p.lambda.assign(n, lambda_value);
    return p;
  }

  double lambda_of(std::size_t i) const { return lambda[i]; }

  bool uniform_lambda() const {
    for (double l : lambda) {
      if (l != lambda.front()) return false;
    }
    return !lambda.empty();
  }

  /// Range checks. lambda == 1 is only admitted in binary mode, where it is
  /// needed for the bounded-confidence (HK) reduction.
  void validate(std::size_t n) const {
    if (lambda.size() != n) {
      throw ParamError("lambda has " + std::to_string(lambda.size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (double l : lambda) {
      if (!std::isfinite(l)) throw ParamError("lambda must be finite");
      if (l < 1.0 || (l == 1.0 && mode != WeightingMode::binary)) {
        throw ParamError("lambda must exceed 1 (lambda = 1 only in binary mode)");
      }
    }
    if (!(psi > 0.0 && psi < 1.0)) throw ParamError("psi must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw ParamError("beta must lie in (0, 1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ParamError("gamma must lie in (0, 1]");
    if (!(epsilon > 0.0)) throw ParamError("epsilon must be positive");
    if (max_outer_iters == 0) throw ParamError("max_outer_iters must be at least 1");
    if (max_sweeps == 0) throw ParamError("max_sweeps must be at least 1");
    if (init_k && (*init_k == 0 || *init_k > n)) throw ParamError("init_k must lie in [1, n]");
  }
};

struct RunResult {
  OpinionVector final_opinions;
  Partition final_partition;
  std::vector<std::vector<double>> opinion_trace;       // x(0), x(1), ...
  std::vector<std::vector<std::size_t>> label_trace;    // initial labels, then one per outer iteration
  std::vector<std::vector<double>> potential_trace;     // per outer iteration: phi at phase start, then after each changing sweep
  std::vector<double> welfare_trace;                    // sw(x(0), S(0)), then sw after each outer iteration
  std::vector<std::size_t> sweeps_per_iter;
  std::vector<std::uint64_t> arc_touches_per_iter;
  std::size_t iterations = 0;
  bool converged = false;
  // One extra community phase at (x*, S*) changed no label.
  bool partition_stable = false;
};

inline OpinionVector init_opinions(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParamError("init_opinions: n must be positive");
  Rng rng(seed, Stream::opinions);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform01();
  return OpinionVector(std::move(x));
}

inline Partition init_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n) throw ParamError("init_partition: k must lie in [1, n]");
  Rng rng(seed, Stream::partition);
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = static_cast<std::size_t>(rng.below(k));
  return Partition(std::move(labels));
}

}  // namespace gcaofp
