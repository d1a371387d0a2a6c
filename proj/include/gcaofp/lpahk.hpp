#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "graph.hpp"
#include "state.hpp"

namespace gcaofp {

// Label utility of the LPA-HK model, evaluated on a frozen snapshot:
//   u'_i(ell) = sum over out-neighbors j labelled ell of max(psi - |x_i - x_j|, 0) W_ij
// Never negative, so a single close neighbor can outweigh any number of distant
// ones in the same community. Kept for comparison with label_utility().
inline double lpahk_label_utility(std::size_t i, std::size_t ell, const OpinionVector& x, const Partition& part,
                                  const Network& net, double psi) {
  double u = 0.0;
  for (const auto& nb : net.out_neighbors(i)) {
    if (part[nb.index] == ell) u += std::max(psi - std::abs(x[i] - x[nb.index]), 0.0) * nb.weight;
  }
  return u;
}

}  // namespace gcaofp
