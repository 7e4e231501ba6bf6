#pragma once

// Reduction to the line-stabilizer case: exterior powers turn the simple root
// alpha_k into epsilon_1 - epsilon_2, direct sums combine two factors.

#include <utility>
#include <vector>

#include "anosov/representation.hpp"
#include "anosov/scaledlin.hpp"

namespace anosov::reductions {

using scaledlin::BlockDiagonal;
using scaledlin::ScaledMatrix;

/// k-subsets of {1..d} in lexicographic order; the basis of Lambda^k R^d.
struct ExteriorIndexing {
  int d = 0;
  int k = 0;
  std::vector<std::vector<int>> subsets;

  /// Throws ResourceCapExceeded if C(d, k) is above the guard.
  ExteriorIndexing(int d, int k);
  std::size_t size() const { return subsets.size(); }
};

/// Lambda^k g: entry (S, T) is the minor of g on rows S and columns T.
ScaledMatrix exterior_power(const ScaledMatrix& g, int k);

/// Both sides of <e1 - e2, mu(Lambda^k g)> = <e_k - e_{k+1}, mu(g)>: (lifted, source).
std::pair<double, double> pair_after_exterior(const ScaledMatrix& g, int k);

/// Block diagonal g_L (+) g_R; the blocks keep their own scales.
BlockDiagonal direct_sum(const BlockDiagonal& left, const BlockDiagonal& right);
inline BlockDiagonal direct_sum(const ScaledMatrix& left, const ScaledMatrix& right) {
  return direct_sum(BlockDiagonal(left), BlockDiagonal(right));
}

/// Generator-wise Lambda^k.
Representation lift_exterior(const Representation& rep, int k);
/// Generator-wise rho_1 (+) rho_2; throws InputError on alphabet mismatch.
Representation lift_direct_sum(const Representation& first, const Representation& second);
/// Upper-left corner embedding into GL_D, padded by the identity.
Representation lift_corner(const Representation& rep, int D);

}  // namespace anosov::reductions
