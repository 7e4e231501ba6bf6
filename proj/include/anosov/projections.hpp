#pragma once

// Cartan and Lyapunov projections for GL_d(R), root and weight pairings,
// the opposition involution, and the attracting flag Xi of an element.
// Indices of roots and weights are 1-based, as in epsilon_i - epsilon_j.

#include <string>
#include <vector>

#include "anosov/scaledlin.hpp"

namespace anosov::projections {

using scaledlin::BlockDiagonal;
using scaledlin::ScaledMatrix;
using scaledlin::TrackedMatrix;
using scaledlin::Vector;

inline constexpr double kDefaultGapTolerance = 1e-10;

/// A nonincreasing real vector: a point of the closed Weyl chamber.
class ChamberVector {
 public:
  ChamberVector() = default;
  /// Throws NumericalError on non-finite entries, InputError unless nonincreasing
  /// up to `slack`.
  explicit ChamberVector(std::vector<double> entries, double slack = 1e-9);

  int dim() const { return static_cast<int>(entries_.size()); }
  const std::vector<double>& entries() const { return entries_; }
  /// 1-based access.
  double at(int i) const;
  double norm() const;

 private:
  std::vector<double> entries_;
};

/// Logs of singular values.
class CartanVector : public ChamberVector {
 public:
  using ChamberVector::ChamberVector;
};

/// Logs of eigenvalue moduli.
class LyapunovVector : public ChamberVector {
 public:
  using ChamberVector::ChamberVector;
};

/// The positive root epsilon_i - epsilon_j, 1 <= i < j <= d.
struct RootIndex {
  int i = 1;
  int j = 2;

  static RootIndex simple(int k) { return {k, k + 1}; }
  bool is_simple() const { return j == i + 1; }
  /// Throws InputError unless 1 <= i < j <= d.
  void validate(int d) const;
  std::string to_string() const;

  auto operator<=>(const RootIndex&) const = default;
};

/// A set of simple roots, by index k for alpha_k = epsilon_k - epsilon_{k+1}.
using Theta = std::vector<int>;

/// Throws InputError for an empty set or an index outside [1, d-1].
void validate_theta(const Theta& theta, int d);

/// Positive roots epsilon_i - epsilon_j whose span [i, j) meets theta.
std::vector<RootIndex> sigma_plus(const Theta& theta, int d);

/// A projective line and a projective hyperplane (by its normal), unit vectors mod sign.
struct FlagPair {
  Vector line;
  Vector hyperplane_normal;
};

/// Sign convention mod +-1: the largest-magnitude coordinate is made positive.
Vector canonical_sign(Vector v);

/// |sin| of the angle between two lines.
double projective_distance(const Vector& u, const Vector& v);

CartanVector mu(const ScaledMatrix& g);
CartanVector mu(const TrackedMatrix& g);
CartanVector mu(const BlockDiagonal& g);

LyapunovVector lambda_direct(const ScaledMatrix& g);
LyapunovVector lambda_direct(const TrackedMatrix& g);
LyapunovVector lambda_direct(const BlockDiagonal& g);

/// mu(g^(2^k)) / 2^k.
LyapunovVector lambda_by_limit(const ScaledMatrix& g, int k);

/// entries[i] - entries[j].
double pair_root(const ChamberVector& v, RootIndex r);

/// Trace-free fundamental weight: top-i partial sum minus (i/d) * total.
double pair_fundamental_weight(const ChamberVector& v, int i);

/// -w_0 on positive roots: (i, j) -> (d+1-j, d+1-i).
RootIndex opposition_star(RootIndex r, int d);
Theta opposition_star(const Theta& theta, int d);

/// min over alpha in theta of pair_root(v, alpha).
double T_theta(const ChamberVector& v, const Theta& theta);
double T_theta(const ScaledMatrix& g, const Theta& theta);

/// Top left-singular line of g. Throws GapTooSmall when the (1,2) gap is <= tol.
Vector xi_plus(const ScaledMatrix& g, double tol = kDefaultGapTolerance);
Vector xi_plus(const BlockDiagonal& g, double tol = kDefaultGapTolerance);

/// Normal of the hyperplane spanned by the top d-1 left-singular directions.
/// Throws GapTooSmall when the (d-1,d) gap is <= tol.
Vector xi_minus(const ScaledMatrix& g, double tol = kDefaultGapTolerance);
Vector xi_minus(const BlockDiagonal& g, double tol = kDefaultGapTolerance);

}  // namespace anosov::projections
