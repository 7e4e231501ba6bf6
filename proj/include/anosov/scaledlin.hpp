#pragma once

// Overflow-safe dense linear algebra. A ScaledMatrix stores a unit-Frobenius
// matrix together with a natural-log multiplier, so products of hundreds of
// factors with singular values e^{+-3} stay representable.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anosov/error.hpp"

namespace anosov::scaledlin {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;

/// exp(log_scale) * entries, with ||entries||_F = 1.
template <class Scalar>
class BasicScaledMatrix {
 public:
  using Dense = DenseMatrix<Scalar>;

  BasicScaledMatrix() = default;

  /// Throws NumericalError for zero or non-finite input.
  explicit BasicScaledMatrix(Dense m, Scalar log_scale = 0)
      : entries_(std::move(m)), log_scale_(log_scale) {
    if (entries_.rows() != entries_.cols()) throw DimensionMismatch("ScaledMatrix must be square");
    renormalize();
  }

  static BasicScaledMatrix identity(int d) {
    return BasicScaledMatrix(Dense::Identity(d, d));
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Dense& entries() const { return entries_; }
  Scalar log_scale() const { return log_scale_; }

  /// The matrix itself; overflows for large log_scale.
  Dense represented() const { return entries_ * std::exp(log_scale_); }

  BasicScaledMatrix operator*(const BasicScaledMatrix& rhs) const {
    if (dim() != rhs.dim()) {
      throw DimensionMismatch("scaled product of " + std::to_string(dim()) + "x" +
                              std::to_string(dim()) + " and " + std::to_string(rhs.dim()) +
                              "x" + std::to_string(rhs.dim()) + " factors");
    }
    return BasicScaledMatrix(entries_ * rhs.entries_, log_scale_ + rhs.log_scale_);
  }

  BasicScaledMatrix transpose() const {
    return BasicScaledMatrix(Dense(entries_.transpose()), log_scale_);
  }

  /// Throws NumericalError when the normalized entries are singular.
  BasicScaledMatrix inverse() const {
    Eigen::FullPivLU<Dense> lu(entries_);
    if (!lu.isInvertible()) throw NumericalError("matrix is numerically singular");
    return BasicScaledMatrix(Dense(lu.inverse()), -log_scale_);
  }

 private:
  void renormalize() {
    if (!entries_.allFinite() || !std::isfinite(static_cast<double>(log_scale_))) {
      throw NumericalError("non-finite entries in scaled matrix");
    }
    const Scalar norm = entries_.norm();
    if (!(norm > 0)) throw NumericalError("zero matrix cannot be scaled");
    entries_ /= norm;
    log_scale_ += std::log(norm);
  }

  Dense entries_;
  Scalar log_scale_ = 0;
};

using ScaledMatrix = BasicScaledMatrix<double>;
/// Extended precision variant for oracle runs.
using ExtendedScaledMatrix = BasicScaledMatrix<long double>;

/// Product of the factors in order. Throws on empty input or dimension mismatch.
template <class Scalar>
BasicScaledMatrix<Scalar> scaled_product(std::span<const BasicScaledMatrix<Scalar>> factors) {
  if (factors.empty()) throw InputError("scaled_product needs at least one factor");
  BasicScaledMatrix<Scalar> out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = out * factors[i];
  return out;
}

inline ScaledMatrix scaled_product(std::span<const ScaledMatrix> factors) {
  return scaled_product<double>(factors);
}

/// m^n by binary squaring; every squaring renormalizes.
template <class Scalar>
BasicScaledMatrix<Scalar> power_scaled(const BasicScaledMatrix<Scalar>& m, std::uint64_t n) {
  if (n == 0) throw InputError("power_scaled needs n >= 1");
  BasicScaledMatrix<Scalar> result;
  BasicScaledMatrix<Scalar> base = m;
  bool have = false;
  while (n > 0) {
    if (n & 1U) {
      result = have ? result * base : base;
      have = true;
    }
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

template <class Scalar>
struct BasicSingularData {
  /// Natural logs of the singular values of the represented matrix, nonincreasing.
  std::vector<Scalar> log_sigmas;
  DenseMatrix<Scalar> left_vectors;
  DenseMatrix<Scalar> right_vectors;
};

using SingularData = BasicSingularData<double>;

template <class Scalar>
BasicSingularData<Scalar> svd(const BasicScaledMatrix<Scalar>& m) {
  using Dense = DenseMatrix<Scalar>;
  Eigen::JacobiSVD<Dense> solver(m.entries(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  BasicSingularData<Scalar> out;
  const auto& sv = solver.singularValues();
  out.log_sigmas.reserve(static_cast<std::size_t>(sv.size()));
  // Eigen returns singular values sorted nonincreasing.
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    out.log_sigmas.push_back(std::log(sv(i)) + m.log_scale());
  }
  out.left_vectors = solver.matrixU();
  out.right_vectors = solver.matrixV();
  return out;
}

/// Log of the largest singular value of the represented matrix.
template <class Scalar>
Scalar log_top_singular_value(const BasicScaledMatrix<Scalar>& m) {
  using Dense = DenseMatrix<Scalar>;
  if (m.dim() == 1) return std::log(std::abs(m.entries()(0, 0))) + m.log_scale();
  Eigen::JacobiSVD<Dense> solver(m.entries());
  if (solver.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  return std::log(solver.singularValues()(0)) + m.log_scale();
}

namespace detail {

template <class Scalar>
std::vector<Scalar> moduli_of_entries(const DenseMatrix<Scalar>& a) {
  const auto n = a.rows();
  std::vector<Scalar> moduli;
  if (n == 1) {
    moduli.push_back(std::abs(a(0, 0)));
  } else if (n == 2) {
    // Closed form keeps Jordan blocks exact: disc = ((a-d)/2)^2 + bc.
    const Scalar half_tr = (a(0, 0) + a(1, 1)) / 2;
    const Scalar half_diff = (a(0, 0) - a(1, 1)) / 2;
    const Scalar disc = half_diff * half_diff + a(0, 1) * a(1, 0);
    if (disc <= 0) {
      const Scalar det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
      const Scalar r = std::sqrt(std::abs(det));
      moduli = {r, r};
    } else {
      const Scalar root = std::sqrt(disc);
      const Scalar big = half_tr >= 0 ? half_tr + root : half_tr - root;
      const Scalar det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
      moduli = {std::abs(big), big != 0 ? std::abs(det / big) : std::abs(half_tr - root)};
    }
  } else {
    Eigen::EigenSolver<DenseMatrix<Scalar>> solver(a, false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) moduli.push_back(std::abs(ev(i)));
  }
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli;
}

}  // namespace detail

/// Natural logs of the eigenvalue moduli of the represented matrix,
/// nonincreasing, with algebraic multiplicity.
template <class Scalar>
std::vector<Scalar> eigen_moduli(const BasicScaledMatrix<Scalar>& m) {
  auto moduli = detail::moduli_of_entries<Scalar>(m.entries());
  for (auto& v : moduli) v = std::log(v) + m.log_scale();
  return moduli;
}

/// Log of the spectral radius of the represented matrix.
template <class Scalar>
Scalar log_spectral_radius(const BasicScaledMatrix<Scalar>& m) {
  return eigen_moduli(m).front();
}

// ---------------------------------------------------------------------------
// Compound (exterior power) kernel

/// C(n, k); throws ResourceCapExceeded above `cap`.
std::size_t binomial(int n, int k, std::size_t cap = 4096);

/// k-subsets of {0..d-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int d, int k);

/// Determinant by Gaussian elimination with partial pivoting.
template <class Scalar>
Scalar elimination_determinant(DenseMatrix<Scalar> a) {
  const auto n = a.rows();
  Scalar det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == 0) return 0;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar f = a(r, col) / a(col, col);
      a.row(r).tail(n - col - 1) -= f * a.row(col).tail(n - col - 1);
    }
  }
  return det;
}

/// Matrix of k x k minors indexed by lexicographic k-subsets.
template <class Scalar>
DenseMatrix<Scalar> compound_matrix(const DenseMatrix<Scalar>& m, int k) {
  const int d = static_cast<int>(m.rows());
  if (k < 1 || k > d) throw InputError("exterior degree out of range");
  const auto subsets = k_subsets(d, k);
  const auto n = static_cast<Eigen::Index>(subsets.size());
  DenseMatrix<Scalar> out(n, n);
  DenseMatrix<Scalar> sub(k, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) sub(r, c) = m(subsets[i][r], subsets[j][c]);
      }
      out(i, j) = elimination_determinant<Scalar>(sub);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tracked products

/// A matrix g carried with Lambda^k g (k = 1..d-1), g^{-T} and log|det g|.
///
/// Products act level by level. The top singular value and spectral radius of
/// each level are well conditioned even when g itself is not, so every entry
/// of the Cartan and Lyapunov vectors of long products is recovered from
/// successive differences log s_1(Lambda^k g) - log s_1(Lambda^{k-1} g).
class TrackedMatrix {
 public:
  TrackedMatrix() = default;
  /// Throws NumericalError if g is singular.
  explicit TrackedMatrix(const ScaledMatrix& g);
  static TrackedMatrix identity(int d);

  int dim() const { return dim_; }
  /// Level 1, i.e. g itself.
  const ScaledMatrix& matrix() const { return levels_.front(); }
  /// Lambda^k g for 1 <= k <= max(1, d-1).
  const ScaledMatrix& exterior(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }
  const ScaledMatrix& inverse_transpose() const { return inverse_transpose_; }
  double log_abs_det() const { return log_abs_det_; }

  TrackedMatrix operator*(const TrackedMatrix& rhs) const;
  TrackedMatrix power(std::uint64_t n) const;
  TrackedMatrix inverse() const;

  /// Logs of singular values, nonincreasing.
  std::vector<double> log_singular_values() const;
  /// Logs of eigenvalue moduli, nonincreasing.
  std::vector<double> log_eigen_moduli() const;

  /// Unit top left-singular vector of g.
  Vector top_left_singular_vector() const;
  /// Unit normal to the span of the top d-1 left-singular vectors of g; this is
  /// the top left-singular vector of g^{-T}.
  Vector hyperplane_normal() const;
  /// Real eigenvector for the eigenvalue of largest modulus (real part if complex).
  Vector top_eigenvector() const;

 private:
  int dim_ = 0;
  std::vector<ScaledMatrix> levels_;
  ScaledMatrix inverse_transpose_;
  double log_abs_det_ = 0;
};

/// Direct sum of tracked blocks. Each block keeps its own scale, so pairings
/// between entries coming from different blocks stay exact.
class BlockDiagonal {
 public:
  BlockDiagonal() = default;
  explicit BlockDiagonal(std::vector<TrackedMatrix> blocks);
  explicit BlockDiagonal(TrackedMatrix single);
  explicit BlockDiagonal(const ScaledMatrix& single) : BlockDiagonal(TrackedMatrix(single)) {}
  static BlockDiagonal identity(std::span<const int> sizes);

  int dim() const { return dim_; }
  const std::vector<TrackedMatrix>& blocks() const { return blocks_; }
  std::vector<int> block_sizes() const;

  /// Requires identical block structure.
  BlockDiagonal operator*(const BlockDiagonal& rhs) const;
  BlockDiagonal power(std::uint64_t n) const;
  BlockDiagonal inverse() const;

  std::vector<double> log_singular_values() const;
  std::vector<double> log_eigen_moduli() const;
  Vector top_left_singular_vector() const;
  Vector hyperplane_normal() const;
  Vector top_eigenvector() const;

  /// Single scaled matrix; blocks far below the top scale may underflow to zero.
  ScaledMatrix dense() const;

 private:
  int dim_ = 0;
  std::vector<TrackedMatrix> blocks_;
};

}  // namespace anosov::scaledlin
