#include "anosov/scaledlin.hpp"

#include <algorithm>
#include <functional>

namespace anosov::scaledlin {

std::size_t binomial(int n, int k, std::size_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    if (out > cap) {
      throw ResourceCapExceeded("C(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds exterior-power cap " + std::to_string(cap));
    }
  }
  return out;
}

std::vector<std::vector<int>> k_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  out.reserve(binomial(d, k));
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

namespace {

Vector top_left_vector(const ScaledMatrix& m) {
  Eigen::JacobiSVD<Matrix> solver(m.entries(), Eigen::ComputeFullU);
  if (solver.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  return solver.matrixU().col(0);
}

}  // namespace

TrackedMatrix::TrackedMatrix(const ScaledMatrix& g) : dim_(g.dim()) {
  if (dim_ < 1) throw InputError("tracked matrix needs dimension >= 1");
  const double det = g.entries().determinant();
  if (!(std::abs(det) > 0) || !std::isfinite(det)) {
    throw NumericalError("tracked matrix is singular");
  }
  log_abs_det_ = std::log(std::abs(det)) + dim_ * g.log_scale();
  levels_.push_back(g);
  for (int k = 2; k <= dim_ - 1; ++k) {
    levels_.emplace_back(compound_matrix<double>(g.entries(), k), k * g.log_scale());
  }
  // Cofactor-accurate inverse; the determinant check above already excludes singular g.
  inverse_transpose_ = ScaledMatrix(Matrix(g.entries().inverse().transpose()), -g.log_scale());
}

TrackedMatrix TrackedMatrix::identity(int d) {
  return TrackedMatrix(ScaledMatrix::identity(d));
}

TrackedMatrix TrackedMatrix::operator*(const TrackedMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw DimensionMismatch("tracked product dimension mismatch");
  TrackedMatrix out;
  out.dim_ = dim_;
  out.levels_.reserve(levels_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i) out.levels_.push_back(levels_[i] * rhs.levels_[i]);
  // (gh)^{-T} = g^{-T} h^{-T}
  out.inverse_transpose_ = inverse_transpose_ * rhs.inverse_transpose_;
  out.log_abs_det_ = log_abs_det_ + rhs.log_abs_det_;
  return out;
}

TrackedMatrix TrackedMatrix::power(std::uint64_t n) const {
  if (n == 0) return identity(dim_);
  TrackedMatrix result;
  TrackedMatrix base = *this;
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

TrackedMatrix TrackedMatrix::inverse() const {
  TrackedMatrix out;
  out.dim_ = dim_;
  for (const auto& level : levels_) out.levels_.push_back(level.inverse());
  out.inverse_transpose_ = levels_.front().transpose();
  out.log_abs_det_ = -log_abs_det_;
  return out;
}

std::vector<double> TrackedMatrix::log_singular_values() const {
  if (dim_ == 1) return {log_abs_det_};
  std::vector<double> s(static_cast<std::size_t>(dim_) + 1);
  s[0] = 0;
  for (int k = 1; k <= dim_ - 1; ++k) s[static_cast<std::size_t>(k)] = log_top_singular_value(exterior(k));
  s[static_cast<std::size_t>(dim_)] = log_abs_det_;
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s[i + 1] - s[i];
  return out;
}

std::vector<double> TrackedMatrix::log_eigen_moduli() const {
  if (dim_ == 1) return {log_abs_det_};
  std::vector<double> s(static_cast<std::size_t>(dim_) + 1);
  s[0] = 0;
  for (int k = 1; k <= dim_ - 1; ++k) s[static_cast<std::size_t>(k)] = log_spectral_radius(exterior(k));
  s[static_cast<std::size_t>(dim_)] = log_abs_det_;
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s[i + 1] - s[i];
  // Ties between complex-conjugate moduli can produce rounding-level inversions.
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Vector TrackedMatrix::top_left_singular_vector() const { return top_left_vector(matrix()); }

Vector TrackedMatrix::hyperplane_normal() const { return top_left_vector(inverse_transpose_); }

Vector TrackedMatrix::top_eigenvector() const {
  const Matrix& a = matrix().entries();
  if (dim_ == 1) return Vector::Ones(1);
  Eigen::EigenSolver<Matrix> solver(a, true);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
  const auto& ev = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > std::abs(ev(best))) best = i;
  }
  Vector v = solver.eigenvectors().col(best).real();
  if (v.norm() == 0) v = solver.eigenvectors().col(best).imag();
  return v.normalized();
}

// ---------------------------------------------------------------------------

BlockDiagonal::BlockDiagonal(std::vector<TrackedMatrix> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InputError("block diagonal needs at least one block");
  for (const auto& b : blocks_) dim_ += b.dim();
}

BlockDiagonal::BlockDiagonal(TrackedMatrix single) : dim_(single.dim()) {
  blocks_.push_back(std::move(single));
}

BlockDiagonal BlockDiagonal::identity(std::span<const int> sizes) {
  std::vector<TrackedMatrix> blocks;
  for (int s : sizes) blocks.push_back(TrackedMatrix::identity(s));
  return BlockDiagonal(std::move(blocks));
}

std::vector<int> BlockDiagonal::block_sizes() const {
  std::vector<int> out;
  for (const auto& b : blocks_) out.push_back(b.dim());
  return out;
}

BlockDiagonal BlockDiagonal::operator*(const BlockDiagonal& rhs) const {
  if (block_sizes() != rhs.block_sizes()) throw DimensionMismatch("block structures differ");
  std::vector<TrackedMatrix> out;
  out.reserve(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) out.push_back(blocks_[i] * rhs.blocks_[i]);
  return BlockDiagonal(std::move(out));
}

BlockDiagonal BlockDiagonal::power(std::uint64_t n) const {
  std::vector<TrackedMatrix> out;
  for (const auto& b : blocks_) out.push_back(b.power(n));
  return BlockDiagonal(std::move(out));
}

BlockDiagonal BlockDiagonal::inverse() const {
  std::vector<TrackedMatrix> out;
  for (const auto& b : blocks_) out.push_back(b.inverse());
  return BlockDiagonal(std::move(out));
}

namespace {

struct Tagged {
  double value;
  std::size_t block;
};

std::vector<Tagged> merged(const std::vector<TrackedMatrix>& blocks, bool eigen) {
  std::vector<Tagged> all;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (double v : eigen ? blocks[i].log_eigen_moduli() : blocks[i].log_singular_values()) {
      all.push_back({v, i});
    }
  }
  // Stable: ties keep the earlier block first.
  std::stable_sort(all.begin(), all.end(),
                   [](const Tagged& a, const Tagged& b) { return a.value > b.value; });
  return all;
}

Vector embed(const std::vector<TrackedMatrix>& blocks, std::size_t which, const Vector& local) {
  int dim = 0;
  int offset = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i == which) offset = dim;
    dim += blocks[i].dim();
  }
  Vector out = Vector::Zero(dim);
  out.segment(offset, local.size()) = local;
  return out;
}

}  // namespace

std::vector<double> BlockDiagonal::log_singular_values() const {
  if (blocks_.size() == 1) return blocks_.front().log_singular_values();
  std::vector<double> out;
  for (const auto& t : merged(blocks_, false)) out.push_back(t.value);
  return out;
}

std::vector<double> BlockDiagonal::log_eigen_moduli() const {
  if (blocks_.size() == 1) return blocks_.front().log_eigen_moduli();
  std::vector<double> out;
  for (const auto& t : merged(blocks_, true)) out.push_back(t.value);
  return out;
}

Vector BlockDiagonal::top_left_singular_vector() const {
  if (blocks_.size() == 1) return blocks_.front().top_left_singular_vector();
  const auto all = merged(blocks_, false);
  const std::size_t b = all.front().block;
  return embed(blocks_, b, blocks_[b].top_left_singular_vector());
}

Vector BlockDiagonal::hyperplane_normal() const {
  if (blocks_.size() == 1) return blocks_.front().hyperplane_normal();
  // The bottom singular direction lives in the block holding the smallest value.
  const auto all = merged(blocks_, false);
  const std::size_t b = all.back().block;
  return embed(blocks_, b, blocks_[b].hyperplane_normal());
}

Vector BlockDiagonal::top_eigenvector() const {
  if (blocks_.size() == 1) return blocks_.front().top_eigenvector();
  const auto all = merged(blocks_, true);
  const std::size_t b = all.front().block;
  return embed(blocks_, b, blocks_[b].top_eigenvector());
}

ScaledMatrix BlockDiagonal::dense() const {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& b : blocks_) top = std::max(top, b.matrix().log_scale());
  Matrix out = Matrix::Zero(dim_, dim_);
  int offset = 0;
  for (const auto& b : blocks_) {
    const int n = b.dim();
    out.block(offset, offset, n, n) = b.matrix().entries() * std::exp(b.matrix().log_scale() - top);
    offset += n;
  }
  return ScaledMatrix(out, top);
}

}  // namespace anosov::scaledlin
