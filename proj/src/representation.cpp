#include "anosov/representation.hpp"

#include <cmath>

namespace anosov {

using scaledlin::BlockDiagonal;
using scaledlin::Matrix;
using scaledlin::ScaledMatrix;
using scaledlin::TrackedMatrix;

namespace {

constexpr double kInverseResidual = 1e-9;

void check_inverse(const TrackedMatrix& g, const TrackedMatrix& inv, int generator) {
  const ScaledMatrix product = inv.matrix() * g.matrix();
  const Matrix residual = product.entries() * std::exp(product.log_scale()) -
                          Matrix::Identity(g.dim(), g.dim());
  if (!(residual.norm() <= kInverseResidual)) {
    throw InputError("generator " + std::to_string(generator + 1) +
                     " is numerically singular (inverse residual " + std::to_string(residual.norm()) + ")");
  }
}

}  // namespace

Representation::Representation(words::Alphabet alphabet, std::vector<BlockDiagonal> generators)
    : alphabet_(alphabet) {
  if (static_cast<int>(generators.size()) != alphabet_.rank()) {
    throw InputError("expected " + std::to_string(alphabet_.rank()) + " generators, got " +
                     std::to_string(generators.size()));
  }
  dimension_ = generators.front().dim();
  const auto sizes = generators.front().block_sizes();
  images_.reserve(static_cast<std::size_t>(alphabet_.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].block_sizes() != sizes) {
      throw DimensionMismatch("generator " + std::to_string(i + 1) + " has a different block structure");
    }
    BlockDiagonal inv;
    try {
      inv = generators[i].inverse();
    } catch (const NumericalError&) {
      throw InputError("generator " + std::to_string(i + 1) + " is singular");
    }
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      check_inverse(generators[i].blocks()[b], inv.blocks()[b], static_cast<int>(i));
    }
    generators_.push_back(generators[i].dense().represented());
    images_.push_back(generators[i]);
    images_.push_back(std::move(inv));
  }
}

Representation Representation::from_matrices(int rank, const std::vector<Matrix>& generators,
                                             const std::vector<int>& blocks) {
  words::Alphabet alphabet(rank);
  if (generators.empty()) throw InputError("no generators given");
  const auto d = generators.front().rows();
  std::vector<int> sizes = blocks.empty() ? std::vector<int>{static_cast<int>(d)} : blocks;
  int total = 0;
  for (int s : sizes) {
    if (s < 1) throw InputError("block sizes must be positive");
    total += s;
  }
  if (total != d) throw DimensionMismatch("block sizes sum to " + std::to_string(total) + ", dimension is " + std::to_string(d));
  std::vector<BlockDiagonal> gens;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Matrix& g = generators[i];
    if (g.rows() != d || g.cols() != d) {
      throw DimensionMismatch("generator " + std::to_string(i + 1) + " is not " + std::to_string(d) + "x" +
                              std::to_string(d));
    }
    std::vector<TrackedMatrix> parts;
    int offset = 0;
    Matrix outside = g;
    for (int s : sizes) {
      Matrix block = g.block(offset, offset, s, s);
      outside.block(offset, offset, s, s).setZero();
      try {
        parts.emplace_back(ScaledMatrix(block));
      } catch (const NumericalError&) {
        throw InputError("generator " + std::to_string(i + 1) + " is singular");
      }
      offset += s;
    }
    if (outside.cwiseAbs().maxCoeff() != 0) {
      throw InputError("generator " + std::to_string(i + 1) + " has entries outside the declared blocks");
    }
    gens.emplace_back(std::move(parts));
  }
  Representation out(alphabet, std::move(gens));
  // Keep the input bit-exact; the tracked blocks renormalize their entries.
  out.generators_ = generators;
  return out;
}

Representation Representation::trivial(int rank, int d) {
  return from_matrices(rank, std::vector<Matrix>(static_cast<std::size_t>(rank), Matrix::Identity(d, d)));
}

const BlockDiagonal& Representation::image(words::Letter l) const {
  if (!alphabet_.contains(l)) {
    throw InputError("letter outside the representation's alphabet of rank " + std::to_string(rank()));
  }
  return images_[static_cast<std::size_t>(l.code())];
}

BlockDiagonal Representation::identity() const {
  const auto sizes = block_sizes();
  return BlockDiagonal::identity(sizes);
}

BlockDiagonal Representation::evaluate(std::span<const words::Letter> letters) const {
  if (letters.empty()) return identity();
  BlockDiagonal out = image(letters.front());
  for (std::size_t i = 1; i < letters.size(); ++i) out = out * image(letters[i]);
  return out;
}

}  // namespace anosov
