#include "anosov/reductions.hpp"

#include "anosov/projections.hpp"

namespace anosov::reductions {

using scaledlin::Matrix;
using scaledlin::TrackedMatrix;

ExteriorIndexing::ExteriorIndexing(int d_, int k_) : d(d_), k(k_) {
  if (k < 1 || k > d) throw InputError("exterior degree must be in [1, d]");
  scaledlin::binomial(d, k);
  subsets = scaledlin::k_subsets(d, k);
  for (auto& s : subsets) {
    for (auto& i : s) ++i;
  }
}

ScaledMatrix exterior_power(const ScaledMatrix& g, int k) {
  if (k < 1 || k > g.dim()) throw InputError("exterior degree must be in [1, d]");
  if (k == 1) return g;
  scaledlin::binomial(g.dim(), k);
  return ScaledMatrix(scaledlin::compound_matrix<double>(g.entries(), k), k * g.log_scale());
}

std::pair<double, double> pair_after_exterior(const ScaledMatrix& g, int k) {
  if (k < 1 || k > g.dim() - 1) throw InputError("exterior degree must be in [1, d-1]");
  const auto lifted = projections::pair_root(projections::mu(exterior_power(g, k)), {1, 2});
  const auto source = projections::pair_root(projections::mu(g), projections::RootIndex::simple(k));
  return {lifted, source};
}

BlockDiagonal direct_sum(const BlockDiagonal& left, const BlockDiagonal& right) {
  std::vector<TrackedMatrix> blocks = left.blocks();
  blocks.insert(blocks.end(), right.blocks().begin(), right.blocks().end());
  return BlockDiagonal(std::move(blocks));
}

Representation lift_exterior(const Representation& rep, int k) {
  if (k < 1 || k > rep.dimension()) throw InputError("exterior degree must be in [1, d]");
  if (k == 1) return rep;
  std::vector<BlockDiagonal> gens;
  for (int i = 0; i < rep.rank(); ++i) {
    const ScaledMatrix g = rep.image(words::Letter::generator(i)).dense();
    gens.emplace_back(exterior_power(g, k));
  }
  return Representation(rep.alphabet(), std::move(gens));
}

Representation lift_direct_sum(const Representation& first, const Representation& second) {
  if (first.alphabet() != second.alphabet()) throw InputError("direct sum needs representations of the same rank");
  std::vector<BlockDiagonal> gens;
  for (int i = 0; i < first.rank(); ++i) {
    const auto l = words::Letter::generator(i);
    gens.push_back(direct_sum(first.image(l), second.image(l)));
  }
  return Representation(first.alphabet(), std::move(gens));
}

Representation lift_corner(const Representation& rep, int D) {
  if (D < rep.dimension()) throw InputError("corner target dimension is smaller than the source");
  if (D == rep.dimension()) return rep;
  std::vector<Matrix> gens;
  for (const auto& g : rep.generator_matrices()) {
    Matrix m = Matrix::Identity(D, D);
    m.topLeftCorner(g.rows(), g.cols()) = g;
    gens.push_back(std::move(m));
  }
  auto blocks = rep.block_sizes();
  blocks.push_back(D - rep.dimension());
  return Representation::from_matrices(rep.rank(), gens, blocks);
}

}  // namespace anosov::reductions
