#pragma once

#include <span>
#include <vector>

#include "anosov/scaledlin.hpp"
#include "anosov/words.hpp"

namespace anosov {

/// A homomorphism rho: F_r -> GL_d(R), fixed by the images of a_1..a_r.
/// Images are stored block-diagonally; a single block is the generic case.
class Representation {
 public:
  /// Throws InputError when a generator is numerically singular, DimensionMismatch
  /// when generators disagree in block structure.
  Representation(words::Alphabet alphabet, std::vector<scaledlin::BlockDiagonal> generators);

  /// Dense generators. A nonempty `blocks` partition splits each generator into
  /// diagonal blocks; off-block entries must vanish.
  static Representation from_matrices(int rank, const std::vector<scaledlin::Matrix>& generators,
                                      const std::vector<int>& blocks = {});

  /// Every generator maps to the d x d identity.
  static Representation trivial(int rank, int d);

  const words::Alphabet& alphabet() const { return alphabet_; }
  int rank() const { return alphabet_.rank(); }
  int dimension() const { return dimension_; }
  std::vector<int> block_sizes() const { return images_.front().block_sizes(); }

  /// Image of a letter; inverse letters map to inverse matrices.
  const scaledlin::BlockDiagonal& image(words::Letter l) const;

  /// Dense matrices of a_1..a_r, exactly as given to from_matrices.
  const std::vector<scaledlin::Matrix>& generator_matrices() const { return generators_; }

  /// rho(w) as a tracked product in word order; the empty word maps to the identity.
  scaledlin::BlockDiagonal evaluate(std::span<const words::Letter> letters) const;
  scaledlin::BlockDiagonal identity() const;

 private:
  words::Alphabet alphabet_;
  int dimension_ = 0;
  std::vector<scaledlin::BlockDiagonal> images_;  // indexed by letter code
  std::vector<scaledlin::Matrix> generators_;
};

inline scaledlin::BlockDiagonal evaluate_word(const Representation& rep, const words::ReducedWord& w) {
  return rep.evaluate(w.letters());
}

/// evaluate_word as a single scaled matrix.
inline scaledlin::ScaledMatrix evaluate_word_dense(const Representation& rep, const words::ReducedWord& w) {
  return rep.evaluate(w.letters()).dense();
}

}  // namespace anosov
