#pragma once

// Shared helpers for the unit tests: seeded random matrices and comparisons.

#include <random>

#include "anosov/projections.hpp"

namespace testing {

using anosov::scaledlin::Matrix;

inline Matrix gaussian(std::mt19937_64& rng, int rows, int cols = -1) {
  if (cols < 0) cols = rows;
  std::normal_distribution<double> n;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = n(rng);
  }
  return m;
}

/// Random orthogonal matrix from the QR factor of a Gaussian one.
inline Matrix orthogonal(std::mt19937_64& rng, int d) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, d));
  return qr.householderQ() * Matrix::Identity(d, d);
}

inline Matrix special_linear(std::mt19937_64& rng, int d) {
  Matrix m = gaussian(rng, d);
  double det = m.determinant();
  if (det < 0) {
    m.row(0) *= -1;
    det = -det;
  }
  return m / std::pow(det, 1.0 / d);
}

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

inline double linf(const anosov::projections::ChamberVector& a, const anosov::projections::ChamberVector& b) {
  return linf(a.entries(), b.entries());
}

inline double l2(const anosov::projections::ChamberVector& a, const anosov::projections::ChamberVector& b) {
  double out = 0;
  for (int i = 1; i <= a.dim(); ++i) out += (a.at(i) - b.at(i)) * (a.at(i) - b.at(i));
  return std::sqrt(out);
}

inline Matrix diag(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  int i = 0;
  for (double e : entries) m(i, i) = e, ++i;
  return m;
}

}  // namespace testing
