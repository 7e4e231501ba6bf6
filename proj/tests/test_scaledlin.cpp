#include <doctest.h>

#include <array>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <numbers>
#include <numeric>

#include "anosov/scaledlin.hpp"
#include "support.hpp"

using namespace anosov;
using namespace anosov::scaledlin;
using testing::diag;
using testing::gaussian;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;
using Big2 = std::array<Big, 4>;  // row major 2x2

Big2 big(const Matrix& m) { return {Big(m(0, 0)), Big(m(0, 1)), Big(m(1, 0)), Big(m(1, 1))}; }

Big2 mul(const Big2& x, const Big2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

// log sigma_1 of a 2x2 matrix from sigma^2 = (F + sqrt(F^2 - 4 det^2)) / 2.
Big log_top_sigma(const Big2& m) {
  const Big f = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
  const Big det = m[0] * m[3] - m[1] * m[2];
  return log(sqrt((f + sqrt(f * f - 4 * det * det)) / 2));
}

// Leibniz expansion, an oracle for small determinants.
double leibniz(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  double total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
    }
    double term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < d; ++i) term *= m(i, p[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

double relative(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("scaled product examples") {
  const std::vector<ScaledMatrix> twice{ScaledMatrix::identity(2), ScaledMatrix::identity(2)};
  CHECK(relative(scaled_product(twice).represented(), Matrix::Identity(2, 2)) < 1e-15);

  const ScaledMatrix g(diag({std::exp(3.0), std::exp(-3.0)}));
  const std::vector<ScaledMatrix> factors(20, g);
  const auto p = scaled_product(factors);
  const auto s = svd(p).log_sigmas;
  CHECK(std::abs(s[0] - 60) < 1e-6);
  CHECK(std::abs(s[1] + 60) < 1e-6);
  CHECK_THROWS_AS(scaled_product(std::span<const ScaledMatrix>{}), InputError);
  CHECK_THROWS_AS(ScaledMatrix(Matrix::Zero(2, 2)), NumericalError);
}

TEST_CASE("scaled products match a 50-digit oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix g = testing::special_linear(rng, 2);
    const Matrix h = testing::special_linear(rng, 2);
    std::vector<ScaledMatrix> factors;
    Big2 oracle = big(Matrix::Identity(2, 2));
    for (int i = 0; i < 12; ++i) {
      const Matrix& f = (trial + i) % 3 == 0 ? h : g;
      factors.emplace_back(f);
      oracle = mul(oracle, big(f));
    }
    const Matrix got = scaled_product(factors).represented();
    Matrix expected(2, 2);
    for (int k = 0; k < 4; ++k) expected(k / 2, k % 2) = static_cast<double>(oracle[static_cast<std::size_t>(k)]);
    CHECK(relative(got, expected) < 1e-8);
  }
}

TEST_CASE("long tracked products keep log sigma_1 against the oracle") {
  std::mt19937_64 rng(22);
  const Matrix g = testing::special_linear(rng, 2);
  const Matrix h = testing::special_linear(rng, 2);
  TrackedMatrix t = TrackedMatrix::identity(2);
  Big2 oracle = big(Matrix::Identity(2, 2));
  for (int i = 0; i < 600; ++i) {
    const Matrix& f = i % 5 == 2 ? h : g;
    t = t * TrackedMatrix(ScaledMatrix(f));
    oracle = mul(oracle, big(f));
  }
  const double expected = static_cast<double>(log_top_sigma(oracle));
  CHECK(expected > 50);
  CHECK(std::abs(t.log_singular_values()[0] - expected) < 1e-8 * expected);
  CHECK(std::abs(t.log_singular_values()[1] + expected) < 1e-8 * expected);
}

TEST_CASE("svd examples") {
  const auto id = svd(ScaledMatrix::identity(2)).log_sigmas;
  CHECK(std::abs(id[0]) < 1e-15);
  CHECK(std::abs(id[1]) < 1e-15);
  Matrix u(2, 2);
  u << 1, 1, 0, 1;
  const auto s = svd(ScaledMatrix(u)).log_sigmas;
  const double golden = std::log((1 + std::sqrt(5.0)) / 2);
  CHECK(std::abs(s[0] - golden) < 1e-14);
  CHECK(std::abs(s[1] - std::log((std::sqrt(5.0) - 1) / 2)) < 1e-14);
  CHECK(std::abs(s[0] - std::asinh(0.5)) < 1e-14);
  const auto d = svd(ScaledMatrix(diag({2, 1, 0.5}))).log_sigmas;
  CHECK(std::abs(d[0] - std::log(2.0)) < 1e-14);
  CHECK(std::abs(d[1]) < 1e-14);
  CHECK(std::abs(d[2] + std::log(2.0)) < 1e-14);
}

TEST_CASE("eigen moduli examples") {
  Matrix r(2, 2);
  const double c = std::cos(std::numbers::pi / 4);
  r << c, -c, c, c;
  auto m = eigen_moduli(ScaledMatrix(r));
  CHECK(std::abs(m[0]) < 1e-14);
  CHECK(std::abs(m[1]) < 1e-14);
  Matrix u(2, 2);
  u << 1, 1, 0, 1;
  m = eigen_moduli(ScaledMatrix(u));
  CHECK(std::abs(m[0]) < 1e-14);
  CHECK(std::abs(m[1]) < 1e-14);
  m = eigen_moduli(ScaledMatrix(diag({3, 1.0 / 3})));
  CHECK(std::abs(m[0] - std::log(3.0)) < 1e-14);
  CHECK(std::abs(m[1] + std::log(3.0)) < 1e-14);
}

TEST_CASE("power_scaled") {
  std::mt19937_64 rng(23);
  const ScaledMatrix g(gaussian(rng, 3));
  CHECK(relative(power_scaled(g, 1).represented(), g.represented()) < 1e-15);
  const auto p = power_scaled(ScaledMatrix(diag({2, 0.5})), 30).represented();
  CHECK(relative(p, diag({std::pow(2.0, 30), std::pow(2.0, -30)})) < 1e-14);
  const ScaledMatrix s(testing::special_linear(rng, 3));
  const std::vector<ScaledMatrix> copies(16, s);
  CHECK(relative(power_scaled(s, 16).represented(), scaled_product(copies).represented()) < 1e-8);
  CHECK_THROWS_AS(power_scaled(s, 0), InputError);
}

TEST_CASE("singular value properties on random matrices") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 3;
    const Matrix m = gaussian(rng, d);
    const ScaledMatrix g(m);
    const auto s = svd(g).log_sigmas;
    const auto si = svd(g.inverse()).log_sigmas;
    for (int i = 0; i < d; ++i) {
      CHECK(std::abs(s[static_cast<std::size_t>(i)] + si[static_cast<std::size_t>(d - 1 - i)]) < 1e-9);
    }
    CHECK(s.front() >= eigen_moduli(g).front() - 1e-12);
    const double total = std::accumulate(s.begin(), s.end(), 0.0);
    CHECK(std::abs(total - std::log(std::abs(leibniz(m)))) < 1e-9);
    CHECK(std::abs(elimination_determinant<double>(m) - leibniz(m)) < 1e-10 * (1 + std::abs(leibniz(m))));
  }
}

TEST_CASE("binomials and subsets") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(4, 5) == 0);
  CHECK_THROWS_AS(binomial(40, 20), ResourceCapExceeded);
  const auto s = k_subsets(5, 3);
  CHECK(s.size() == 10);
  CHECK(s.front() == std::vector<int>{0, 1, 2});
  CHECK(s.back() == std::vector<int>{2, 3, 4});
}

TEST_CASE("compound matrices: minors and multiplicativity") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 3 + trial % 3;
    const int k = 1 + trial % (d - 1);
    const Matrix g = gaussian(rng, d);
    const Matrix h = gaussian(rng, d);
    const Matrix cg = compound_matrix<double>(g, k);
    const auto subsets = k_subsets(d, k);
    for (std::size_t a = 0; a < subsets.size(); ++a) {
      for (std::size_t b = 0; b < subsets.size(); ++b) {
        Matrix sub(k, k);
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            sub(i, j) = g(subsets[a][static_cast<std::size_t>(i)], subsets[b][static_cast<std::size_t>(j)]);
          }
        }
        CHECK(std::abs(cg(static_cast<long>(a), static_cast<long>(b)) - leibniz(sub)) < 1e-10);
      }
    }
    const Matrix lhs = compound_matrix<double>(g * h, k);
    const Matrix rhs = cg * compound_matrix<double>(h, k);
    CHECK(relative(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("tracked matrices") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 3;
    const Matrix g = gaussian(rng, d);
    const Matrix h = gaussian(rng, d);
    const TrackedMatrix tg(ScaledMatrix{g});
    const TrackedMatrix th(ScaledMatrix{h});
    const auto p = tg * th;
    CHECK(std::abs(p.log_abs_det() - std::log(std::abs((g * h).determinant()))) < 1e-9);
    for (int k = 1; k < d; ++k) {
      CHECK(relative(p.exterior(k).represented(), compound_matrix<double>(g * h, k)) < 1e-9);
    }
    const auto direct = svd(ScaledMatrix(Matrix(g * h))).log_sigmas;
    CHECK(testing::linf(p.log_singular_values(), direct) < 1e-9);
    const auto inv = tg.inverse().log_singular_values();
    const auto fwd = tg.log_singular_values();
    for (int i = 0; i < d; ++i) {
      CHECK(std::abs(inv[static_cast<std::size_t>(i)] + fwd[static_cast<std::size_t>(d - 1 - i)]) < 1e-9);
    }
    // One dense SVD resolves log sigma_i to about eps * sigma_1 / sigma_i.
    const auto pw = tg.power(5).log_singular_values();
    const auto pd = svd(ScaledMatrix(Matrix(g * g * g * g * g))).log_sigmas;
    for (int i = 0; i < d; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (pd[k] - pd[0] > std::log(1e-4)) CHECK(std::abs(pw[k] - pd[k]) < 1e-8);
    }
  }
}

TEST_CASE("tracked route resolves the whole spectrum of a long product") {
  // diag(e^3, 1, e^-3)^500: entries span 3000 in log scale.
  const TrackedMatrix t(ScaledMatrix(diag({std::exp(3.0), 1, std::exp(-3.0)})));
  const auto s = t.power(500).log_singular_values();
  CHECK(std::abs(s[0] - 1500) < 1e-9);
  CHECK(std::abs(s[1]) < 1e-9);
  CHECK(std::abs(s[2] + 1500) < 1e-9);
  const auto e = t.power(500).log_eigen_moduli();
  CHECK(std::abs(e[1]) < 1e-9);
}

TEST_CASE("block diagonal matrices") {
  std::mt19937_64 rng(27);
  const Matrix g = gaussian(rng, 2);
  const Matrix h = gaussian(rng, 3);
  const BlockDiagonal b({TrackedMatrix(ScaledMatrix(g)), TrackedMatrix(ScaledMatrix(h))});
  CHECK(b.dim() == 5);
  CHECK(b.block_sizes() == std::vector<int>{2, 3});
  Matrix full = Matrix::Zero(5, 5);
  full.topLeftCorner(2, 2) = g;
  full.bottomRightCorner(3, 3) = h;
  CHECK(testing::linf(b.log_singular_values(), svd(ScaledMatrix(full)).log_sigmas) < 1e-9);
  CHECK(relative(b.dense().represented(), full) < 1e-12);
  const auto sq = (b * b).dense().represented();
  CHECK(relative(sq, full * full) < 1e-10);
  const auto id = (b * b.inverse()).dense().represented();
  CHECK(relative(id, Matrix::Identity(5, 5)) < 1e-9);
  const BlockDiagonal other(TrackedMatrix(ScaledMatrix(gaussian(rng, 5))));
  CHECK_THROWS_AS(b * other, DimensionMismatch);
}
