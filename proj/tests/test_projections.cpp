#include <doctest.h>

#include <numbers>

#include "anosov/projections.hpp"
#include "support.hpp"

using namespace anosov;
using namespace anosov::projections;
using scaledlin::Matrix;
using testing::diag;
using testing::gaussian;

namespace {

Matrix unipotent(double n) {
  Matrix u(2, 2);
  u << 1, n, 0, 1;
  return u;
}

// Eigen decomposition oracle: real eigenvectors sorted by decreasing modulus.
std::vector<Vector> real_eigenvectors(const Matrix& g) {
  Eigen::EigenSolver<Matrix> es(g);
  std::vector<std::pair<double, Vector>> pairs;
  for (int i = 0; i < g.rows(); ++i) {
    pairs.emplace_back(std::abs(es.eigenvalues()(i)), es.eigenvectors().col(i).real().normalized());
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Vector> out;
  for (auto& p : pairs) out.push_back(p.second);
  return out;
}

/// Symmetric with distinct positive eigenvalues: proximal with real eigenbasis.
Matrix random_proximal(std::mt19937_64& rng, int d) {
  const Matrix k = testing::orthogonal(rng, d);
  Matrix s = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) s(i, i) = std::exp(1.5 * (d - 1 - 2 * i) / 2.0);
  const Matrix h = testing::special_linear(rng, d);
  return h * k * s * k.transpose() * h.inverse();
}

}  // namespace

TEST_CASE("chamber vectors") {
  CHECK_THROWS_AS(CartanVector({1, 2}), InputError);
  CHECK_THROWS_AS(CartanVector({std::nan(""), 0}), NumericalError);
  const CartanVector v({2, 1, -3});
  CHECK(v.at(1) == 2);
  CHECK(v.at(3) == -3);
  CHECK(v.norm() == doctest::Approx(std::sqrt(14.0)));
  CHECK_THROWS(v.at(4));
}

TEST_CASE("mu examples") {
  const auto zero = mu(ScaledMatrix::identity(3));
  for (double x : zero.entries()) CHECK(std::abs(x) < 1e-15);
  const auto m = mu(ScaledMatrix(unipotent(2)));
  CHECK(std::abs(m.at(1) - std::asinh(1.0)) < 1e-14);
  CHECK(std::abs(m.at(1) - 0.881373587) < 1e-9);
  CHECK(std::abs(m.at(2) + std::asinh(1.0)) < 1e-14);
  const auto e = mu(ScaledMatrix(diag({std::exp(2.0), std::exp(1.0), std::exp(-3.0)})));
  CHECK(std::abs(e.at(1) - 2) < 1e-14);
  CHECK(std::abs(e.at(2) - 1) < 1e-14);
  CHECK(std::abs(e.at(3) + 3) < 1e-14);
}

TEST_CASE("unipotent growth follows asinh(n/2)") {
  for (double n : {1.0, 3.0, 10.0, 1e3, 1e5, 1e6, 1e8}) {
    const auto m = mu(ScaledMatrix(unipotent(n)));
    CHECK(std::abs(m.at(1) - std::asinh(n / 2)) < 1e-9);
    CHECK(std::abs(m.at(2) + std::asinh(n / 2)) < 1e-9);
  }
}

TEST_CASE("subadditivity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 2 + trial % 3;
    const ScaledMatrix g1(gaussian(rng, d));
    const ScaledMatrix g2(gaussian(rng, d));
    const ScaledMatrix g3(gaussian(rng, d));
    CHECK(testing::l2(mu(g1 * g2), mu(g1)) <= mu(g2).norm() + 1e-6);
    CHECK(testing::l2(mu(g1 * g2 * g3), mu(g2)) <= mu(g1).norm() + mu(g3).norm() + 1e-6);
  }
}

TEST_CASE("opposition identity for mu and lambda") {
  std::mt19937_64 rng(32);
  CHECK(opposition_star(RootIndex{1, 2}, 4) == RootIndex{3, 4});
  CHECK(opposition_star(RootIndex{2, 3}, 4) == RootIndex{2, 3});
  CHECK(opposition_star(RootIndex{1, 3}, 6) == RootIndex{4, 6});
  CHECK(opposition_star(Theta{1, 3}, 5) == Theta{2, 4});
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 4;
    const ScaledMatrix g(gaussian(rng, d));
    const auto gi = g.inverse();
    for (const auto& r : sigma_plus(Theta{1}, d)) {
      CHECK(std::abs(pair_root(mu(g), r) - pair_root(mu(gi), opposition_star(r, d))) < 1e-8);
      CHECK(std::abs(pair_root(lambda_direct(g), r) - pair_root(lambda_direct(gi), opposition_star(r, d))) < 1e-8);
    }
  }
}

TEST_CASE("mu is bi-K-invariant") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3;
    const Matrix g = gaussian(rng, d);
    const Matrix kg = testing::orthogonal(rng, d) * g * testing::orthogonal(rng, d);
    CHECK(testing::linf(mu(ScaledMatrix(g)), mu(ScaledMatrix(kg))) < 1e-12);
  }
}

TEST_CASE("lambda examples and conjugation invariance") {
  const auto flat = lambda_direct(ScaledMatrix(unipotent(1)));
  for (double x : flat.entries()) CHECK(std::abs(x) < 1e-15);
  const auto l = lambda_direct(ScaledMatrix(diag({2, 1, 0.5})));
  CHECK(std::abs(l.at(1) - std::log(2.0)) < 1e-14);
  CHECK(std::abs(l.at(2)) < 1e-14);
  CHECK(std::abs(l.at(3) + std::log(2.0)) < 1e-14);
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const Matrix g = gaussian(rng, d);
    const Matrix h = testing::special_linear(rng, d);
    CHECK(testing::linf(lambda_direct(ScaledMatrix(g)), lambda_direct(ScaledMatrix(Matrix(h * g * h.inverse())))) <
          1e-8);
  }
}

TEST_CASE("lambda as a limit") {
  const auto d = lambda_by_limit(ScaledMatrix(diag({2, 0.5})), 7);
  CHECK(std::abs(d.at(1) - std::log(2.0)) < 1e-13);
  const auto u = lambda_by_limit(ScaledMatrix(unipotent(1)), 20);
  // u^(2^20) = [[1, 2^20], [0, 1]], so mu_1 / 2^20 = asinh(2^19) / 2^20.
  CHECK(std::abs(u.at(1)) < 2e-5);
  CHECK(std::abs(u.at(1) - std::asinh(std::ldexp(1.0, 19)) / std::ldexp(1.0, 20)) < 1e-12);
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const ScaledMatrix g(testing::special_linear(rng, 2 + trial % 2));
    CHECK(testing::linf(lambda_by_limit(g, 20), lambda_direct(g)) < 1e-5);
  }
  // For g = V diag(e^l, e^-l) V^-1, |mu_1(g^n) - n l| <= log cond(V), which
  // bounds the error at n = 2^20 for every hyperbolic sample.
  int well_conditioned = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix m = testing::special_linear(rng, 2);
    const ScaledMatrix g(m);
    if (std::abs(m.trace()) <= 2.05) continue;
    Eigen::EigenSolver<Matrix> es(m);
    const Matrix V = es.eigenvectors().real();
    const Eigen::JacobiSVD<Matrix> sv(V);
    const double cond = sv.singularValues()(0) / sv.singularValues()(1);
    const double err = testing::linf(lambda_by_limit(g, 20), lambda_direct(g));
    CHECK(err <= std::log(cond) / std::ldexp(1.0, 20) + 1e-12);
    if (cond <= 2) {
      CHECK(err < 1e-6);
      ++well_conditioned;
    }
  }
  CHECK(well_conditioned >= 10);
}

TEST_CASE("root and weight pairings") {
  const CartanVector v({2, 1, -3});
  CHECK(pair_root(v, {1, 2}) == 1);
  CHECK(pair_root(v, {2, 3}) == 4);
  CHECK(pair_root(CartanVector({0, 0, 0}), {1, 3}) == 0);
  CHECK(pair_fundamental_weight(CartanVector({1, 0, -1}), 1) == doctest::Approx(1));
  CHECK(pair_fundamental_weight(v, 2) == doctest::Approx(3));
  CHECK(std::abs(pair_fundamental_weight(CartanVector({1, 1, 1}), 1)) < 1e-15);
  CHECK_THROWS_AS(RootIndex({2, 2}).validate(3), InputError);
  CHECK_THROWS_AS(validate_theta({}, 3), InputError);
  CHECK_THROWS_AS(validate_theta({3}, 3), InputError);
  const auto s = sigma_plus({2}, 4);
  CHECK(s.size() == 4);  // (1,3) (1,4) (2,3) (2,4)
  for (const auto& r : s) CHECK((r.i <= 2 && r.j >= 3));
}

TEST_CASE("T_theta") {
  CHECK(T_theta(ScaledMatrix::identity(3), {1, 2}) == doctest::Approx(0).epsilon(1e-12));
  CHECK(T_theta(ScaledMatrix(diag({std::exp(3.0), std::exp(1.0), std::exp(-4.0)})), {1, 2}) ==
        doctest::Approx(2));
  CHECK(std::abs(T_theta(ScaledMatrix(diag({std::exp(3.0), std::exp(3.0), 1})), {1})) < 1e-12);
}

TEST_CASE("attracting flags") {
  const auto x = xi_plus(ScaledMatrix(diag({2, 1})));
  CHECK(std::abs(std::abs(x(0)) - 1) < 1e-14);
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  const auto y = xi_plus(ScaledMatrix(Matrix(rot * diag({2, 1}))));
  CHECK(std::abs(std::abs(y(1)) - 1) < 1e-14);
  const auto n = xi_minus(ScaledMatrix(diag({2, 1, 0.5})));
  CHECK(std::abs(std::abs(n(2)) - 1) < 1e-14);
  const auto rn = xi_minus(ScaledMatrix(Matrix(rot * diag({2, 0.5}))));
  CHECK(std::abs(std::abs(rn(0)) - 1) < 1e-14);
  CHECK_THROWS_AS(xi_plus(ScaledMatrix::identity(2)), GapTooSmall);
  CHECK_THROWS_AS(xi_minus(ScaledMatrix::identity(3)), GapTooSmall);
  // Sign convention is deterministic.
  const auto c = canonical_sign(-x);
  CHECK(c.maxCoeff() == doctest::Approx(1));
}

TEST_CASE("projective distance") {
  Vector a(2);
  a << 1, 0;
  Vector b(2);
  b << 1, 1;
  CHECK(projective_distance(a, b) == doctest::Approx(std::sqrt(0.5)));
  CHECK(projective_distance(a, -a) == doctest::Approx(0).epsilon(1e-15));
  Vector tiny(2);
  tiny << 1, 1e-12;
  CHECK(projective_distance(a, tiny) == doctest::Approx(1e-12).epsilon(1e-6));
}

TEST_CASE("flags of powers converge to eigen data") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const Matrix g = random_proximal(rng, d);
    const auto eig = real_eigenvectors(g);
    double first = 0;
    double last = 0;
    for (int n = 1; n <= 8; ++n) {
      const BlockDiagonal p(TrackedMatrix(ScaledMatrix(g)).power(static_cast<std::uint64_t>(4 * n)));
      const auto line = xi_plus(p);
      last = projective_distance(line, eig[0]);
      if (n == 1) first = last;
      // The hyperplane of g^n tends to the span of the top d-1 eigenvectors.
      const auto normal = xi_minus(p);
      if (n == 8) {
        for (int i = 0; i + 1 < d; ++i) CHECK(std::abs(normal.dot(eig[static_cast<std::size_t>(i)])) < 1e-6);
      }
    }
    CHECK(last <= first);
    CHECK(last < 1e-6);
  }
}
