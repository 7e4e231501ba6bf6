#include "anosov/projections.hpp"

#include <algorithm>
#include <cmath>

namespace anosov::projections {

ChamberVector::ChamberVector(std::vector<double> entries, double slack) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i])) throw NumericalError("non-finite chamber vector entry");
    if (i > 0 && entries_[i] > entries_[i - 1] + slack) {
      throw InputError("chamber vector entries must be nonincreasing");
    }
  }
  // Rounding-level inversions are flattened so pairings stay >= 0.
  for (std::size_t i = 1; i < entries_.size(); ++i) entries_[i] = std::min(entries_[i], entries_[i - 1]);
}

double ChamberVector::at(int i) const {
  if (i < 1 || i > dim()) {
    throw InputError("index " + std::to_string(i) + " outside [1, " + std::to_string(dim()) + "]");
  }
  return entries_[static_cast<std::size_t>(i - 1)];
}

double ChamberVector::norm() const {
  double s = 0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

void RootIndex::validate(int d) const {
  if (i < 1 || i >= j || j > d) {
    throw InputError("root " + to_string() + " invalid for dimension " + std::to_string(d));
  }
}

std::string RootIndex::to_string() const {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void validate_theta(const Theta& theta, int d) {
  if (theta.empty()) throw InputError("theta must be nonempty");
  for (int k : theta) RootIndex::simple(k).validate(d);
}

std::vector<RootIndex> sigma_plus(const Theta& theta, int d) {
  validate_theta(theta, d);
  std::vector<RootIndex> out;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      const bool meets = std::any_of(theta.begin(), theta.end(), [&](int k) { return i <= k && k < j; });
      if (meets) out.push_back({i, j});
    }
  }
  return out;
}

Vector canonical_sign(Vector v) {
  if (v.size() == 0) return v;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best)) + 1e-14) best = i;
  }
  if (v(best) < 0) v = -v;
  return v;
}

double projective_distance(const Vector& u, const Vector& v) {
  // |v - (u.v) u| keeps full relative accuracy for nearly equal lines.
  const Vector a = u.normalized();
  const Vector b = v.normalized();
  return std::min(1.0, (b - a.dot(b) * a).norm());
}

CartanVector mu(const ScaledMatrix& g) {
  // Well-conditioned input is read off one SVD; otherwise the lower entries
  // come from the exterior-power tower.
  const auto data = scaledlin::svd(g);
  if (std::isfinite(data.log_sigmas.back()) &&
      data.log_sigmas.back() - data.log_sigmas.front() > std::log(1e-6)) {
    return CartanVector(data.log_sigmas, 1e-7);
  }
  return mu(TrackedMatrix(g));
}
CartanVector mu(const TrackedMatrix& g) { return CartanVector(g.log_singular_values(), 1e-7); }
CartanVector mu(const BlockDiagonal& g) { return CartanVector(g.log_singular_values(), 1e-7); }

LyapunovVector lambda_direct(const ScaledMatrix& g) {
  Eigen::FullPivLU<scaledlin::Matrix> lu(g.entries());
  if (!lu.isInvertible()) throw NumericalError("lambda of a numerically singular matrix");
  return LyapunovVector(scaledlin::eigen_moduli(g), 1e-7);
}
LyapunovVector lambda_direct(const TrackedMatrix& g) { return LyapunovVector(g.log_eigen_moduli(), 1e-7); }
LyapunovVector lambda_direct(const BlockDiagonal& g) { return LyapunovVector(g.log_eigen_moduli(), 1e-7); }

LyapunovVector lambda_by_limit(const ScaledMatrix& g, int k) {
  if (k < 1 || k > 62) throw InputError("doubling steps must be in [1, 62]");
  TrackedMatrix p(g);
  for (int i = 0; i < k; ++i) p = p * p;
  auto v = p.log_singular_values();
  const double n = std::ldexp(1.0, k);
  for (auto& x : v) x /= n;
  return LyapunovVector(std::move(v), 1e-7);
}

double pair_root(const ChamberVector& v, RootIndex r) {
  r.validate(v.dim());
  return v.at(r.i) - v.at(r.j);
}

double pair_fundamental_weight(const ChamberVector& v, int i) {
  if (i < 1 || i > v.dim() - 1) {
    throw InputError("weight index " + std::to_string(i) + " outside [1, " + std::to_string(v.dim() - 1) + "]");
  }
  double partial = 0;
  double total = 0;
  for (int k = 1; k <= v.dim(); ++k) {
    total += v.at(k);
    if (k <= i) partial += v.at(k);
  }
  return partial - (static_cast<double>(i) / v.dim()) * total;
}

RootIndex opposition_star(RootIndex r, int d) {
  r.validate(d);
  return {d + 1 - r.j, d + 1 - r.i};
}

Theta opposition_star(const Theta& theta, int d) {
  validate_theta(theta, d);
  Theta out;
  for (int k : theta) out.push_back(d - k);
  std::sort(out.begin(), out.end());
  return out;
}

double T_theta(const ChamberVector& v, const Theta& theta) {
  validate_theta(theta, v.dim());
  double best = std::numeric_limits<double>::infinity();
  for (int k : theta) best = std::min(best, pair_root(v, RootIndex::simple(k)));
  return std::max(0.0, best);
}

double T_theta(const ScaledMatrix& g, const Theta& theta) { return T_theta(mu(g), theta); }

namespace {

void require_gap(const CartanVector& m, RootIndex r, double tol, const char* what) {
  if (m.dim() < 2) throw InputError(std::string(what) + " needs dimension >= 2");
  const double gap = pair_root(m, r);
  if (!(gap > tol)) {
    throw GapTooSmall(std::string(what) + ": root gap " + std::to_string(gap) +
                      " at or below tolerance " + std::to_string(tol));
  }
}

}  // namespace

Vector xi_plus(const ScaledMatrix& g, double tol) { return xi_plus(BlockDiagonal(g), tol); }

Vector xi_plus(const BlockDiagonal& g, double tol) {
  require_gap(mu(g), {1, 2}, tol, "xi_plus");
  return canonical_sign(g.top_left_singular_vector());
}

Vector xi_minus(const ScaledMatrix& g, double tol) { return xi_minus(BlockDiagonal(g), tol); }

Vector xi_minus(const BlockDiagonal& g, double tol) {
  const int d = g.dim();
  require_gap(mu(g), {d - 1, d}, tol, "xi_minus");
  return canonical_sign(g.hyperplane_normal());
}

}  // namespace anosov::projections
