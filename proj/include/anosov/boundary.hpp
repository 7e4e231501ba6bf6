#pragma once

// Boundary maps for theta = {epsilon_1 - epsilon_2}: xi^+ is read from the top
// left-singular line of rho(gamma_n) along a ray, xi^- from the hyperplane of
// its top d-1 left-singular directions.

#include <optional>
#include <string>
#include <vector>

#include "anosov/projections.hpp"
#include "anosov/representation.hpp"
#include "anosov/words.hpp"

namespace anosov::boundary {

using scaledlin::Vector;

inline constexpr double kDedupTolerance = 1e-7;

/// exp(2 delta) with delta the largest ||mu|| over generator images.
double estimate_cm(const Representation& rep);

struct LimitOptions {
  /// First depth tried; the depth doubles until the budget is met.
  int start_depth = 16;
  int max_depth = 1 << 20;
  double gap_tolerance = projections::kDefaultGapTolerance;
};

struct LimitPoint {
  std::string ray_id;
  std::optional<words::Ray> ray;
  Vector line;
  /// Absent when only xi^+ met the target (a half-flag).
  std::optional<Vector> normal;
  int depth = 0;
  double error_budget = 0;
  double normal_budget = 0;
  double c_m = 0;
  /// max over steps of d(Xi(gamma_n), Xi(gamma_{n+1})) / (C_M exp(-T(gamma_n))).
  double max_cauchy_ratio = 0;
};

/// Tail estimate C_M * sum_{n >= N} exp(-T[n]) from T[0..N], extrapolating the
/// last two dyadic windows as a power law. Infinite when no decay is visible.
double tail_budget(std::span<const double> T, double c_m);

/// Throws NoConvergence when the budget stays above epsilon up to max_depth.
LimitPoint limit_point(const Representation& rep, const words::Ray& ray, double epsilon,
                       const LimitOptions& options = {});

struct RayFamily {
  enum class Kind { EventuallyPeriodic, Random };
  Kind kind = Kind::EventuallyPeriodic;
  int max_prefix = 0;
  int max_period = 3;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  std::vector<words::Ray> rays(const words::Alphabet& alphabet) const;
  std::string describe() const;
};

struct RayFailure {
  std::string ray_id;
  double budget;
  std::string message;
};

struct LimitSetSample {
  std::vector<LimitPoint> points;
  std::vector<RayFailure> failures;
  std::size_t duplicates_removed = 0;
  std::string representation_hash;
  std::string family;
  double epsilon = 0;
};

struct SampleOptions {
  LimitOptions limit;
  double dedup_tolerance = kDedupTolerance;
  int workers = 1;
};

/// Points are sorted by ray id; rays that do not converge are listed in failures.
LimitSetSample sample_limit_set(const Representation& rep, std::span<const words::Ray> rays, double epsilon,
                                const SampleOptions& options = {});
LimitSetSample sample_limit_set(const Representation& rep, const RayFamily& family, double epsilon,
                                const SampleOptions& options = {});

struct TransversalityReport {
  /// min |line(eta) . normal(eta')| over pairs at tree distance >= separation.
  double margin = 1;
  std::string margin_line_ray;
  std::string margin_normal_ray;
  /// max |line(eta) . normal(eta)|.
  double compatibility_defect = 0;
  std::size_t pairs = 0;
  bool vacuous() const { return pairs == 0; }
};

/// Tree distance between rays is exp(-Gromov product).
TransversalityReport audit_transversality(const LimitSetSample& sample, double separation = 0,
                                          std::size_t horizon = 256);

struct DynamicsReport {
  std::string word;
  double distance = 0;
  double eigen_gap = 0;
  int depth = 0;
  bool passed = false;
};

/// Compares the limit point of w^infinity with the top eigenline of rho(w).
/// Throws NotProximal when the (1,2) eigenvalue gap of rho(w) is below tolerance.
DynamicsReport audit_dynamics(const Representation& rep, const words::ReducedWord& w, double epsilon,
                              const LimitOptions& options = {});

/// CSV rows: ray_id, n0, error_budget, line coordinates, normal coordinates.
/// With `chart` set, the line is written in the affine chart dividing by
/// coordinate `chart` (1-based) instead, and normals are omitted.
std::string to_csv(const LimitSetSample& sample, std::optional<int> chart = std::nullopt);

}  // namespace anosov::boundary
