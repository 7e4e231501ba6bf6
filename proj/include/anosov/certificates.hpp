#pragma once

// Finite-depth certificates for Anosov-type conditions. Every "for all gamma"
// quantifier is truncated at a word length L and evaluated exhaustively.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anosov/projections.hpp"
#include "anosov/representation.hpp"
#include "anosov/words.hpp"

namespace anosov::certificates {

using projections::RootIndex;
using projections::Theta;
using scaledlin::BlockDiagonal;

inline constexpr double kProximalTolerance = 1e-8;
inline constexpr double kDefaultDominationMargin = 1e-6;
inline constexpr double kNoCap = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Enumeration engine

struct EnumerationOptions {
  /// Worker threads; results do not depend on this.
  int workers = 1;
  /// Guard on the number of words visited.
  std::uint64_t cap = words::kDefaultEnumerationCap;
  bool cyclically_reduced_only = false;
};

/// Visits every nonempty reduced word of length <= L together with its image
/// under each representation. Words sharing a first letter are visited in
/// lexicographic order by one worker; `slot` is that first letter's code, so a
/// visitor that writes only to per-slot state is race free.
using ProductVisitor = std::function<void(int slot, std::span<const words::Letter> word,
                                          std::span<const BlockDiagonal> images)>;

void for_each_product(std::span<const Representation* const> reps, int L,
                      const EnumerationOptions& options, const ProductVisitor& visit);

/// Number of nonempty reduced words of length <= L.
std::uint64_t ball_size(const words::Alphabet& alphabet, int L);

// ---------------------------------------------------------------------------
// Lower envelope fit

struct EnvelopeFit {
  double c = 0;
  double C = 0;
};

/// Fits y >= c x - C with c >= 0 from the lower convex hull of the points:
/// the steepest hull edge whose intercept stays <= cap gives c, and C is the
/// least intercept valid for every point.
EnvelopeFit fit_lower_bound(std::span<const std::pair<double, double>> points, double cap = kNoCap);

// ---------------------------------------------------------------------------
// Gap certificate

enum class GapMode { WordLength, CartanNorm };

struct GapOptions {
  EnumerationOptions enumeration;
  GapMode mode = GapMode::WordLength;
  /// Intercept cap for the fit; unset means the one-letter scale, the largest
  /// coordinate among the fitted points of length-1 words.
  std::optional<double> cap;
};

struct GapCertificate {
  Theta theta;
  int depth = 0;
  GapMode mode = GapMode::WordLength;
  /// m[n] = min over |gamma| = n of T_theta(mu(rho(gamma))); m[0] = 0.
  std::vector<double> per_length_min;
  /// An argmin word for every n >= 1 (index 0 is the empty word).
  std::vector<words::ReducedWord> witnesses;
  EnvelopeFit fit;
  double cap = kNoCap;
  bool passed() const { return fit.c > 0; }
};

GapCertificate certify_gap(const Representation& rep, const Theta& theta, int L,
                           const GapOptions& options = {});

// ---------------------------------------------------------------------------
// Lower-CLI reports

struct KappaPoint {
  double kappa;
  double kappa_prime;
};

/// max over 0 <= n <= n+m <= N of kappa*m - (x[n+m] - x[n]); also reports an argmax (n, m).
double cli_kappa_prime(std::span<const double> x, double kappa, int* n_out = nullptr, int* m_out = nullptr);

struct CliOptions {
  double kappa0 = 0.1;
  double kappa_prime0 = 5;
  /// Curve sample points; empty means 17 points evenly spaced on [0, 2*kappa0].
  std::vector<double> grid;
};

struct CliReport {
  std::string ray_id;
  RootIndex root;
  int window = 0;
  /// x[n] = <root, mu(rho(gamma_n))>, n = 0..N.
  std::vector<double> x;
  std::vector<KappaPoint> kappa_curve;
  double kappa0 = 0;
  double kappa_prime0 = 0;
  double kappa_prime_at_threshold = 0;
  /// Start and length of the worst increment at kappa0.
  int witness_n = 0;
  int witness_m = 0;
  bool passed() const { return kappa_prime_at_threshold <= kappa_prime0; }
};

/// Depth-N prefix images along a ray, gamma_0 .. gamma_N.
std::vector<BlockDiagonal> ray_images(const Representation& rep, const words::Ray& ray, int N);

std::vector<CliReport> certify_cli(const Representation& rep, const words::Ray& ray,
                                   const std::vector<RootIndex>& roots, int N, const CliOptions& options = {});

/// Worst report across rays and roots; the aggregated (kappa0, kappa'0) verdict.
struct CliAggregate {
  double kappa0 = 0;
  double kappa_prime0 = 0;
  double worst_kappa_prime = 0;
  std::string worst_ray;
  RootIndex worst_root;
  std::size_t reports = 0;
  bool passed() const { return worst_kappa_prime <= kappa_prime0; }
};

CliAggregate aggregate_cli(std::span<const CliReport> reports);

// ---------------------------------------------------------------------------
// Gap summation

struct GapSummation {
  std::string ray_id;
  Theta theta;
  int window = 0;
  /// T[n] = T_theta(rho(gamma_n)), n = 0..N.
  std::vector<double> T;
  /// S[n0] = sum_{n0 <= n <= N} exp(-T[n]); nonincreasing.
  std::vector<double> partial_sums;
};

GapSummation gap_summation(const Representation& rep, const words::Ray& ray, const Theta& theta, int N);

// ---------------------------------------------------------------------------
// Proximality

struct ProximalReport {
  Theta theta;
  /// <alpha, lambda(g)> per alpha in theta.
  std::vector<double> lambda_gaps;
  bool proximal = false;
  /// (n, min_alpha <alpha, mu(g^n)> - 2 log n) for n = 1, 2, 4, ..., <= n_max.
  std::vector<std::pair<std::uint64_t, double>> diagnostic;
  /// Advisory: the diagnostic increased over its last half.
  bool diagnostic_increasing = false;
};

ProximalReport certify_proximal(const BlockDiagonal& g, const Theta& theta, std::uint64_t n_max = 1U << 20);
inline ProximalReport certify_proximal(const scaledlin::ScaledMatrix& g, const Theta& theta,
                                       std::uint64_t n_max = 1U << 20) {
  return certify_proximal(BlockDiagonal(g), theta, n_max);
}

// ---------------------------------------------------------------------------
// Uniform domination

struct DominationOptions {
  EnumerationOptions enumeration;
  double margin = kDefaultDominationMargin;
  double denominator_tolerance = kProximalTolerance;
};

struct DominationReport {
  int weight = 1;
  int depth = 0;
  double worst_ratio = 0;
  words::ReducedWord witness;
  /// Cyclically reduced words where <omega, lambda(rho_L(w))> <= tolerance.
  std::uint64_t flagged = 0;
  std::optional<words::ReducedWord> first_flagged;
  std::uint64_t words_checked = 0;
  double margin = kDefaultDominationMargin;
  bool dominated() const { return flagged == 0 && worst_ratio < 1 - margin; }
};

DominationReport certify_domination(const Representation& rep_L, const Representation& rep_R, int weight, int L,
                                    const DominationOptions& options = {});

}  // namespace anosov::certificates
