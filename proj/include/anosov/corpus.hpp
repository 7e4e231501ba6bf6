#pragma once

// Built-in representations with known behaviour, and their expected verdicts.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "anosov/certificates.hpp"
#include "anosov/io.hpp"
#include "anosov/representation.hpp"

namespace anosov::corpus {

using scaledlin::Matrix;

/// a -> diag(e^s, e^-s), b -> R_phi diag(e^s, e^-s) R_phi^-1.
/// Throws InputError unless s > 0 and 0 < phi < pi/2.
Representation schottky(double s, double phi);

/// Fixed points of the hyperbolic A in the chart x = v1 / v2, attracting first.
inline constexpr double kAttractingPoint = 3.0 / 16;
inline constexpr double kRepellingPoint = -3.0 / 16;
/// log of the larger eigenvalue of A.
inline constexpr double kLogEigenvalue = 3;
/// U_- = [-1/4, -1/8] and U_+ = [1/8, 1/4] in the same chart.
inline constexpr double kUMinusLo = -0.25;
inline constexpr double kUMinusHi = -0.125;
inline constexpr double kUPlusLo = 0.125;
inline constexpr double kUPlusHi = 0.25;

struct ChoiceVerification {
  std::size_t grid_points = 0;
  /// max of the projective derivative 1 / |A v|^2 over unit v outside U_-.
  double worst_contraction = 0;
  /// Whether every grid point outside U_- lands in U_+.
  bool maps_into_u_plus = false;
  bool passed() const;
};

/// Grid check of the two ping-pong properties of A on P^1 \ U_-.
ChoiceVerification verify_choose_A(std::size_t grid_points = 10000);

/// The hyperbolic A; throws NumericalError if verify_choose_A fails.
scaledlin::ScaledMatrix appendix_a_choose_A();

/// rho_{alpha,t}(b) = [[cos pi t, sin(pi t)/(pi t)], [-pi t sin pi t, cos pi t]]; t = 0 gives [[1,1],[0,1]].
Matrix appendix_a_b_factor(double t);

/// Rank 2, d = 4 with blocks (2, 2): a -> (A, B_t), b -> (B_t, A).
/// Throws InputError for t outside [0, 1].
Representation appendix_a_family(double t);

/// u = [[1,2],[0,1]] and a hyperbolic partner with attracting point 1/2,
/// repelling point -1/2 and eigenvalues e^{+-3}.
Representation parabolic_schottky();

struct CocyclePair {
  /// g -> [[S(g), z_g], [0, 1]]
  Representation perturbed;
  /// g -> [[S(g), 0], [0, 1]], stored with blocks (2, 1)
  Representation block;
};

/// S = schottky(3, pi/4); z_a and z_b are the cocycle values on the generators.
CocyclePair sl3_cocycle_example(const Eigen::Vector2d& z_a, const Eigen::Vector2d& z_b);

struct CorpusEntry {
  std::string name;
  std::string notes;
  Representation rep;
  /// check name -> "pass", "fail" or "none" (no claim).
  std::vector<std::pair<std::string, std::string>> expected;
  /// Recomputes every check; each value carries a boolean "passed".
  std::function<io::Json()> evaluate;
};

/// min over 1 <= |gamma| <= L of ||mu(rho(gamma))|| / |gamma|.
double quasi_isometry_ratio(const Representation& rep, int L, const certificates::EnumerationOptions& options = {});

/// One row of the family demo: QI ratio at depth L, trace type of the images of
/// b, and lower-CLI verdicts along b^infinity for roots (1,2) and (2,3).
io::Json appendix_a_summary(double t, int L = 10, int N = 400);

/// Recorded cocycle values for the shipped example.
inline const Eigen::Vector2d kCocycleA{1, 0};
inline const Eigen::Vector2d kCocycleB{0, 1};

std::vector<CorpusEntry> entries();
/// Throws InputError for unknown names.
CorpusEntry entry(std::string_view name);

}  // namespace anosov::corpus
