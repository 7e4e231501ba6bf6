#pragma once

// Properness and sharpness at finite depth: drift of mu(rho(gamma)) away from a
// union of walls, or away from the diagonal for a pair acting on G x G / Diag(G).
// Norms are Euclidean on the diagonal entries.

#include <optional>
#include <string>
#include <vector>

#include "anosov/certificates.hpp"

namespace anosov::proper {

using certificates::EnvelopeFit;
using projections::Theta;

/// min over alpha_k in theta of (v_k - v_{k+1}) / sqrt(2).
double wall_distance(const projections::ChamberVector& v, const Theta& theta);

struct ProperOptions {
  certificates::EnumerationOptions enumeration;
  /// Drift must satisfy D[n] >= threshold_slope * n for 1 <= n <= L.
  double threshold_slope = 0.01;
  /// Intercept cap for the fit; unset means the largest coordinate among the
  /// fitted points of length-1 words.
  std::optional<double> cap;
};

enum class ProperMode { Walls, GroupManifold };

struct PropernessReport {
  ProperMode mode = ProperMode::Walls;
  Theta theta;
  int depth = 0;
  /// D[n], minimum drift over words of length n; D[0] = 0.
  std::vector<double> drift;
  std::vector<words::ReducedWord> witnesses;
  /// Fit of drift against ||mu|| (walls) or ||mu_L|| + ||mu_R|| (group manifold).
  EnvelopeFit fit;
  double cap = 0;
  double threshold_slope = 0;
  bool proper = false;
  bool sharp() const { return proper && fit.c > 0; }
};

PropernessReport certify_proper_walls(const Representation& rep, const Theta& theta, int L,
                                      const ProperOptions& options = {});

/// Throws DimensionMismatch unless both factors act on the same R^d.
PropernessReport certify_proper_groupmanifold(const Representation& rep_L, const Representation& rep_R, int L,
                                              const ProperOptions& options = {});

}  // namespace anosov::proper
