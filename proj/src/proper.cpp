#include "anosov/proper.hpp"

#include <cmath>
#include <numbers>

namespace anosov::proper {

using projections::CartanVector;
using scaledlin::BlockDiagonal;
using words::Letter;

double wall_distance(const projections::ChamberVector& v, const Theta& theta) {
  projections::validate_theta(theta, v.dim());
  double best = std::numeric_limits<double>::infinity();
  for (int k : theta) best = std::min(best, (v.at(k) - v.at(k + 1)) / std::numbers::sqrt2);
  return std::max(0.0, best);
}

namespace {

using Measure = std::function<std::pair<double, double>(std::span<const BlockDiagonal>)>;

// (x, y) = (size, drift) per word; D[n] is the minimum of y at length n.
PropernessReport scan(std::span<const Representation* const> reps, int L, const ProperOptions& options,
                      const Measure& measure) {
  if (L < 0) throw InputError("negative depth");
  const auto inf = std::numeric_limits<double>::infinity();
  struct Slot {
    std::vector<double> min;
    std::vector<std::vector<Letter>> witness;
    std::vector<std::pair<double, double>> points;
    double scale = 0;
  };
  const int slots = reps.front()->alphabet().size();
  std::vector<Slot> per(static_cast<std::size_t>(slots));
  for (auto& s : per) {
    s.min.assign(static_cast<std::size_t>(L) + 1, inf);
    s.witness.resize(static_cast<std::size_t>(L) + 1);
  }
  certificates::for_each_product(reps, L, options.enumeration,
                                 [&](int slot, std::span<const Letter> w, std::span<const BlockDiagonal> img) {
                                   auto& s = per[static_cast<std::size_t>(slot)];
                                   const auto [x, y] = measure(img);
                                   if (y < s.min[w.size()]) {
                                     s.min[w.size()] = y;
                                     s.witness[w.size()].assign(w.begin(), w.end());
                                   }
                                   s.points.emplace_back(x, y);
                                   if (w.size() == 1) s.scale = std::max({s.scale, x, y});
                                 });
  PropernessReport out;
  out.depth = L;
  out.threshold_slope = options.threshold_slope;
  out.drift.assign(static_cast<std::size_t>(L) + 1, inf);
  out.drift[0] = 0;
  out.witnesses.resize(static_cast<std::size_t>(L) + 1);
  std::vector<std::pair<double, double>> points{{0.0, 0.0}};
  double scale = 0;
  for (const auto& s : per) {
    scale = std::max(scale, s.scale);
    for (int n = 1; n <= L; ++n) {
      const auto k = static_cast<std::size_t>(n);
      if (s.min[k] < out.drift[k]) {
        out.drift[k] = s.min[k];
        out.witnesses[k] = words::ReducedWord::from_reduced(s.witness[k]);
      }
    }
    points.insert(points.end(), s.points.begin(), s.points.end());
  }
  out.cap = options.cap.value_or(scale);
  out.fit = certificates::fit_lower_bound(points, out.cap);
  out.proper = L >= 1;
  for (int n = 1; n <= L; ++n) {
    out.proper = out.proper && out.drift[static_cast<std::size_t>(n)] >= options.threshold_slope * n;
  }
  // Trend on the envelope: the drift must keep growing over the second half.
  if (L >= 2) out.proper = out.proper && out.drift[static_cast<std::size_t>(L)] > out.drift[static_cast<std::size_t>(L / 2)];
  return out;
}

}  // namespace

PropernessReport certify_proper_walls(const Representation& rep, const Theta& theta, int L,
                                      const ProperOptions& options) {
  projections::validate_theta(theta, rep.dimension());
  const Representation* reps[] = {&rep};
  auto out = scan(reps, L, options, [&](std::span<const BlockDiagonal> img) {
    const CartanVector m = projections::mu(img[0]);
    return std::pair{m.norm(), wall_distance(m, theta)};
  });
  out.mode = ProperMode::Walls;
  out.theta = theta;
  return out;
}

PropernessReport certify_proper_groupmanifold(const Representation& rep_L, const Representation& rep_R, int L,
                                              const ProperOptions& options) {
  if (rep_L.dimension() != rep_R.dimension()) {
    throw DimensionMismatch("group manifold factors act in dimensions " + std::to_string(rep_L.dimension()) +
                            " and " + std::to_string(rep_R.dimension()));
  }
  const Representation* reps[] = {&rep_L, &rep_R};
  auto out = scan(reps, L, options, [&](std::span<const BlockDiagonal> img) {
    const CartanVector a = projections::mu(img[0]);
    const CartanVector b = projections::mu(img[1]);
    double diff = 0;
    for (int i = 1; i <= a.dim(); ++i) diff += (a.at(i) - b.at(i)) * (a.at(i) - b.at(i));
    return std::pair{a.norm() + b.norm(), std::sqrt(diff)};
  });
  out.mode = ProperMode::GroupManifold;
  return out;
}

}  // namespace anosov::proper
