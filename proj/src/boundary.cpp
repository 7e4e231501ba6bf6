#include "anosov/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "anosov/io.hpp"

namespace anosov::boundary {

using projections::mu;
using scaledlin::BlockDiagonal;

namespace {

// Step distances below this are rounding, not movement of Xi.
constexpr double kDistanceFloor = 1e-12;

}  // namespace

double estimate_cm(const Representation& rep) {
  double delta = 0;
  for (int code = 0; code < rep.alphabet().size(); ++code) {
    delta = std::max(delta, mu(rep.image(words::Letter(code))).norm());
  }
  // The construction uses ||chi|| = ||epsilon_1|| = 1.
  return std::exp(delta * 2);
}

double tail_budget(std::span<const double> T, double c_m) {
  const auto inf = std::numeric_limits<double>::infinity();
  if (T.size() < 5) return inf;
  const std::size_t N = T.size() - 1;
  const double early = *std::min_element(T.begin() + static_cast<std::ptrdiff_t>(N / 4),
                                         T.begin() + static_cast<std::ptrdiff_t>(N / 2));
  const double late = *std::min_element(T.begin() + static_cast<std::ptrdiff_t>(N / 2), T.end());
  const double p = (late - early) / std::numbers::ln2;
  if (!(p > 1)) return inf;
  return c_m * std::exp(-late) * (1 + static_cast<double>(N) / (p - 1));
}

LimitPoint limit_point(const Representation& rep, const words::Ray& ray, double epsilon,
                       const LimitOptions& options) {
  if (!(epsilon > 0)) throw InputError("target error must be positive");
  if (options.start_depth < 4 || options.max_depth < options.start_depth) {
    throw InputError("limit depths must satisfy 4 <= start_depth <= max_depth");
  }
  const int d = rep.dimension();
  if (d < 2) throw InputError("boundary maps need dimension >= 2");
  const projections::RootIndex top{1, 2};
  const projections::RootIndex bottom{d - 1, d};

  LimitPoint out;
  out.ray_id = ray.id();
  out.ray = ray;
  out.c_m = estimate_cm(rep);

  std::vector<double> T_plus{0.0};
  std::vector<double> T_minus{0.0};
  BlockDiagonal g = rep.identity();
  std::optional<Vector> prev_line;
  int N = options.start_depth;
  while (true) {
    const auto letters = ray.letters(static_cast<std::size_t>(N));
    for (std::size_t n = T_plus.size(); n <= static_cast<std::size_t>(N); ++n) {
      g = g * rep.image(letters[n - 1]);
      const auto m = mu(g);
      T_plus.push_back(std::max(0.0, projections::pair_root(m, top)));
      T_minus.push_back(std::max(0.0, projections::pair_root(m, bottom)));
      if (T_plus.back() > options.gap_tolerance) {
        Vector line = g.top_left_singular_vector();
        if (prev_line && T_plus[n - 1] > options.gap_tolerance) {
          const double step = projections::projective_distance(*prev_line, line);
          if (step > kDistanceFloor) {
            const double bound = out.c_m * std::exp(-T_plus[n - 1]);
            out.max_cauchy_ratio = std::max(out.max_cauchy_ratio, step / bound);
          }
        }
        prev_line = std::move(line);
      } else {
        prev_line.reset();
      }
    }
    const double b_plus = tail_budget(T_plus, out.c_m);
    const double b_minus = d == 2 ? b_plus : tail_budget(T_minus, out.c_m);
    const bool line_ok = b_plus <= epsilon;
    const bool normal_ok = b_minus <= epsilon;
    if ((line_ok && normal_ok) || N >= options.max_depth) {
      if (!line_ok) {
        throw NoConvergence("ray " + ray.id() + ": error budget " + io::format12(b_plus) + " above " +
                                io::format12(epsilon) + " at depth cap " + std::to_string(N),
                            b_plus);
      }
      out.depth = N;
      out.error_budget = b_plus;
      out.normal_budget = b_minus;
      out.line = projections::xi_plus(g, options.gap_tolerance);
      if (normal_ok) out.normal = projections::xi_minus(g, options.gap_tolerance);
      return out;
    }
    N = std::min(2 * N, options.max_depth);
  }
}

std::vector<words::Ray> RayFamily::rays(const words::Alphabet& alphabet) const {
  if (kind == Kind::Random) return words::random_rays(alphabet, count, seed);
  return words::eventually_periodic_rays(alphabet, max_prefix, max_period);
}

std::string RayFamily::describe() const {
  if (kind == Kind::Random) return "random:" + std::to_string(count) + ":" + std::to_string(seed);
  return "periodic:p<=" + std::to_string(max_prefix) + ":q<=" + std::to_string(max_period);
}

LimitSetSample sample_limit_set(const Representation& rep, std::span<const words::Ray> rays, double epsilon,
                                const SampleOptions& options) {
  struct Outcome {
    std::optional<LimitPoint> point;
    std::optional<RayFailure> failure;
  };
  std::vector<Outcome> outcomes(rays.size());
  auto work = [&](std::size_t i) {
    try {
      outcomes[i].point = limit_point(rep, rays[i], epsilon, options.limit);
    } catch (const NoConvergence& e) {
      outcomes[i].failure = RayFailure{rays[i].id(), e.budget(), e.what()};
    } catch (const NumericalError& e) {
      outcomes[i].failure = RayFailure{rays[i].id(), std::numeric_limits<double>::infinity(), e.what()};
    }
  };
  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < rays.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < rays.size(); i += static_cast<std::size_t>(workers)) {
          work(i);
        }
      });
    }
  }

  LimitSetSample sample;
  sample.representation_hash = io::representation_hash(rep);
  sample.epsilon = epsilon;
  std::vector<LimitPoint> points;
  for (auto& o : outcomes) {
    if (o.point) points.push_back(std::move(*o.point));
    if (o.failure) sample.failures.push_back(std::move(*o.failure));
  }
  std::sort(points.begin(), points.end(), [](const LimitPoint& a, const LimitPoint& b) { return a.ray_id < b.ray_id; });
  std::sort(sample.failures.begin(), sample.failures.end(),
            [](const RayFailure& a, const RayFailure& b) { return a.ray_id < b.ray_id; });
  for (auto& p : points) {
    // A close pair is kept apart when the error budgets certify the gap.
    const bool dup = std::any_of(sample.points.begin(), sample.points.end(), [&](const LimitPoint& q) {
      const double unresolved = std::min(options.dedup_tolerance, p.error_budget + q.error_budget);
      if (projections::projective_distance(p.line, q.line) > unresolved) return false;
      if (p.normal && q.normal) {
        const double normal_unresolved = std::min(options.dedup_tolerance, p.normal_budget + q.normal_budget);
        return projections::projective_distance(*p.normal, *q.normal) <= normal_unresolved;
      }
      return true;
    });
    if (dup) {
      ++sample.duplicates_removed;
    } else {
      sample.points.push_back(std::move(p));
    }
  }
  return sample;
}

LimitSetSample sample_limit_set(const Representation& rep, const RayFamily& family, double epsilon,
                                const SampleOptions& options) {
  const auto rays = family.rays(rep.alphabet());
  auto sample = sample_limit_set(rep, std::span<const words::Ray>(rays), epsilon, options);
  sample.family = family.describe();
  return sample;
}

TransversalityReport audit_transversality(const LimitSetSample& sample, double separation, std::size_t horizon) {
  TransversalityReport out;
  const auto& pts = sample.points;
  for (const auto& p : pts) {
    if (p.normal) out.compatibility_defect = std::max(out.compatibility_defect, std::abs(p.line.dot(*p.normal)));
  }
  if (pts.size() < 2) return out;
  std::vector<std::vector<words::Letter>> letters;
  letters.reserve(pts.size());
  for (const auto& p : pts) {
    if (!p.ray) throw InputError("limit point " + p.ray_id + " carries no ray");
    letters.push_back(p.ray->letters(horizon));
  }
  auto tree_distance = [&](std::size_t i, std::size_t j) {
    std::size_t k = 0;
    while (k < horizon && letters[i][k] == letters[j][k]) ++k;
    return std::exp(-static_cast<double>(k));
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j || !pts[j].normal) continue;
      if (tree_distance(i, j) < separation) continue;
      ++out.pairs;
      const double v = std::abs(pts[i].line.dot(*pts[j].normal));
      if (v < out.margin || out.pairs == 1) {
        out.margin = v;
        out.margin_line_ray = pts[i].ray_id;
        out.margin_normal_ray = pts[j].ray_id;
      }
    }
  }
  return out;
}

DynamicsReport audit_dynamics(const Representation& rep, const words::ReducedWord& w, double epsilon,
                              const LimitOptions& options) {
  if (w.empty() || !w.is_cyclically_reduced()) {
    throw InputError("dynamics audit needs a nonempty cyclically reduced word");
  }
  DynamicsReport out;
  out.word = words::to_string(w);
  const BlockDiagonal g = evaluate_word(rep, w);
  out.eigen_gap = projections::pair_root(projections::lambda_direct(g), {1, 2});
  if (!(out.eigen_gap > 1e-8)) {
    throw NotProximal("rho(" + out.word + ") is not proximal: eigenvalue gap " + io::format12(out.eigen_gap),
                      out.eigen_gap);
  }
  const auto point = limit_point(rep, words::Ray::periodic(words::ReducedWord(), w), epsilon, options);
  out.depth = point.depth;
  out.distance = projections::projective_distance(point.line, g.top_eigenvector());
  out.passed = out.distance <= epsilon;
  return out;
}

std::string to_csv(const LimitSetSample& sample, std::optional<int> chart) {
  std::ostringstream os;
  if (sample.points.empty()) return "ray_id,n0,error_budget\n";
  const auto d = sample.points.front().line.size();
  if (chart && (*chart < 1 || *chart > d)) throw InputError("chart coordinate out of range");
  os << "ray_id,n0,error_budget";
  if (chart) {
    for (Eigen::Index i = 1; i <= d; ++i) {
      if (i != *chart) os << ",x" << i;
    }
  } else {
    for (Eigen::Index i = 1; i <= d; ++i) os << ",l" << i;
    for (Eigen::Index i = 1; i <= d; ++i) os << ",h" << i;
  }
  os << "\n";
  for (const auto& p : sample.points) {
    os << p.ray_id << "," << p.depth << "," << io::format12(p.error_budget);
    if (chart) {
      const double den = p.line(*chart - 1);
      for (Eigen::Index i = 0; i < d; ++i) {
        if (i != *chart - 1) os << "," << io::format12(p.line(i) / den);
      }
    } else {
      for (Eigen::Index i = 0; i < d; ++i) os << "," << io::format12(p.line(i));
      for (Eigen::Index i = 0; i < d; ++i) os << "," << (p.normal ? io::format12((*p.normal)(i)) : "");
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace anosov::boundary
