#include "anosov/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace anosov::certificates {

using projections::CartanVector;
using projections::mu;
using words::Letter;

std::uint64_t ball_size(const words::Alphabet& alphabet, int L) {
  std::uint64_t total = 0;
  for (int n = 1; n <= L; ++n) {
    const auto c = words::geodesic_count(alphabet, n);
    if (c > UINT64_MAX - total) return UINT64_MAX;
    total += c;
  }
  return total;
}

namespace {

struct DfsState {
  std::span<const Representation* const> reps;
  int L;
  bool cyclic_only;
  const ProductVisitor* visit;
  int slot;
  std::vector<Letter> word;
  // stack[depth][rep]
  std::vector<std::vector<BlockDiagonal>> stack;
};

void dfs(DfsState& s) {
  const auto depth = s.word.size();
  const auto& top = s.stack[depth - 1];
  if (!s.cyclic_only || depth < 2 || s.word.front() != s.word.back().inverse()) {
    (*s.visit)(s.slot, s.word, top);
  }
  if (static_cast<int>(depth) == s.L) return;
  const int letters = s.reps.front()->alphabet().size();
  for (int code = 0; code < letters; ++code) {
    const Letter l(code);
    if (l == s.word.back().inverse()) continue;
    auto& next = s.stack[depth];
    next.clear();
    for (std::size_t r = 0; r < s.reps.size(); ++r) next.push_back(top[r] * s.reps[r]->image(l));
    s.word.push_back(l);
    dfs(s);
    s.word.pop_back();
  }
}

void run_slot(std::span<const Representation* const> reps, int L, bool cyclic_only, const ProductVisitor& visit,
              int slot) {
  DfsState s{reps, L, cyclic_only, &visit, slot, {}, {}};
  s.stack.resize(static_cast<std::size_t>(L));
  const Letter first(slot);
  s.word.push_back(first);
  for (const auto* rep : reps) s.stack[0].push_back(rep->image(first));
  dfs(s);
}

}  // namespace

void for_each_product(std::span<const Representation* const> reps, int L, const EnumerationOptions& options,
                      const ProductVisitor& visit) {
  if (reps.empty()) throw InputError("no representation to enumerate");
  if (L < 0) throw InputError("negative depth");
  const auto& alphabet = reps.front()->alphabet();
  for (const auto* rep : reps) {
    if (rep->alphabet() != alphabet) throw InputError("representations are defined on different alphabets");
  }
  const auto count = ball_size(alphabet, L);
  if (count > options.cap) {
    throw ResourceCapExceeded("enumeration of " + std::to_string(count) + " words exceeds cap " +
                              std::to_string(options.cap));
  }
  if (L == 0) return;
  const int slots = alphabet.size();
  const int workers = std::clamp(options.workers, 1, slots);
  if (workers == 1) {
    for (int slot = 0; slot < slots; ++slot) run_slot(reps, L, options.cyclically_reduced_only, visit, slot);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int slot = w; slot < slots; slot += workers) {
            run_slot(reps, L, options.cyclically_reduced_only, visit, slot);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------

EnvelopeFit fit_lower_bound(std::span<const std::pair<double, double>> points, double cap) {
  EnvelopeFit fit;
  if (points.empty()) return fit;
  std::vector<std::pair<double, double>> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  // Andrew's monotone chain, lower half; equal x keeps the lowest y.
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && hull.back().first == p.first) continue;
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  double slope = 0;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const double s = (hull[k].second - hull[k - 1].second) / (hull[k].first - hull[k - 1].first);
    const double intercept = s * hull[k].first - hull[k].second;
    if (intercept <= cap) slope = std::max(slope, s);
  }
  fit.c = std::max(0.0, slope);
  fit.C = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pts) fit.C = std::max(fit.C, fit.c * x - y);
  return fit;
}

// ---------------------------------------------------------------------------

GapCertificate certify_gap(const Representation& rep, const Theta& theta, int L, const GapOptions& options) {
  projections::validate_theta(theta, rep.dimension());
  if (L < 0) throw InputError("negative depth");
  const int slots = rep.alphabet().size();
  const auto inf = std::numeric_limits<double>::infinity();
  struct Slot {
    std::vector<double> min;
    std::vector<std::vector<Letter>> witness;
    std::vector<std::pair<double, double>> points;
    double scale = 1;
  };
  std::vector<Slot> per(static_cast<std::size_t>(slots));
  for (auto& s : per) {
    s.min.assign(static_cast<std::size_t>(L) + 1, inf);
    s.witness.resize(static_cast<std::size_t>(L) + 1);
  }
  const bool norm_mode = options.mode == GapMode::CartanNorm;
  const Representation* reps[] = {&rep};
  for_each_product(reps, L, options.enumeration, [&](int slot, std::span<const Letter> w, std::span<const BlockDiagonal> img) {
    const CartanVector m = mu(img[0]);
    const double t = projections::T_theta(m, theta);
    auto& s = per[static_cast<std::size_t>(slot)];
    const auto n = w.size();
    if (t < s.min[n]) {
      s.min[n] = t;
      s.witness[n].assign(w.begin(), w.end());
    }
    if (norm_mode) s.points.emplace_back(m.norm(), t);
    if (n == 1) s.scale = std::max({s.scale, t, norm_mode ? m.norm() : 0.0});
  });

  GapCertificate cert;
  cert.theta = theta;
  cert.depth = L;
  cert.mode = options.mode;
  cert.per_length_min.assign(static_cast<std::size_t>(L) + 1, inf);
  cert.per_length_min[0] = 0;
  cert.witnesses.resize(static_cast<std::size_t>(L) + 1);
  std::vector<std::pair<double, double>> points{{0.0, 0.0}};
  double scale = 1;
  for (const auto& s : per) {
    for (int n = 1; n <= L; ++n) {
      const auto k = static_cast<std::size_t>(n);
      if (s.min[k] < cert.per_length_min[k]) {
        cert.per_length_min[k] = s.min[k];
        cert.witnesses[k] = words::ReducedWord::from_reduced(s.witness[k]);
      }
    }
    points.insert(points.end(), s.points.begin(), s.points.end());
    scale = std::max(scale, s.scale);
  }
  if (!norm_mode) {
    points.clear();
    for (int n = 0; n <= L; ++n) points.emplace_back(n, cert.per_length_min[static_cast<std::size_t>(n)]);
  }
  cert.cap = options.cap.value_or(scale);
  cert.fit = fit_lower_bound(points, cert.cap);
  return cert;
}

// ---------------------------------------------------------------------------

double cli_kappa_prime(std::span<const double> x, double kappa, int* n_out, int* m_out) {
  // With y_k = kappa*k - x_k the quantity is max_{i <= j} y_j - y_i.
  double best = 0;
  int best_n = 0;
  int best_m = 0;
  double low = std::numeric_limits<double>::infinity();
  int low_at = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double y = kappa * static_cast<double>(k) - x[k];
    if (y < low) {
      low = y;
      low_at = static_cast<int>(k);
    }
    if (y - low > best) {
      best = y - low;
      best_n = low_at;
      best_m = static_cast<int>(k) - low_at;
    }
  }
  if (n_out) *n_out = best_n;
  if (m_out) *m_out = best_m;
  return best;
}

std::vector<BlockDiagonal> ray_images(const Representation& rep, const words::Ray& ray, int N) {
  if (N < 0) throw InputError("negative window");
  const auto letters = ray.letters(static_cast<std::size_t>(N));
  std::vector<BlockDiagonal> out;
  out.reserve(static_cast<std::size_t>(N) + 1);
  out.push_back(rep.identity());
  for (const Letter l : letters) out.push_back(out.back() * rep.image(l));
  return out;
}

std::vector<CliReport> certify_cli(const Representation& rep, const words::Ray& ray,
                                   const std::vector<RootIndex>& roots, int N, const CliOptions& options) {
  for (const auto& r : roots) r.validate(rep.dimension());
  const auto images = ray_images(rep, ray, N);
  std::vector<CartanVector> mus;
  mus.reserve(images.size());
  for (const auto& g : images) mus.push_back(mu(g));

  std::vector<double> grid = options.grid;
  if (grid.empty()) {
    for (int k = 0; k <= 16; ++k) grid.push_back(2 * options.kappa0 * k / 16.0);
  }
  std::vector<CliReport> out;
  for (const auto& root : roots) {
    CliReport rep_out;
    rep_out.ray_id = ray.id();
    rep_out.root = root;
    rep_out.window = N;
    for (const auto& m : mus) rep_out.x.push_back(projections::pair_root(m, root));
    for (double k : grid) rep_out.kappa_curve.push_back({k, cli_kappa_prime(rep_out.x, k)});
    rep_out.kappa0 = options.kappa0;
    rep_out.kappa_prime0 = options.kappa_prime0;
    rep_out.kappa_prime_at_threshold =
        cli_kappa_prime(rep_out.x, options.kappa0, &rep_out.witness_n, &rep_out.witness_m);
    out.push_back(std::move(rep_out));
  }
  return out;
}

CliAggregate aggregate_cli(std::span<const CliReport> reports) {
  CliAggregate agg;
  agg.reports = reports.size();
  if (reports.empty()) return agg;
  agg.kappa0 = reports.front().kappa0;
  agg.kappa_prime0 = reports.front().kappa_prime0;
  agg.worst_kappa_prime = -1;
  for (const auto& r : reports) {
    if (r.kappa0 != agg.kappa0 || r.kappa_prime0 != agg.kappa_prime0) {
      throw InputError("CLI reports use different thresholds");
    }
    if (r.kappa_prime_at_threshold > agg.worst_kappa_prime) {
      agg.worst_kappa_prime = r.kappa_prime_at_threshold;
      agg.worst_ray = r.ray_id;
      agg.worst_root = r.root;
    }
  }
  return agg;
}

// ---------------------------------------------------------------------------

GapSummation gap_summation(const Representation& rep, const words::Ray& ray, const Theta& theta, int N) {
  projections::validate_theta(theta, rep.dimension());
  GapSummation out;
  out.ray_id = ray.id();
  out.theta = theta;
  out.window = N;
  for (const auto& g : ray_images(rep, ray, N)) out.T.push_back(projections::T_theta(mu(g), theta));
  out.partial_sums.assign(out.T.size(), 0.0);
  double acc = 0;
  for (std::size_t k = out.T.size(); k-- > 0;) {
    acc += std::exp(-out.T[k]);
    out.partial_sums[k] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------

ProximalReport certify_proximal(const BlockDiagonal& g, const Theta& theta, std::uint64_t n_max) {
  projections::validate_theta(theta, g.dim());
  if (n_max < 1) throw InputError("n_max must be >= 1");
  ProximalReport out;
  out.theta = theta;
  const auto lam = projections::lambda_direct(g);
  out.proximal = true;
  for (int k : theta) {
    const double gap = projections::pair_root(lam, RootIndex::simple(k));
    out.lambda_gaps.push_back(gap);
    if (!(gap > kProximalTolerance)) out.proximal = false;
  }
  BlockDiagonal p = g;
  for (std::uint64_t n = 1; n <= n_max; n *= 2) {
    out.diagnostic.emplace_back(n, projections::T_theta(mu(p), theta) - 2 * std::log(static_cast<double>(n)));
    if (n > n_max / 2) break;
    p = p * p;
  }
  const auto& d = out.diagnostic;
  if (d.size() >= 3) {
    bool increasing = true;
    for (std::size_t k = d.size() / 2 + 1; k < d.size(); ++k) increasing = increasing && d[k].second > d[k - 1].second;
    out.diagnostic_increasing = increasing;
  }
  return out;
}

// ---------------------------------------------------------------------------

DominationReport certify_domination(const Representation& rep_L, const Representation& rep_R, int weight, int L,
                                    const DominationOptions& options) {
  const int d_min = std::min(rep_L.dimension(), rep_R.dimension());
  if (weight < 1 || weight > d_min - 1) {
    throw InputError("weight index " + std::to_string(weight) + " invalid for dimensions " +
                     std::to_string(rep_L.dimension()) + " and " + std::to_string(rep_R.dimension()));
  }
  struct Slot {
    double worst = -1;
    std::vector<Letter> witness;
    std::uint64_t flagged = 0;
    std::vector<Letter> first_flagged;
    std::uint64_t count = 0;
  };
  const int slots = rep_L.alphabet().size();
  std::vector<Slot> per(static_cast<std::size_t>(slots));
  EnumerationOptions enumeration = options.enumeration;
  enumeration.cyclically_reduced_only = true;
  const Representation* reps[] = {&rep_L, &rep_R};
  for_each_product(reps, L, enumeration, [&](int slot, std::span<const Letter> w, std::span<const BlockDiagonal> img) {
    auto& s = per[static_cast<std::size_t>(slot)];
    ++s.count;
    const double den = projections::pair_fundamental_weight(projections::lambda_direct(img[0]), weight);
    const double num = projections::pair_fundamental_weight(projections::lambda_direct(img[1]), weight);
    if (!(den > options.denominator_tolerance)) {
      if (s.flagged++ == 0) s.first_flagged.assign(w.begin(), w.end());
      return;
    }
    const double ratio = num / den;
    if (ratio > s.worst) {
      s.worst = ratio;
      s.witness.assign(w.begin(), w.end());
    }
  });
  DominationReport out;
  out.weight = weight;
  out.depth = L;
  out.margin = options.margin;
  double worst = -1;
  for (const auto& s : per) {
    out.words_checked += s.count;
    if (s.flagged > 0 && !out.first_flagged) out.first_flagged = words::ReducedWord::from_reduced(s.first_flagged);
    out.flagged += s.flagged;
    if (s.worst > worst) {
      worst = s.worst;
      out.witness = words::ReducedWord::from_reduced(s.witness);
    }
  }
  out.worst_ratio = std::max(0.0, worst);
  return out;
}

}  // namespace anosov::certificates
