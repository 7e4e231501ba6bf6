// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "anosov/boundary.hpp"
#include "anosov/certificates.hpp"
#include "anosov/corpus.hpp"
#include "anosov/proper.hpp"
#include "anosov/reductions.hpp"

using namespace anosov;
using projections::mu;
using scaledlin::Matrix;
using scaledlin::ScaledMatrix;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double linf(const projections::ChamberVector& a, const projections::ChamberVector& b) {
  double out = 0;
  for (int i = 1; i <= a.dim(); ++i) out = std::max(out, std::abs(a.at(i) - b.at(i)));
  return out;
}

double l2(const projections::ChamberVector& a, const projections::ChamberVector& b) {
  double out = 0;
  for (int i = 1; i <= a.dim(); ++i) out += (a.at(i) - b.at(i)) * (a.at(i) - b.at(i));
  return std::sqrt(out);
}

Matrix gaussian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = n(rng);
  }
  return m;
}

/// Gaussian matrix rescaled to |det| = 1 with positive determinant.
Matrix special_linear(std::mt19937_64& rng, int d) {
  Matrix m = gaussian(rng, d);
  double det = m.determinant();
  if (det < 0) {
    m.row(0) *= -1;
    det = -det;
  }
  return m / std::pow(det, 1.0 / d);
}

// 1. The (1,1) entry of mu for [[1,n],[0,1]] against asinh(n / 2).
Outcome unipotent_growth() {
  double worst = 0;
  for (double n : {1.0, 2.0, 10.0, 1e3, 1e6}) {
    Matrix u(2, 2);
    u << 1, n, 0, 1;
    worst = std::max(worst, std::abs(mu(ScaledMatrix(u)).at(1) - std::asinh(n / 2)));
  }
  return {worst <= 1e-9, fmt("max |mu_1 - asinh(n/2)| = %.3g (tol 1e-9)", worst)};
}

// 2. lambda as the limit of mu(g^(2^k)) / 2^k.
Outcome limit_identity() {
  std::mt19937_64 rng(2);
  double worst = 0;
  for (int s = 0; s < 50; ++s) {
    const ScaledMatrix g(special_linear(rng, s % 2 == 0 ? 2 : 3));
    worst = std::max(worst, linf(projections::lambda_by_limit(g, 20), projections::lambda_direct(g)));
  }
  return {worst <= 1e-5, fmt("50 matrices, max sup-norm gap %.3g (tol 1e-5)", worst)};
}

// 3. Both subadditivity inequalities on random triples.
Outcome subadditivity() {
  std::mt19937_64 rng(3);
  int violations = 0;
  double worst = -1e300;
  for (int s = 0; s < 10000; ++s) {
    const int d = 2 + s % 3;
    const ScaledMatrix g1(gaussian(rng, d));
    const ScaledMatrix g2(gaussian(rng, d));
    const ScaledMatrix g3(gaussian(rng, d));
    const auto m1 = mu(g1);
    const auto m2 = mu(g2);
    const auto m3 = mu(g3);
    const double e1 = l2(mu(g1 * g2), m1) - m2.norm();
    const double e2 = l2(mu(g1 * g2 * g3), m2) - m1.norm() - m3.norm();
    worst = std::max({worst, e1, e2});
    if (e1 > 1e-6 || e2 > 1e-6) ++violations;
  }
  return {violations == 0, fmt("10000 triples, %d violations, max excess %.3g (tol 1e-6)", violations, worst)};
}

// 4. Singular values of exterior powers are sorted k-sums.
Outcome exterior_spectrum() {
  std::mt19937_64 rng(4);
  double worst = 0;
  int cases = 0;
  for (int d : {4, 5}) {
    for (int s = 0; s < 1000; ++s) {
      const ScaledMatrix g(gaussian(rng, d));
      const auto base = mu(g).entries();
      for (int k : {2, 3}) {
        std::vector<double> sums;
        for (const auto& subset : scaledlin::k_subsets(d, k)) {
          double t = 0;
          for (int i : subset) t += base[static_cast<std::size_t>(i)];
          sums.push_back(t);
        }
        std::sort(sums.begin(), sums.end(), std::greater<>());
        const auto lifted = scaledlin::svd(reductions::exterior_power(g, k)).log_sigmas;
        for (std::size_t i = 0; i < sums.size(); ++i) worst = std::max(worst, std::abs(lifted[i] - sums[i]));
        ++cases;
      }
    }
  }
  return {worst <= 1e-8, fmt("%d cases, max deviation %.3g (tol 1e-8)", cases, worst)};
}

// 5. Schottky end to end.
Outcome schottky_end_to_end() {
  const auto rep = corpus::schottky(3, std::numbers::pi / 4);
  const auto gap = certificates::certify_gap(rep, {1}, 10);
  const auto rays = words::eventually_periodic_rays(rep.alphabet(), 0, 3);
  certificates::CliOptions cli;
  cli.kappa0 = gap.fit.c / 2;
  cli.kappa_prime0 = 10;
  std::vector<certificates::CliReport> reports;
  for (const auto& ray : rays) {
    auto r = certificates::certify_cli(rep, ray, {{1, 2}}, 200, cli);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  const auto aggregate = certificates::aggregate_cli(reports);
  const auto sample = boundary::sample_limit_set(rep, std::span<const words::Ray>(rays), 1e-6);
  double budget = 0;
  for (const auto& p : sample.points) budget = std::max(budget, p.error_budget);
  const auto tr = boundary::audit_transversality(sample, 1);
  int dynamics_passed = 0;
  int words_checked = 0;
  for (int n = 1; words_checked < 20; ++n) {
    for (const auto& w : words::enumerate_cyclically_reduced(rep.alphabet(), n)) {
      if (words_checked == 20) break;
      dynamics_passed += boundary::audit_dynamics(rep, w, 1e-6).passed ? 1 : 0;
      ++words_checked;
    }
  }
  const bool ok = gap.passed() && aggregate.passed() && sample.failures.empty() && budget <= 1e-6 &&
                  !tr.vacuous() && tr.margin > 0 && tr.compatibility_defect <= 1e-6 && dynamics_passed == 20;
  return {ok, fmt("c = %.4g; CLI worst kappa' %.3g at (kappa0 %.4g, 10) over %zu rays; %zu points, %zu failures, "
                  "max budget %.3g; margin %.3g, defect %.3g; dynamics %d/20",
                  gap.fit.c, aggregate.worst_kappa_prime, cli.kappa0, rays.size(), sample.points.size(),
                  sample.failures.size(), budget, tr.margin, tr.compatibility_defect, dynamics_passed)};
}

// 6. The block family at t = 0: quasi-isometric yet the (2,3) increments are sublinear.
Outcome appendix_a_regression() {
  const auto rep = corpus::appendix_a_family(0);
  const double qi = corpus::quasi_isometry_ratio(rep, 10);
  const auto ray = words::Ray::periodic({}, words::parse_word(rep.alphabet(), "b"));
  certificates::CliOptions cli;
  cli.kappa0 = 0.05;
  cli.kappa_prime0 = 10;
  const auto report = certificates::certify_cli(rep, ray, {{2, 3}}, 200, cli).front();
  double dev4 = 0;
  double dev2 = 0;
  for (int n = 0; n <= 200; ++n) {
    const double x = report.x[static_cast<std::size_t>(n)];
    dev4 = std::max(dev4, std::abs(x - 4 * std::asinh(n / 2.0)));
    dev2 = std::max(dev2, std::abs(x - 2 * std::asinh(n / 2.0)));
  }
  // Smallest window at which the (0.05, 10) test fails, for the record.
  const auto longer = certificates::certify_cli(rep, ray, {{2, 3}}, 1000, cli).front();
  int first_fail = -1;
  for (int N = 1; N <= 1000 && first_fail < 0; ++N) {
    std::span<const double> prefix(longer.x.data(), static_cast<std::size_t>(N) + 1);
    if (certificates::cli_kappa_prime(prefix, cli.kappa0) > cli.kappa_prime0) first_fail = N;
  }
  const bool ok = qi >= 0.05 && !report.passed() && dev4 <= 1e-3;
  return {ok, fmt("QI ratio %.4g (>= 0.05); kappa'(N=200) = %.4g (fail needs > 10, first fails at N = %d); "
                  "max |x_n - 4 asinh(n/2)| = %.4g (tol 1e-3), max |x_n - 2 asinh(n/2)| = %.3g",
                  qi, report.kappa_prime_at_threshold, first_fail, dev4, dev2)};
}

// 7. Parabolic diagnostics.
Outcome parabolic_diagnostics() {
  const auto rep = corpus::parabolic_schottky();
  bool not_proximal = false;
  try {
    boundary::audit_dynamics(rep, words::parse_word(rep.alphabet(), "a"), 1e-6);
  } catch (const NotProximal&) {
    not_proximal = true;
  }
  boundary::SampleOptions options;
  options.limit.start_depth = 200;
  const words::Ray rays[] = {words::Ray::periodic({}, words::parse_word(rep.alphabet(), "a")),
                             words::Ray::periodic({}, words::parse_word(rep.alphabet(), "A"))};
  const auto sample = boundary::sample_limit_set(rep, rays, 1e-2, options);
  const auto tr = boundary::audit_transversality(sample);
  const bool ok = not_proximal && sample.failures.empty() && !tr.vacuous() && tr.margin <= 1e-3;
  return {ok, fmt("NotProximal %s; %zu points from depth 200 (reached %d), margin %.3g (tol <= 1e-3)",
                  not_proximal ? "raised" : "missing", sample.points.size(),
                  sample.points.empty() ? 0 : sample.points.front().depth, tr.margin)};
}

// 8. Group manifold properness.
Outcome group_manifold() {
  const auto s3 = corpus::schottky(3, std::numbers::pi / 4);
  const auto s1 = corpus::schottky(1, std::numbers::pi / 4);
  const auto r = proper::certify_proper_groupmanifold(s3, s1, 8);
  const auto diag = proper::certify_proper_groupmanifold(s3, s3, 8);
  double drift = 0;
  for (double v : diag.drift) drift = std::max(drift, std::abs(v));
  const bool ok = r.proper && r.sharp() && r.fit.c >= 0.4 && drift <= 1e-9 && !diag.proper;
  return {ok, fmt("(3, 1): proper %d sharp %d c = %.4g (>= 0.4); (3, 3): max |D| = %.3g, proper %d", r.proper,
                  r.sharp(), r.fit.c, drift, diag.proper)};
}

// 9. lambda sees only the semisimple part.
Outcome semisimplification() {
  const auto pair = corpus::sl3_cocycle_example(corpus::kCocycleA, corpus::kCocycleB);
  double lambda_defect = 0;
  double mu_difference = 0;
  std::size_t checked = 0;
  for (int n = 1; n <= 8; ++n) {
    for (const auto& w : words::enumerate_cyclically_reduced(pair.block.alphabet(), n)) {
      const auto g = pair.perturbed.evaluate(w.letters());
      const auto h = pair.block.evaluate(w.letters());
      lambda_defect = std::max(lambda_defect, linf(projections::lambda_direct(g), projections::lambda_direct(h)));
      mu_difference = std::max(mu_difference, linf(mu(g), mu(h)));
      ++checked;
    }
  }
  return {lambda_defect <= 1e-8 && mu_difference >= 0.1,
          fmt("%zu words, max lambda defect %.3g (tol 1e-8), max mu difference %.4g (>= 0.1)", checked,
              lambda_defect, mu_difference)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "unipotent Cartan growth", 1, unipotent_growth},
      {2, "limit identity for lambda", 10, limit_identity},
      {3, "subadditivity suite", 0, subadditivity},
      {4, "exterior-power spectral identity", 30, exterior_spectrum},
      {5, "Schottky end-to-end", 120, schottky_end_to_end},
      {6, "block family regression at t = 0", 120, appendix_a_regression},
      {7, "parabolic Schottky diagnostics", 0, parabolic_diagnostics},
      {8, "group-manifold properness", 0, group_manifold},
      {9, "lambda invariance under semisimplification", 0, semisimplification},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_seconds == 0 || seconds < c.limit_seconds;
    const bool ok = o.passed && in_time;
    failed += ok ? 0 : 1;
    std::string timing = fmt("%.2f s", seconds);
    if (c.limit_seconds > 0) timing += fmt(" (limit %.0f s)", c.limit_seconds);
    std::printf("[%s] %d. %s: %s; %s\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
