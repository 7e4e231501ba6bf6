#include "anosov/corpus.hpp"

#include <cmath>
#include <numbers>

#include "anosov/boundary.hpp"
#include "anosov/certificates.hpp"
#include "anosov/proper.hpp"
#include "anosov/reports.hpp"

namespace anosov::corpus {

using scaledlin::BlockDiagonal;
using scaledlin::ScaledMatrix;
using scaledlin::TrackedMatrix;

namespace {

Matrix rotation(double phi) {
  Matrix r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

Matrix diag2(double x, double y) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = x;
  m(1, 1) = y;
  return m;
}

/// Hyperbolic element with the given attracting/repelling chart points and eigenvalues e^{+-s}.
Matrix hyperbolic(double attracting, double repelling, double s) {
  Matrix p(2, 2);
  p << attracting, repelling, 1, 1;
  return p * diag2(std::exp(s), std::exp(-s)) * p.inverse();
}

}  // namespace

Representation schottky(double s, double phi) {
  if (!(s > 0)) throw InputError("schottky scale must be positive");
  if (!(phi > 0 && phi < std::numbers::pi / 2)) throw InputError("schottky angle must lie in (0, pi/2)");
  const Matrix a = diag2(std::exp(s), std::exp(-s));
  const Matrix r = rotation(phi);
  const Matrix b = r * a * r.transpose();
  return Representation::from_matrices(2, {a, b});
}

bool ChoiceVerification::passed() const { return maps_into_u_plus && worst_contraction <= std::exp(-1.0); }

namespace {

Matrix choose_A_matrix() { return hyperbolic(kAttractingPoint, kRepellingPoint, kLogEigenvalue); }

}  // namespace

ChoiceVerification verify_choose_A(std::size_t grid_points) {
  const Matrix A = choose_A_matrix();
  ChoiceVerification out;
  out.maps_into_u_plus = true;
  // Unit representatives v = (cos t, sin t), t in [0, pi); chart x = v1 / v2.
  const std::size_t total = grid_points * 2;
  for (std::size_t k = 0; k < total && out.grid_points < grid_points; ++k) {
    const double t = std::numbers::pi * static_cast<double>(k) / static_cast<double>(total);
    Eigen::Vector2d v(std::cos(t), std::sin(t));
    if (v(1) != 0) {
      const double x = v(0) / v(1);
      if (x >= kUMinusLo && x <= kUMinusHi) continue;
    }
    ++out.grid_points;
    const Eigen::Vector2d w = A * v;
    const double image = w(0) / w(1);
    if (!(image >= kUPlusLo && image <= kUPlusHi)) out.maps_into_u_plus = false;
    // det A = 1, so the projective derivative at v is 1 / |A v|^2.
    out.worst_contraction = std::max(out.worst_contraction, 1 / w.squaredNorm());
  }
  return out;
}

ScaledMatrix appendix_a_choose_A() {
  static const bool verified = verify_choose_A().passed();
  if (!verified) throw NumericalError("shipped constants for A fail the ping-pong verification");
  return ScaledMatrix(choose_A_matrix());
}

Matrix appendix_a_b_factor(double t) {
  Matrix b(2, 2);
  const double pt = std::numbers::pi * t;
  const double sinc = t == 0 ? 1.0 : std::sin(pt) / pt;
  b << std::cos(pt), sinc, -pt * std::sin(pt), std::cos(pt);
  return b;
}

Representation appendix_a_family(double t) {
  if (!(t >= 0 && t <= 1)) throw InputError("family parameter must lie in [0, 1]");
  const TrackedMatrix A(appendix_a_choose_A());
  const TrackedMatrix B(ScaledMatrix(appendix_a_b_factor(t)));
  return Representation(words::Alphabet(2), {BlockDiagonal({A, B}), BlockDiagonal({B, A})});
}

Representation parabolic_schottky() {
  Matrix u(2, 2);
  u << 1, 2, 0, 1;
  return Representation::from_matrices(2, {u, hyperbolic(0.5, -0.5, 3)});
}

CocyclePair sl3_cocycle_example(const Eigen::Vector2d& z_a, const Eigen::Vector2d& z_b) {
  const auto S = schottky(3, std::numbers::pi / 4).generator_matrices();
  const Eigen::Vector2d z[] = {z_a, z_b};
  std::vector<Matrix> perturbed;
  std::vector<Matrix> block;
  for (int i = 0; i < 2; ++i) {
    Matrix m = Matrix::Identity(3, 3);
    m.topLeftCorner(2, 2) = S[static_cast<std::size_t>(i)];
    block.push_back(m);
    m.topRightCorner(2, 1) = z[i];
    perturbed.push_back(m);
  }
  return {Representation::from_matrices(2, perturbed), Representation::from_matrices(2, block, {2, 1})};
}

}  // namespace anosov::corpus

// ---------------------------------------------------------------------------
// Entries

namespace anosov::corpus {

namespace {

using io::Json;
using io::number;

constexpr double kQiThreshold = 0.05;
constexpr double kCliKappaPrime = 10;

words::Ray power_ray(const Representation& rep, std::string_view period) {
  return words::Ray::periodic({}, words::parse_word(rep.alphabet(), period));
}

Json with_passed(Json body, bool passed) {
  body["passed"] = passed;
  return body;
}

Json cli_check(const Representation& rep, std::string_view period, projections::RootIndex root, int N,
               double kappa0) {
  certificates::CliOptions options;
  options.kappa0 = kappa0;
  options.kappa_prime0 = kCliKappaPrime;
  const auto reports = certificates::certify_cli(rep, power_ray(rep, period), {root}, N, options);
  return reports::to_json(reports.front());
}

Json qi_check(const Representation& rep, int L) {
  const double ratio = quasi_isometry_ratio(rep, L);
  return with_passed(Json{{"depth", L}, {"kappa0", kQiThreshold}, {"min_ratio", number(ratio)}},
                     ratio >= kQiThreshold);
}

std::string trace_type(const Matrix& m) {
  const double tr = std::abs(m.trace());
  constexpr double tol = 1e-12;
  if (tr < 2 - tol) return "elliptic";
  if (tr > 2 + tol) return "hyperbolic";
  return (m - Matrix::Identity(2, 2) * (m.trace() / 2)).norm() <= tol ? "central" : "parabolic";
}

Json schottky_checks(const Representation& rep) {
  Json out;
  const auto gap = certificates::certify_gap(rep, {1}, 10);
  out["gap"] = reports::to_json(gap);

  const auto rays = words::eventually_periodic_rays(rep.alphabet(), 0, 3);
  certificates::CliOptions cli;
  cli.kappa0 = gap.fit.c / 2;
  cli.kappa_prime0 = kCliKappaPrime;
  std::vector<certificates::CliReport> all;
  for (const auto& ray : rays) {
    auto r = certificates::certify_cli(rep, ray, {{1, 2}}, 200, cli);
    all.insert(all.end(), r.begin(), r.end());
  }
  out["cli"] = reports::to_json(certificates::aggregate_cli(all));

  constexpr double epsilon = 1e-6;
  const auto sample = boundary::sample_limit_set(rep, std::span<const words::Ray>(rays), epsilon);
  double worst_budget = 0;
  for (const auto& p : sample.points) worst_budget = std::max(worst_budget, p.error_budget);
  out["limit_set"] = with_passed(Json{{"epsilon", epsilon},
                                      {"points", sample.points.size()},
                                      {"failures", sample.failures.size()},
                                      {"duplicates_removed", sample.duplicates_removed},
                                      {"worst_budget", number(worst_budget)}},
                                 sample.failures.empty() && worst_budget <= epsilon);

  const auto tr = boundary::audit_transversality(sample, 1);
  out["transversality"] =
      with_passed(reports::to_json(tr), !tr.vacuous() && tr.margin > 0 && tr.compatibility_defect <= 1e-6);

  Json words_json = Json::array();
  bool all_passed = true;
  int count = 0;
  for (int n = 1; count < 20; ++n) {
    for (const auto& w : words::enumerate_cyclically_reduced(rep.alphabet(), n)) {
      if (count == 20) break;
      const auto d = boundary::audit_dynamics(rep, w, epsilon);
      all_passed = all_passed && d.passed;
      words_json.push_back(reports::to_json(d));
      ++count;
    }
  }
  out["dynamics"] = with_passed(Json{{"words", words_json}}, all_passed);
  return out;
}

Json appendix_checks(const Representation& rep) {
  Json out;
  out["qi"] = qi_check(rep, 10);
  out["cli_23"] = cli_check(rep, "b", {2, 3}, 400, kQiThreshold);
  out["cli_12"] = cli_check(rep, "b", {1, 2}, 400, kQiThreshold);
  const ScaledMatrix b_alpha(appendix_a_b_factor(0));
  out["proximal_alpha_b"] = reports::to_json(certificates::certify_proximal(b_alpha, {1}));
  return out;
}

Json parabolic_checks(const Representation& rep) {
  Json out;
  const auto u = rep.image(words::Letter(0));
  out["proximal_u"] = reports::to_json(certificates::certify_proximal(u, {1}));

  // Partial sums of exp(-T) along u^infinity against the power-law tail.
  constexpr int N = 1024;
  const auto sum = certificates::gap_summation(rep, power_ray(rep, "a"), {1}, N);
  const double tail = boundary::tail_budget(sum.T, 1);
  out["gap_summation"] = with_passed(
      Json{{"window", N}, {"partial_sum", number(sum.partial_sums.front())}, {"tail", number(tail)}},
      std::isfinite(tail));

  try {
    const auto d = boundary::audit_dynamics(rep, words::parse_word(rep.alphabet(), "a"), 1e-6);
    out["dynamics_u"] = reports::to_json(d);
  } catch (const NotProximal& e) {
    out["dynamics_u"] = Json{{"error", "NotProximal"}, {"gap", number(e.gap())}, {"passed", false}};
  }

  boundary::SampleOptions options;
  options.limit.start_depth = 200;
  const words::Ray rays[] = {power_ray(rep, "a"), power_ray(rep, "A")};
  const auto sample = boundary::sample_limit_set(rep, rays, 1e-2, options);
  const auto tr = boundary::audit_transversality(sample);
  Json body = reports::to_json(tr);
  body["depth"] = sample.points.empty() ? 0 : sample.points.front().depth;
  out["transversality_u"] = with_passed(body, !tr.vacuous() && tr.margin > 1e-3);
  return out;
}

Json cocycle_checks(const CocyclePair& pair) {
  constexpr int depth = 8;
  double lambda_defect = 0;
  double mu_difference = 0;
  std::string mu_witness;
  std::uint64_t checked = 0;
  for (int n = 1; n <= depth; ++n) {
    for (const auto& w : words::enumerate_cyclically_reduced(pair.perturbed.alphabet(), n)) {
      const auto g = pair.perturbed.evaluate(w.letters());
      const auto h = pair.block.evaluate(w.letters());
      const auto lg = projections::lambda_direct(g);
      const auto lh = projections::lambda_direct(h);
      const auto mg = projections::mu(g);
      const auto mh = projections::mu(h);
      double dl = 0;
      double dm = 0;
      for (int i = 1; i <= lg.dim(); ++i) {
        dl = std::max(dl, std::abs(lg.at(i) - lh.at(i)));
        dm = std::max(dm, std::abs(mg.at(i) - mh.at(i)));
      }
      lambda_defect = std::max(lambda_defect, dl);
      if (dm > mu_difference) {
        mu_difference = dm;
        mu_witness = words::to_string(w);
      }
      ++checked;
    }
  }
  Json out;
  out["lambda_invariance"] = with_passed(
      Json{{"depth", depth}, {"words_checked", checked}, {"max_defect", number(lambda_defect)}, {"tolerance", 1e-8}},
      lambda_defect <= 1e-8);
  out["mu_differs"] = with_passed(
      Json{{"depth", depth}, {"max_difference", number(mu_difference)}, {"witness", mu_witness}, {"threshold", 0.1}},
      mu_difference >= 0.1);
  return out;
}

}  // namespace

double quasi_isometry_ratio(const Representation& rep, int L, const certificates::EnumerationOptions& options) {
  std::vector<double> per(static_cast<std::size_t>(rep.alphabet().size()), std::numeric_limits<double>::infinity());
  const Representation* reps[] = {&rep};
  certificates::for_each_product(reps, L, options,
                                 [&](int slot, std::span<const words::Letter> w, std::span<const BlockDiagonal> img) {
                                   auto& best = per[static_cast<std::size_t>(slot)];
                                   best = std::min(best, projections::mu(img[0]).norm() / static_cast<double>(w.size()));
                                 });
  return *std::min_element(per.begin(), per.end());
}

io::Json appendix_a_summary(double t, int L, int N) {
  const auto rep = appendix_a_family(t);
  const Matrix b = appendix_a_b_factor(t);
  Json out{{"t", number(t)}};
  out["qi"] = qi_check(rep, L);
  out["b_alpha_type"] = trace_type(b);
  out["b_alpha_lambda"] = io::numbers(projections::lambda_direct(ScaledMatrix(b)).entries());
  Json cli = Json::array();
  for (const projections::RootIndex root : {projections::RootIndex{1, 2}, projections::RootIndex{2, 3}}) {
    cli.push_back(cli_check(rep, "b", root, N, kQiThreshold));
  }
  out["cli"] = cli;
  return out;
}

std::vector<CorpusEntry> entries() {
  std::vector<CorpusEntry> out;
  {
    auto rep = schottky(3, std::numbers::pi / 4);
    out.push_back({"schottky-3-pi4",
                   "Ping-pong pair, s = 3 and phi = pi/4; Anosov for theta = {1}.",
                   rep,
                   {{"gap", "pass"},
                    {"cli", "pass"},
                    {"limit_set", "pass"},
                    {"transversality", "pass"},
                    {"dynamics", "pass"}},
                   [rep] { return schottky_checks(rep); }});
  }
  {
    auto rep = schottky(0.1, std::numbers::pi / 4);
    out.push_back({"schottky-0.1-pi4",
                   "Outside the ping-pong regime; no verdict is claimed.",
                   rep,
                   {{"gap", "none"}},
                   [rep] { return Json{{"gap", reports::to_json(certificates::certify_gap(rep, {1}, 10))}}; }});
  }
  {
    auto rep = appendix_a_family(0);
    out.push_back({"appendix-a-t0",
                   "Block pair (A, B) and (B, A): a quasi-isometric embedding whose (2,3) increments grow "
                   "logarithmically. The (2,3) failure at kappa' = 10 needs N = 400.",
                   rep,
                   {{"qi", "pass"}, {"cli_23", "fail"}, {"cli_12", "pass"}, {"proximal_alpha_b", "fail"}},
                   [rep] { return appendix_checks(rep); }});
  }
  {
    auto rep = parabolic_schottky();
    out.push_back({"parabolic",
                   "Unipotent u = [[1,2],[0,1]] with a hyperbolic partner; limit maps converge but are not "
                   "dynamics preserving.",
                   rep,
                   {{"proximal_u", "fail"},
                    {"gap_summation", "pass"},
                    {"dynamics_u", "fail"},
                    {"transversality_u", "fail"}},
                   [rep] { return parabolic_checks(rep); }});
  }
  {
    auto pair = sl3_cocycle_example(kCocycleA, kCocycleB);
    out.push_back({"sl3-cocycle",
                   "Schottky block in the upper left corner of SL(3) with cocycle (1,0), (0,1) in the upper "
                   "right corner; lambda sees only the block part.",
                   pair.perturbed,
                   {{"lambda_invariance", "pass"}, {"mu_differs", "pass"}},
                   [pair] { return cocycle_checks(pair); }});
  }
  return out;
}

CorpusEntry entry(std::string_view name) {
  for (auto& e : entries()) {
    if (e.name == name) return e;
  }
  throw InputError("unknown corpus entry '" + std::string(name) + "'");
}

}  // namespace anosov::corpus
