#include "anosov/reports.hpp"

namespace anosov::reports {

using io::number;
using io::numbers;

Json theta_json(const projections::Theta& theta) { return Json(theta); }

Json root_json(projections::RootIndex r) { return Json::array({r.i, r.j}); }

namespace {

Json word_json(const words::ReducedWord& w) { return words::to_string(w); }

Json fit_json(const certificates::EnvelopeFit& f) {
  return Json{{"c", number(f.c)}, {"C", number(f.C)}};
}

}  // namespace

Json to_json(const certificates::GapCertificate& c) {
  Json witnesses = Json::array();
  for (std::size_t n = 1; n < c.witnesses.size(); ++n) witnesses.push_back(word_json(c.witnesses[n]));
  return Json{{"theta", theta_json(c.theta)},
              {"depth", c.depth},
              {"mode", c.mode == certificates::GapMode::WordLength ? "word_length" : "cartan_norm"},
              {"per_length_min", numbers(c.per_length_min)},
              {"witnesses", witnesses},
              {"fit", fit_json(c.fit)},
              {"cap", number(c.cap)},
              {"passed", c.passed()}};
}

Json to_json(const certificates::CliReport& r, bool include_x) {
  Json curve = Json::array();
  for (const auto& p : r.kappa_curve) curve.push_back(Json::array({number(p.kappa), number(p.kappa_prime)}));
  Json out{{"ray", r.ray_id},
           {"root", root_json(r.root)},
           {"window", r.window},
           {"kappa0", number(r.kappa0)},
           {"kappa_prime0", number(r.kappa_prime0)},
           {"kappa_prime_at_threshold", number(r.kappa_prime_at_threshold)},
           {"witness", Json{{"n", r.witness_n}, {"m", r.witness_m}}},
           {"kappa_curve", curve},
           {"passed", r.passed()}};
  if (include_x) out["x"] = numbers(r.x);
  return out;
}

Json to_json(const certificates::CliAggregate& a) {
  return Json{{"reports", a.reports},
              {"kappa0", number(a.kappa0)},
              {"kappa_prime0", number(a.kappa_prime0)},
              {"worst_kappa_prime", number(a.worst_kappa_prime)},
              {"worst_ray", a.worst_ray},
              {"worst_root", root_json(a.worst_root)},
              {"passed", a.passed()}};
}

Json to_json(const certificates::GapSummation& s) {
  return Json{{"ray", s.ray_id},
              {"theta", theta_json(s.theta)},
              {"window", s.window},
              {"T", numbers(s.T)},
              {"partial_sums", numbers(s.partial_sums)}};
}

Json to_json(const certificates::ProximalReport& r) {
  Json diag = Json::array();
  for (const auto& [n, v] : r.diagnostic) diag.push_back(Json::array({n, number(v)}));
  return Json{{"theta", theta_json(r.theta)},
              {"lambda_gaps", numbers(r.lambda_gaps)},
              {"tolerance", certificates::kProximalTolerance},
              {"proximal", r.proximal},
              {"diagnostic", diag},
              {"diagnostic_increasing", r.diagnostic_increasing},
              {"passed", r.proximal}};
}

Json to_json(const certificates::DominationReport& r) {
  return Json{{"weight", r.weight},
              {"depth", r.depth},
              {"words_checked", r.words_checked},
              {"worst_ratio", number(r.worst_ratio)},
              {"witness", word_json(r.witness)},
              {"flagged", r.flagged},
              {"first_flagged", r.first_flagged ? Json(word_json(*r.first_flagged)) : Json(nullptr)},
              {"margin", number(r.margin)},
              {"passed", r.dominated()}};
}

Json to_json(const boundary::LimitPoint& p) {
  return Json{{"ray", p.ray_id},
              {"depth", p.depth},
              {"error_budget", number(p.error_budget)},
              {"normal_budget", number(p.normal_budget)},
              {"c_m", number(p.c_m)},
              {"max_cauchy_ratio", number(p.max_cauchy_ratio)},
              {"line", numbers(p.line)},
              {"normal", p.normal ? numbers(*p.normal) : Json(nullptr)}};
}

Json to_json(const boundary::TransversalityReport& r) {
  return Json{{"pairs", r.pairs},
              {"margin", number(r.margin)},
              {"margin_line_ray", r.margin_line_ray},
              {"margin_normal_ray", r.margin_normal_ray},
              {"compatibility_defect", number(r.compatibility_defect)},
              {"vacuous", r.vacuous()}};
}

Json to_json(const boundary::DynamicsReport& r) {
  return Json{{"word", r.word},
              {"distance", number(r.distance)},
              {"eigen_gap", number(r.eigen_gap)},
              {"depth", r.depth},
              {"passed", r.passed}};
}

Json to_json(const proper::PropernessReport& r) {
  Json witnesses = Json::array();
  for (std::size_t n = 1; n < r.witnesses.size(); ++n) witnesses.push_back(word_json(r.witnesses[n]));
  Json out{{"mode", r.mode == proper::ProperMode::Walls ? "walls" : "group_manifold"}};
  if (r.mode == proper::ProperMode::Walls) out["theta"] = theta_json(r.theta);
  out["depth"] = r.depth;
  out["drift"] = numbers(r.drift);
  out["witnesses"] = witnesses;
  out["fit"] = fit_json(r.fit);
  out["cap"] = number(r.cap);
  out["threshold_slope"] = number(r.threshold_slope);
  out["proper"] = r.proper;
  out["sharp"] = r.sharp();
  out["passed"] = r.sharp();
  return out;
}

Json envelope(const std::string& kind, const Json& config, const Json& body) {
  return Json{{"schema_version", io::kSchemaVersion},
              {"kind", kind},
              {"norm", "euclidean"},
              {"tolerances",
               Json{{"xi_gap", projections::kDefaultGapTolerance},
                    {"proximal_gap", certificates::kProximalTolerance},
                    {"dedup_angle", boundary::kDedupTolerance}}},
              {"config", config},
              {"config_hash", io::hex_hash(config.dump())},
              {"report", body}};
}

}  // namespace anosov::reports
