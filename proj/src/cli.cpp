#include "anosov/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

#include "anosov/boundary.hpp"
#include "anosov/certificates.hpp"
#include "anosov/corpus.hpp"
#include "anosov/io.hpp"
#include "anosov/proper.hpp"
#include "anosov/reductions.hpp"
#include "anosov/reports.hpp"

namespace anosov::cli {

namespace {

using io::Json;
using io::number;
using projections::RootIndex;
using projections::Theta;

constexpr std::string_view kCorpusPrefix = "corpus:";

/// A path to representation JSON, or corpus:<name>.
Representation load(const std::string& spec) {
  if (spec.empty()) throw InputError("no representation given");
  if (spec.starts_with(kCorpusPrefix)) return corpus::entry(spec.substr(kCorpusPrefix.size())).rep;
  return io::load_representation(spec);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("not a number: '" + s + "'");
  return v;
}

Theta parse_theta(const std::string& text, int d) {
  Theta theta;
  for (const auto& part : split(text, ',')) {
    int k = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), k);
    if (ec != std::errc{} || ptr != part.data() + part.size()) throw InputError("bad theta entry '" + part + "'");
    theta.push_back(k);
  }
  projections::validate_theta(theta, d);
  return theta;
}

/// "prefix(period)", e.g. "b(a)" or "(ab)"; spaces are ignored.
words::Ray parse_ray(const words::Alphabet& alphabet, const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != text.size()) {
    throw InputError("ray '" + text + "' is not of the form prefix(period)");
  }
  return words::Ray::periodic(words::parse_word(alphabet, text.substr(0, open)),
                              words::parse_word(alphabet, text.substr(open + 1, close - open - 1)));
}

struct Output {
  std::string path;
  std::ostream* out = nullptr;

  void write(const std::string& text) const {
    if (path.empty()) {
      *out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
  }
};

struct Common {
  int workers = 1;
  std::uint64_t cap = words::kDefaultEnumerationCap;

  certificates::EnumerationOptions enumeration() const {
    certificates::EnumerationOptions e;
    e.workers = workers;
    e.cap = cap;
    return e;
  }
};

Json base_config(const std::string& command, const std::string& spec, const Representation& rep) {
  return Json{{"command", command}, {"representation", spec}, {"representation_hash", io::representation_hash(rep)}};
}

// ---------------------------------------------------------------------------

struct WordArgs {
  std::string rep;
  std::string word;
};

int cmd_vector(const WordArgs& a, bool lyapunov, const Output& o) {
  const auto rep = load(a.rep);
  const auto w = words::parse_word(rep.alphabet(), a.word);
  const auto g = rep.evaluate(w.letters());
  Json config = base_config(lyapunov ? "lambda" : "mu", a.rep, rep);
  config["word"] = words::to_string(w);
  Json body{{"word", words::to_string(w)}};
  if (lyapunov) {
    body["lambda"] = io::numbers(projections::lambda_direct(g).entries());
  } else {
    body["mu"] = io::numbers(projections::mu(g).entries());
  }
  o.write(io::dump(reports::envelope(lyapunov ? "lambda" : "mu", config, body)));
  return kExitPass;
}

struct CertifyArgs {
  std::string rep;
  std::string theta = "1";
  int depth = 10;
  std::string mode = "word";
  std::vector<std::string> rays;
  int max_prefix = 0;
  int max_period = 3;
  int window = 200;
  std::string roots = "all";
  std::optional<double> kappa;
  double kappa_prime = 10;
};

int cmd_certify(const CertifyArgs& a, const Common& common, const Output& o) {
  const auto rep = load(a.rep);
  const Theta theta = parse_theta(a.theta, rep.dimension());
  if (a.depth < 1 || a.window < 1) throw InputError("depth and window must be positive");
  if (a.mode != "word" && a.mode != "norm") throw InputError("mode must be 'word' or 'norm'");
  if (a.roots != "all" && a.roots != "simple") throw InputError("roots must be 'all' or 'simple'");

  certificates::GapOptions gap_options;
  gap_options.enumeration = common.enumeration();
  gap_options.mode = a.mode == "word" ? certificates::GapMode::WordLength : certificates::GapMode::CartanNorm;
  const auto gap = certificates::certify_gap(rep, theta, a.depth, gap_options);

  std::vector<words::Ray> rays;
  for (const auto& r : a.rays) rays.push_back(parse_ray(rep.alphabet(), r));
  if (rays.empty()) rays = words::eventually_periodic_rays(rep.alphabet(), a.max_prefix, a.max_period);

  std::vector<RootIndex> roots;
  if (a.roots == "all") {
    roots = projections::sigma_plus(theta, rep.dimension());
  } else {
    for (int k : theta) roots.push_back(RootIndex::simple(k));
  }
  certificates::CliOptions cli;
  cli.kappa0 = a.kappa.value_or(gap.fit.c / 2);
  cli.kappa_prime0 = a.kappa_prime;
  std::vector<certificates::CliReport> reports;
  for (const auto& ray : rays) {
    auto r = certificates::certify_cli(rep, ray, roots, a.window, cli);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  const auto aggregate = certificates::aggregate_cli(reports);

  Json config = base_config("certify", a.rep, rep);
  config["theta"] = theta;
  config["depth"] = a.depth;
  config["mode"] = a.mode;
  config["window"] = a.window;
  config["roots"] = a.roots;
  config["kappa0"] = number(cli.kappa0);
  config["kappa_prime0"] = number(cli.kappa_prime0);
  Json ray_ids = Json::array();
  for (const auto& r : rays) ray_ids.push_back(r.id());
  config["rays"] = ray_ids;

  Json cli_reports = Json::array();
  for (const auto& r : reports) cli_reports.push_back(reports::to_json(r));
  Json body{{"gap", reports::to_json(gap)}, {"cli", reports::to_json(aggregate)}, {"cli_reports", cli_reports}};
  const bool passed = gap.passed() && aggregate.passed();
  // One witness per failing check; for the CLI, the worst ray of every failing root.
  Json witnesses = Json::array();
  if (!gap.passed()) {
    const auto L = static_cast<std::size_t>(a.depth);
    witnesses.push_back(Json{{"check", "gap"},
                             {"word", words::to_string(gap.witnesses[L])},
                             {"T", number(gap.per_length_min[L])}});
  }
  for (const auto& root : roots) {
    const certificates::CliReport* worst = nullptr;
    for (const auto& r : reports) {
      if (r.root == root && !r.passed() &&
          (!worst || r.kappa_prime_at_threshold > worst->kappa_prime_at_threshold)) {
        worst = &r;
      }
    }
    if (!worst) continue;
    witnesses.push_back(Json{{"check", "cli"},
                             {"ray", worst->ray_id},
                             {"root", reports::root_json(root)},
                             {"n", worst->witness_n},
                             {"m", worst->witness_m},
                             {"kappa_prime", number(worst->kappa_prime_at_threshold)}});
  }
  body["witnesses"] = witnesses;
  body["passed"] = passed;
  o.write(io::dump(reports::envelope("certify", config, body)));
  return passed ? kExitPass : kExitCertifiedFailure;
}

struct LimitArgs {
  std::string rep;
  double epsilon = 1e-6;
  int max_prefix = 0;
  int max_period = 3;
  std::size_t random = 0;
  std::uint64_t seed = 0;
  int start_depth = 16;
  int max_depth = 1 << 20;
  std::optional<int> chart;
  std::string format = "csv";
  double separation = 1;
};

int cmd_limit_set(const LimitArgs& a, const Common& common, const Output& o, std::ostream& err) {
  const auto rep = load(a.rep);
  if (a.format != "csv" && a.format != "json") throw InputError("format must be 'csv' or 'json'");
  if (!(a.epsilon > 0)) throw InputError("epsilon must be positive");
  if (a.chart && (*a.chart < 1 || *a.chart > rep.dimension())) throw InputError("chart coordinate out of range");
  boundary::RayFamily family;
  if (a.random > 0) {
    family.kind = boundary::RayFamily::Kind::Random;
    family.count = a.random;
    family.seed = a.seed;
  } else {
    family.max_prefix = a.max_prefix;
    family.max_period = a.max_period;
  }
  boundary::SampleOptions options;
  options.workers = common.workers;
  options.limit.start_depth = a.start_depth;
  options.limit.max_depth = a.max_depth;
  const auto sample = boundary::sample_limit_set(rep, family, a.epsilon, options);
  for (const auto& f : sample.failures) err << "ray " << f.ray_id << " did not converge: " << f.message << "\n";

  if (a.format == "csv") {
    o.write(boundary::to_csv(sample, a.chart));
  } else {
    Json config = base_config("limit-set", a.rep, rep);
    config["family"] = family.describe();
    config["epsilon"] = a.epsilon;
    config["start_depth"] = a.start_depth;
    config["max_depth"] = a.max_depth;
    config["separation"] = a.separation;
    Json points = Json::array();
    for (const auto& p : sample.points) points.push_back(reports::to_json(p));
    Json failures = Json::array();
    for (const auto& f : sample.failures) {
      failures.push_back(Json{{"ray", f.ray_id}, {"budget", number(f.budget)}, {"message", f.message}});
    }
    Json body{{"points", points},
              {"failures", failures},
              {"duplicates_removed", sample.duplicates_removed},
              {"transversality", reports::to_json(boundary::audit_transversality(sample, a.separation))},
              {"passed", sample.failures.empty()}};
    o.write(io::dump(reports::envelope("limit-set", config, body)));
  }
  return sample.failures.empty() ? kExitPass : kExitCertifiedFailure;
}

struct DynamicsArgs {
  std::string rep;
  std::string word;
  double epsilon = 1e-6;
};

int cmd_dynamics(const DynamicsArgs& a, const Output& o) {
  const auto rep = load(a.rep);
  const auto w = words::parse_word(rep.alphabet(), a.word);
  if (w.size() == 0) throw InputError("dynamics needs a nonempty word");
  Json config = base_config("dynamics", a.rep, rep);
  config["word"] = words::to_string(w);
  config["epsilon"] = a.epsilon;
  Json body;
  try {
    body = reports::to_json(boundary::audit_dynamics(rep, w, a.epsilon));
  } catch (const NotProximal& e) {
    body = Json{{"word", words::to_string(w)}, {"error", "NotProximal"}, {"gap", number(e.gap())}, {"passed", false}};
  }
  o.write(io::dump(reports::envelope("dynamics", config, body)));
  return body["passed"].get<bool>() ? kExitPass : kExitCertifiedFailure;
}

struct ProximalArgs {
  std::string rep;
  std::string word;
  std::string theta = "1";
};

int cmd_proximal(const ProximalArgs& a, const Output& o) {
  const auto rep = load(a.rep);
  const auto w = words::parse_word(rep.alphabet(), a.word);
  const Theta theta = parse_theta(a.theta, rep.dimension());
  const auto r = certificates::certify_proximal(rep.evaluate(w.letters()), theta);
  Json config = base_config("proximal", a.rep, rep);
  config["word"] = words::to_string(w);
  config["theta"] = theta;
  Json body = reports::to_json(r);
  body["word"] = words::to_string(w);
  o.write(io::dump(reports::envelope("proximal", config, body)));
  return r.proximal ? kExitPass : kExitCertifiedFailure;
}

struct PairArgs {
  std::string left;
  std::string right;
  int depth = 8;
  int weight = 1;
  double slope = 0.01;
};

int cmd_domination(const PairArgs& a, const Common& common, const Output& o) {
  const auto left = load(a.left);
  const auto right = load(a.right);
  certificates::DominationOptions options;
  options.enumeration = common.enumeration();
  const auto r = certificates::certify_domination(left, right, a.weight, a.depth, options);
  Json config{{"command", "domination"},
              {"left", a.left},
              {"right", a.right},
              {"left_hash", io::representation_hash(left)},
              {"right_hash", io::representation_hash(right)},
              {"weight", a.weight},
              {"depth", a.depth}};
  o.write(io::dump(reports::envelope("domination", config, reports::to_json(r))));
  return r.dominated() ? kExitPass : kExitCertifiedFailure;
}

int cmd_proper_gm(const PairArgs& a, const Common& common, const Output& o) {
  const auto left = load(a.left);
  const auto right = load(a.right);
  proper::ProperOptions options;
  options.enumeration = common.enumeration();
  options.threshold_slope = a.slope;
  const auto r = proper::certify_proper_groupmanifold(left, right, a.depth, options);
  Json config{{"command", "proper gm"},
              {"left", a.left},
              {"right", a.right},
              {"left_hash", io::representation_hash(left)},
              {"right_hash", io::representation_hash(right)},
              {"depth", a.depth},
              {"threshold_slope", a.slope}};
  o.write(io::dump(reports::envelope("proper", config, reports::to_json(r))));
  return r.sharp() ? kExitPass : kExitCertifiedFailure;
}

struct WallsArgs {
  std::string rep;
  std::string theta = "1";
  int depth = 8;
  double slope = 0.01;
};

int cmd_proper_walls(const WallsArgs& a, const Common& common, const Output& o) {
  const auto rep = load(a.rep);
  const Theta theta = parse_theta(a.theta, rep.dimension());
  proper::ProperOptions options;
  options.enumeration = common.enumeration();
  options.threshold_slope = a.slope;
  const auto r = proper::certify_proper_walls(rep, theta, a.depth, options);
  Json config = base_config("proper walls", a.rep, rep);
  config["theta"] = theta;
  config["depth"] = a.depth;
  config["threshold_slope"] = a.slope;
  o.write(io::dump(reports::envelope("proper", config, reports::to_json(r))));
  return r.sharp() ? kExitPass : kExitCertifiedFailure;
}

struct LiftArgs {
  std::string rep;
  std::optional<int> exterior;
  std::string sum;
  std::optional<int> corner;
};

int cmd_lift(const LiftArgs& a, const Output& o) {
  const auto rep = load(a.rep);
  const int chosen = (a.exterior ? 1 : 0) + (a.sum.empty() ? 0 : 1) + (a.corner ? 1 : 0);
  if (chosen != 1) throw InputError("lift needs exactly one of --exterior, --sum, --corner");
  const Representation lifted = a.exterior ? reductions::lift_exterior(rep, *a.exterior)
                                : a.corner ? reductions::lift_corner(rep, *a.corner)
                                           : reductions::lift_direct_sum(rep, load(a.sum));
  o.write(io::dump(io::representation_to_json(lifted)));
  return kExitPass;
}

int cmd_corpus_list(const Output& o) {
  Json list = Json::array();
  for (const auto& e : corpus::entries()) {
    Json expected = Json::object();
    for (const auto& [check, verdict] : e.expected) expected[check] = verdict;
    list.push_back(Json{{"name", e.name}, {"notes", e.notes}, {"expected", expected}});
  }
  o.write(io::dump(list));
  return kExitPass;
}

int cmd_corpus_export(const std::string& name, const Output& o) {
  o.write(io::dump(io::representation_to_json(corpus::entry(name).rep)));
  return kExitPass;
}

int cmd_corpus_verdicts(const std::string& name, const Output& o) {
  const auto e = corpus::entry(name);
  const Json checks = e.evaluate();
  Json expected = Json::object();
  bool matches = true;
  for (const auto& [check, verdict] : e.expected) {
    expected[check] = verdict;
    if (verdict == "none") continue;
    matches = matches && checks.contains(check) && checks[check]["passed"].get<bool>() == (verdict == "pass");
  }
  Json config{{"command", "corpus verdicts"}, {"entry", e.name}, {"representation_hash", io::representation_hash(e.rep)}};
  Json body{{"name", e.name}, {"expected", expected}, {"checks", checks}, {"matches", matches}, {"passed", matches}};
  o.write(io::dump(reports::envelope("corpus-verdicts", config, body)));
  return matches ? kExitPass : kExitCertifiedFailure;
}

struct DemoArgs {
  std::string grid = "0";
  int depth = 10;
  int window = 400;
};

int cmd_demo_appendix_a(const DemoArgs& a, const Output& o) {
  std::vector<double> grid;
  for (const auto& s : split(a.grid, ',')) {
    const double t = parse_double(s);
    if (!(t >= 0 && t <= 1)) throw InputError("grid values must lie in [0, 1]");
    grid.push_back(t);
  }
  Json rows = Json::array();
  for (double t : grid) rows.push_back(corpus::appendix_a_summary(t, a.depth, a.window));
  Json config{{"command", "demo-appendix-a"}, {"grid", io::numbers(grid)}, {"depth", a.depth}, {"window", a.window}};
  o.write(io::dump(reports::envelope("demo-appendix-a", config, Json{{"rows", rows}})));
  return kExitPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-depth certificates for Anosov representations of free groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  Output output{"", &out};
  app.add_option("--workers", common.workers, "Worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap", common.cap, "Maximum number of enumerated words")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", output.path, "Write the report to a file instead of stdout");

  std::function<int()> action;
  const char* rep_help = "Representation JSON file, or corpus:<name>";

  WordArgs mu_args;
  auto* mu = app.add_subcommand("mu", "Cartan projection of rho(word)");
  mu->add_option("--rep", mu_args.rep, rep_help)->required();
  mu->add_option("--word", mu_args.word, "Word such as \"a B a\"; empty for the identity");
  mu->callback([&] { action = [&] { return cmd_vector(mu_args, false, output); }; });

  WordArgs lambda_args;
  auto* lambda = app.add_subcommand("lambda", "Lyapunov projection of rho(word)");
  lambda->add_option("--rep", lambda_args.rep, rep_help)->required();
  lambda->add_option("--word", lambda_args.word, "Word such as \"a B a\"; empty for the identity");
  lambda->callback([&] { action = [&] { return cmd_vector(lambda_args, true, output); }; });

  CertifyArgs cert;
  auto* certify = app.add_subcommand("certify", "Gap certificate plus lower-CLI checks along rays");
  certify->add_option("--rep", cert.rep, rep_help)->required();
  certify->add_option("--theta", cert.theta, "Simple roots, comma separated (1-based)");
  certify->add_option("--depth", cert.depth, "Exhaustive word length for the gap certificate");
  certify->add_option("--mode", cert.mode, "Gap fit against word length ('word') or ||mu|| ('norm')");
  certify->add_option("--ray", cert.rays, "Explicit ray prefix(period); repeatable");
  certify->add_option("--max-prefix", cert.max_prefix, "Eventually periodic family: prefix length bound");
  certify->add_option("--max-period", cert.max_period, "Eventually periodic family: period length bound");
  certify->add_option("--window", cert.window, "Ray depth N for the CLI check");
  certify->add_option("--roots", cert.roots, "'all' (positive roots outside the Levi of theta) or 'simple'");
  certify->add_option("--kappa", cert.kappa, "CLI slope threshold; default half the fitted gap slope");
  certify->add_option("--kappa-prime", cert.kappa_prime, "CLI additive threshold");
  certify->callback([&] { action = [&] { return cmd_certify(cert, common, output); }; });

  LimitArgs lim;
  auto* limit = app.add_subcommand("limit-set", "Sample the limit set along a ray family");
  limit->add_option("--rep", lim.rep, rep_help)->required();
  limit->add_option("--epsilon", lim.epsilon, "Target error budget per point");
  limit->add_option("--max-prefix", lim.max_prefix, "Eventually periodic family: prefix length bound");
  limit->add_option("--max-period", lim.max_period, "Eventually periodic family: period length bound");
  limit->add_option("--random", lim.random, "Use this many seeded random rays instead");
  limit->add_option("--seed", lim.seed, "Seed for --random");
  limit->add_option("--start-depth", lim.start_depth, "First ray depth tried");
  limit->add_option("--max-depth", lim.max_depth, "Ray depth cap");
  limit->add_option("--chart", lim.chart, "Affine chart: divide by this coordinate (CSV only)");
  limit->add_option("--format", lim.format, "csv or json");
  limit->add_option("--separation", lim.separation, "Transversality audit: minimum tree distance (json only)");
  limit->callback([&] { action = [&] { return cmd_limit_set(lim, common, output, err); }; });

  DynamicsArgs dyn;
  auto* dynamics = app.add_subcommand("dynamics", "Compare the limit point of w^infinity with the eigenline of rho(w)");
  dynamics->add_option("--rep", dyn.rep, rep_help)->required();
  dynamics->add_option("--word", dyn.word, "Nonempty word")->required();
  dynamics->add_option("--epsilon", dyn.epsilon, "Target error budget");
  dynamics->callback([&] { action = [&] { return cmd_dynamics(dyn, output); }; });

  ProximalArgs prox;
  auto* proximal = app.add_subcommand("proximal", "Proximality of rho(word) for theta");
  proximal->add_option("--rep", prox.rep, rep_help)->required();
  proximal->add_option("--word", prox.word, "Word")->required();
  proximal->add_option("--theta", prox.theta, "Simple roots, comma separated (1-based)");
  proximal->callback([&] { action = [&] { return cmd_proximal(prox, output); }; });

  PairArgs dom;
  auto* domination = app.add_subcommand("domination", "Uniform domination of rho_R by rho_L");
  domination->add_option("--left", dom.left, rep_help)->required();
  domination->add_option("--right", dom.right, rep_help)->required();
  domination->add_option("--weight", dom.weight, "Fundamental weight index");
  domination->add_option("--depth", dom.depth, "Cyclically reduced words up to this length");
  domination->callback([&] { action = [&] { return cmd_domination(dom, common, output); }; });

  auto* prop = app.add_subcommand("proper", "Properness and sharpness at finite depth");
  prop->require_subcommand(1);
  WallsArgs walls_args;
  auto* walls = prop->add_subcommand("walls", "Drift away from the walls of theta");
  walls->add_option("--rep", walls_args.rep, rep_help)->required();
  walls->add_option("--theta", walls_args.theta, "Simple roots, comma separated (1-based)");
  walls->add_option("--depth", walls_args.depth, "Word length");
  walls->add_option("--slope", walls_args.slope, "Required drift per letter");
  walls->callback([&] { action = [&] { return cmd_proper_walls(walls_args, common, output); }; });
  PairArgs gm_args;
  auto* gm = prop->add_subcommand("gm", "Group manifold (rho_L, rho_R) acting on G");
  gm->add_option("--left", gm_args.left, rep_help)->required();
  gm->add_option("--right", gm_args.right, rep_help)->required();
  gm->add_option("--depth", gm_args.depth, "Word length");
  gm->add_option("--slope", gm_args.slope, "Required drift per letter");
  gm->callback([&] { action = [&] { return cmd_proper_gm(gm_args, common, output); }; });

  LiftArgs lift_args;
  auto* lift = app.add_subcommand("lift", "Compose with an exterior power, direct sum or corner embedding");
  lift->add_option("--rep", lift_args.rep, rep_help)->required();
  lift->add_option("--exterior", lift_args.exterior, "Exterior power k");
  lift->add_option("--sum", lift_args.sum, "Second summand");
  lift->add_option("--corner", lift_args.corner, "Target dimension D of the corner embedding");
  lift->callback([&] { action = [&] { return cmd_lift(lift_args, output); }; });

  auto* corp = app.add_subcommand("corpus", "Built-in representations and their expected verdicts");
  corp->require_subcommand(1);
  corp->add_subcommand("list", "Names, notes and expected verdicts")->callback([&] {
    action = [&] { return cmd_corpus_list(output); };
  });
  std::string export_name;
  auto* exp = corp->add_subcommand("export", "Representation JSON of an entry");
  exp->add_option("name", export_name, "Entry name")->required();
  exp->callback([&] { action = [&] { return cmd_corpus_export(export_name, output); }; });
  std::string verdict_name;
  auto* ver = corp->add_subcommand("verdicts", "Recompute the checks of an entry");
  ver->add_option("name", verdict_name, "Entry name")->required();
  ver->callback([&] { action = [&] { return cmd_corpus_verdicts(verdict_name, output); }; });

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand("demo-appendix-a", "Quasi-isometry and CLI verdicts along the block family");
  demo_cmd->add_option("--grid", demo.grid, "Comma separated values of t in [0, 1]");
  demo_cmd->add_option("--depth", demo.depth, "Word length for the quasi-isometry ratio");
  demo_cmd->add_option("--window", demo.window, "Ray depth for the CLI checks");
  demo_cmd->callback([&] { action = [&] { return cmd_demo_appendix_a(demo, output); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }
  try {
    return action();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ResourceCapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCertifiedFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitCertifiedFailure;
  }
}

}  // namespace anosov::cli
