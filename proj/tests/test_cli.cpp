#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "anosov/cli.hpp"
#include "anosov/io.hpp"

using namespace anosov;
using io::Json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::vector<const char*> argv{"anosov-cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream(name) << text;
  return name;
}

constexpr const char* kTrivial = R"({"dimension": 2, "rank": 2, "generators": [
  [["1", "0"], ["0", "1"]], [["1", "0"], ["0", "1"]]]})";

}  // namespace

TEST_CASE("mu and lambda") {
  const auto id = run({"mu", "--rep", "corpus:schottky-3-pi4", "--word", ""});
  REQUIRE(id.code == cli::kExitPass);
  for (const auto& x : id.json()["report"]["mu"]) CHECK(x.get<double>() == 0);

  const auto a = run({"mu", "--rep", "corpus:schottky-3-pi4", "--word", "a"});
  CHECK(a.json()["report"]["mu"][0].get<double>() == doctest::Approx(3));

  // Conjugate elements share their Lyapunov vector.
  const auto ab = run({"lambda", "--rep", "corpus:schottky-3-pi4", "--word", "a B"});
  const auto ba = run({"lambda", "--rep", "corpus:schottky-3-pi4", "--word", "B a"});
  REQUIRE(ab.code == cli::kExitPass);
  CHECK(ab.json()["report"]["lambda"] == ba.json()["report"]["lambda"]);
  CHECK(ab.json()["kind"] == "lambda");
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run({"mu", "--rep", "corpus:schottky-3-pi4", "--word", "a x"}).code == cli::kExitInputError);
  CHECK(run({"mu", "--rep", "corpus:nope", "--word", "a"}).code == cli::kExitInputError);
  CHECK(run({"mu", "--rep", "/nonexistent.json"}).code == cli::kExitInputError);
  CHECK(run({"no-such-command"}).code == cli::kExitInputError);
  CHECK(run({"certify", "--rep", "corpus:schottky-3-pi4", "--theta", "2"}).code == cli::kExitInputError);
  const auto bad = write_temp("test_cli_bad.json", "{\"dimension\": 2,\n  \"rank\": }");
  const auto r = run({"mu", "--rep", bad});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find("line 2") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("enumeration cap exits with code 3") {
  const auto r = run({"certify", "--rep", "corpus:schottky-3-pi4", "--depth", "8", "--cap", "100"});
  CHECK(r.code == cli::kExitResourceCap);
  // Global options are also accepted before the subcommand.
  CHECK(run({"--cap", "100", "certify", "--rep", "corpus:schottky-3-pi4", "--depth", "8"}).code ==
        cli::kExitResourceCap);
}

TEST_CASE("certify") {
  SUBCASE("trivial representation fails with a gap witness") {
    const auto path = write_temp("test_cli_trivial.json", kTrivial);
    const auto r = run({"certify", "--rep", path, "--depth", "4", "--window", "20"});
    CHECK(r.code == cli::kExitCertifiedFailure);
    const auto report = r.json()["report"];
    CHECK_FALSE(report["passed"].get<bool>());
    REQUIRE(report["witnesses"].size() >= 1);
    CHECK(report["witnesses"][0]["check"] == "gap");
    CHECK(report["witnesses"][0]["T"].get<double>() == 0);
    std::remove(path.c_str());
  }
  SUBCASE("Schottky passes") {
    const auto r = run({"certify", "--rep", "corpus:schottky-3-pi4", "--depth", "6", "--window", "100"});
    CHECK(r.code == cli::kExitPass);
    const auto j = r.json();
    CHECK(j["report"]["passed"].get<bool>());
    CHECK(j["report"]["witnesses"].empty());
    CHECK(j["report"]["gap"]["fit"]["c"].get<double>() > 0);
  }
  SUBCASE("block family fails the lower CLI along b") {
    const auto r = run({"certify", "--rep", "corpus:appendix-a-t0", "--theta", "1,2,3", "--kappa", "0.05", "--ray",
                        "(b)", "--window", "400", "--depth", "6"});
    CHECK(r.code == cli::kExitCertifiedFailure);
    const auto witnesses = r.json()["report"]["witnesses"];
    const Json* cli_witness = nullptr;
    for (const auto& w : witnesses) {
      if (w["check"] == "cli" && w["root"] == Json::array({2, 3})) cli_witness = &w;
    }
    REQUIRE(cli_witness != nullptr);
    CHECK((*cli_witness)["ray"] == "(b)");
    // Along b^n the (2,3) pairing is 2 asinh(n/2); maximise the CLI defect directly.
    auto x = [](int n) { return 2 * std::asinh(n / 2.0); };
    double best = -1;
    for (int n = 0; n <= 400; ++n) {
      for (int k = n; k <= 400; ++k) best = std::max(best, 0.05 * (k - n) - (x(k) - x(n)));
    }
    CHECK((*cli_witness)["kappa_prime"].get<double>() == doctest::Approx(best).epsilon(1e-9));
    CHECK(best > 10);
  }
  SUBCASE("worker count does not change the report") {
    const std::vector<std::string> base{"certify", "--rep", "corpus:schottky-3-pi4", "--depth", "6", "--window", "50"};
    auto many = base;
    many.insert(many.end(), {"--workers", "3"});
    CHECK(run(base).out == run(many).out);
  }
}

TEST_CASE("limit sets") {
  SUBCASE("rank one gives two rows") {
    const auto path = write_temp("test_cli_rank1.json",
                                 R"({"dimension": 2, "rank": 1, "generators": [[["2", "0"], ["0", "0.5"]]]})");
    const auto r = run({"limit-set", "--rep", path, "--epsilon", "1e-9"});
    CHECK(r.code == cli::kExitPass);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
    std::remove(path.c_str());
  }
  SUBCASE("seeded random rays replay byte for byte") {
    const std::vector<std::string> args{"limit-set", "--rep", "corpus:schottky-3-pi4", "--random", "5", "--seed", "42"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == cli::kExitPass);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 6);
    auto other = args;
    other.back() = "43";
    CHECK(run(other).out != a.out);
  }
  SUBCASE("json report with transversality") {
    const auto r = run({"limit-set", "--rep", "corpus:schottky-3-pi4", "--format", "json", "--max-period", "2"});
    CHECK(r.code == cli::kExitPass);
    const auto report = r.json()["report"];
    CHECK(report["transversality"]["margin"].get<double>() > 0);
    CHECK(report["failures"].empty());
  }
  SUBCASE("output file") {
    const std::string path = "test_cli_points.csv";
    const auto r = run({"limit-set", "--rep", "corpus:schottky-3-pi4", "--max-period", "1", "-o", path});
    CHECK(r.code == cli::kExitPass);
    CHECK(r.out.empty());
    CHECK(io::read_file(path).starts_with("ray_id,n0,error_budget"));
    std::remove(path.c_str());
  }
}

TEST_CASE("dynamics, proximality and domination") {
  CHECK(run({"dynamics", "--rep", "corpus:schottky-3-pi4", "--word", "a b"}).code == cli::kExitPass);
  CHECK(run({"dynamics", "--rep", "corpus:parabolic", "--word", "a"}).code == cli::kExitCertifiedFailure);
  CHECK(run({"proximal", "--rep", "corpus:schottky-3-pi4", "--word", "a b", "--theta", "1"}).code ==
        cli::kExitPass);
  CHECK(run({"proximal", "--rep", "corpus:parabolic", "--word", "a", "--theta", "1"}).code ==
        cli::kExitCertifiedFailure);
  const auto path = write_temp("test_cli_dom_trivial.json", kTrivial);
  CHECK(run({"domination", "--left", "corpus:schottky-3-pi4", "--right", path, "--depth", "3"}).code ==
        cli::kExitPass);
  CHECK(run({"domination", "--left", "corpus:schottky-3-pi4", "--right", "corpus:schottky-3-pi4", "--depth", "3"})
            .code == cli::kExitCertifiedFailure);
  std::remove(path.c_str());
}

TEST_CASE("properness") {
  CHECK(run({"proper", "walls", "--rep", "corpus:schottky-3-pi4", "--depth", "5"}).code == cli::kExitPass);
  CHECK(run({"proper", "gm", "--left", "corpus:schottky-3-pi4", "--right", "corpus:schottky-3-pi4", "--depth", "4"})
            .code == cli::kExitCertifiedFailure);
  CHECK(run({"proper", "gm", "--left", "corpus:schottky-3-pi4", "--right", "corpus:sl3-cocycle", "--depth", "3"})
            .code == cli::kExitInputError);
}

TEST_CASE("lift") {
  const auto r = run({"lift", "--rep", "corpus:schottky-3-pi4", "--corner", "3"});
  REQUIRE(r.code == cli::kExitPass);
  const auto rep = io::parse_representation(r.out);
  CHECK(rep.dimension() == 3);
  CHECK(rep.generator_matrices()[0](2, 2) == 1);
  const auto ext = run({"lift", "--rep", "corpus:sl3-cocycle", "--exterior", "2"});
  CHECK(ext.code == cli::kExitPass);
  CHECK(io::parse_representation(ext.out).dimension() == 3);
  const auto sum = run({"lift", "--rep", "corpus:schottky-3-pi4", "--sum", "corpus:schottky-0.1-pi4"});
  CHECK(io::parse_representation(sum.out).dimension() == 4);
}

TEST_CASE("corpus commands") {
  const auto list = run({"corpus", "list"});
  CHECK(list.code == cli::kExitPass);
  CHECK(list.out.find("parabolic") != std::string::npos);
  const auto exported = run({"corpus", "export", "schottky-3-pi4"});
  CHECK(io::parse_representation(exported.out).rank() == 2);
  CHECK(run({"corpus", "export", "nope"}).code == cli::kExitInputError);
}

TEST_CASE("family demo") {
  const auto r = run({"demo-appendix-a", "--grid", "0,0.5,1", "--depth", "4", "--window", "60"});
  REQUIRE(r.code == cli::kExitPass);
  const auto rows = r.json()["report"]["rows"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["b_alpha_type"] == "parabolic");
  CHECK(rows[1]["b_alpha_type"] == "elliptic");
  CHECK(rows[2]["b_alpha_type"] == "central");
  CHECK(run({"demo-appendix-a", "--grid", "2"}).code == cli::kExitInputError);
}
