#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "anosov/corpus.hpp"
#include "anosov/io.hpp"
#include "anosov/reports.hpp"
#include "support.hpp"

using namespace anosov;
using namespace anosov::io;
using scaledlin::Matrix;

namespace {

constexpr const char* kValid = R"({
  "dimension": 2,
  "rank": 2,
  "generators": [
    [["2", "0"], ["0", "0.5"]],
    [["1", "1"], ["0", "1"]]
  ]
})";

std::string message_of(std::string_view text) {
  try {
    parse_representation(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a representation file") {
  const auto rep = parse_representation(kValid);
  CHECK(rep.dimension() == 2);
  CHECK(rep.rank() == 2);
  const auto gens = rep.generator_matrices();
  CHECK(gens[0](1, 1) == 0.5);
  CHECK(gens[1](0, 1) == 1);
  CHECK(rep.block_sizes() == std::vector<int>{2});
}

TEST_CASE("syntax errors carry line and column") {
  const std::string text = "{\n  \"dimension\": 2,\n  \"rank\" 1\n}";
  const auto msg = message_of(text);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("entries must be decimal strings") {
  const std::string numeric = R"({"dimension": 1, "rank": 1, "generators": [[[2]]]})";
  CHECK(message_of(numeric).find("decimal strings") != std::string::npos);
  for (const char* bad : {"\"abc\"", "\"1e999\"", "\"nan\"", "\"1,5\"", "\"\""}) {
    const std::string text = std::string(R"({"dimension": 1, "rank": 1, "generators": [[[)") + bad + "]]]}";
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_representation(text), InputError);
  }
  const auto ok = parse_representation(R"({"dimension": 1, "rank": 1, "generators": [[["+2.5e1"]]]})");
  CHECK(ok.generator_matrices()[0](0, 0) == 25);
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(parse_representation("[]"), InputError);
  CHECK_THROWS_AS(parse_representation(R"({"rank": 1, "generators": []})"), InputError);
  CHECK_THROWS_AS(parse_representation(R"({"dimension": 2, "rank": 2, "generators": [[["1","0"],["0","1"]]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_representation(R"({"dimension": 2, "rank": 1, "generators": [[["1","0"]]]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(parse_representation(R"({"dimension": 2, "rank": 1, "generators": [[["1","0"],["0"]]]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(parse_representation(R"({"dimension": 2, "rank": 1, "generators": [[["1","1"],["1","1"]]]})"),
                  InputError);
  CHECK_THROWS_AS(load_representation("/nonexistent/rep.json"), InputError);
}

TEST_CASE("blocks") {
  const auto rep = parse_representation(R"({"dimension": 3, "rank": 1, "blocks": [2, 1],
    "generators": [[["2","0","0"],["0","0.5","0"],["0","0","1"]]]})");
  CHECK(rep.block_sizes() == std::vector<int>{2, 1});
  CHECK_THROWS_AS(parse_representation(R"({"dimension": 2, "rank": 1, "blocks": [1, 1],
    "generators": [[["1","1"],["0","1"]]]})"),
                  InputError);
}

TEST_CASE("round trip through JSON") {
  std::mt19937_64 rng(9);
  for (const auto& rep : {corpus::schottky(1, std::numbers::pi / 7), corpus::appendix_a_family(0.3),
                          Representation::from_matrices(2, {testing::special_linear(rng, 3),
                                                            testing::special_linear(rng, 3)})}) {
    const std::string text = representation_to_json(rep).dump();
    const auto back = parse_representation(text);
    const auto a = rep.generator_matrices();
    const auto b = back.generator_matrices();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0);
    CHECK(back.block_sizes() == rep.block_sizes());
    CHECK(representation_hash(back) == representation_hash(rep));
  }
}

TEST_CASE("loading from a file") {
  const std::string path = "test_io_rep.json";
  {
    std::ofstream out(path);
    out << kValid;
  }
  const auto rep = load_representation(path);
  CHECK(representation_hash(rep) == representation_hash(parse_representation(kValid)));
  std::remove(path.c_str());
}

TEST_CASE("hashing") {
  // Published FNV-1a 64-bit test vectors.
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex_hash("") == "cbf29ce484222325");
  const auto a = corpus::schottky(1, std::numbers::pi / 4);
  const auto b = corpus::schottky(1.0000001, std::numbers::pi / 4);
  CHECK(representation_hash(a) == representation_hash(corpus::schottky(1, std::numbers::pi / 4)));
  CHECK(representation_hash(a) != representation_hash(b));
}

TEST_CASE("number formatting") {
  CHECK(format12(1.0 / 3) == "0.333333333333");
  CHECK(format12(-0.0) == "0");
  CHECK(round12(std::numbers::pi) == 3.14159265359);
  CHECK(number(std::numeric_limits<double>::infinity()).is_null());
  CHECK(number(std::nan("")).is_null());
  const std::vector<double> v{1, std::numeric_limits<double>::infinity()};
  CHECK(numbers(v).dump() == "[1.0,null]");
  CHECK(dump(Json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
}

TEST_CASE("report envelopes") {
  const Json config{{"depth", 3}};
  const auto env = reports::envelope("gap", config, Json{{"passed", true}});
  CHECK(env["schema_version"] == kSchemaVersion);
  CHECK(env["kind"] == "gap");
  CHECK(env["config_hash"] == hex_hash(config.dump()));
  CHECK(env["report"]["passed"] == true);
}
