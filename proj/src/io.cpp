#include "anosov/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace anosov::io {

namespace {

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double parse_decimal(const Json& entry, const std::string& where) {
  if (!entry.is_string()) throw InputError(where + ": matrix entries must be decimal strings");
  const auto& s = entry.get_ref<const std::string&>();
  double value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw InputError(where + ": '" + s + "' is not a finite decimal");
  }
  return value;
}

int require_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InputError(std::string("representation needs integer field \"") + key + "\"");
  }
  return j[key].get<int>();
}

std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Representation parse_representation(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("JSON syntax error at " + location(text, e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("representation must be a JSON object");
  const int d = require_int(j, "dimension");
  const int r = require_int(j, "rank");
  if (d < 1) throw InputError("dimension must be >= 1");
  if (r < 1 || r > words::Alphabet::kMaxRank) throw InputError("rank must be in [1, 26]");
  if (!j.contains("generators") || !j["generators"].is_array()) {
    throw InputError("representation needs a \"generators\" array");
  }
  const auto& gens = j["generators"];
  if (static_cast<int>(gens.size()) != r) {
    throw InputError("rank is " + std::to_string(r) + " but " + std::to_string(gens.size()) +
                     " generators were given");
  }
  std::vector<scaledlin::Matrix> matrices;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string where = "generator " + std::to_string(g + 1);
    const auto& rows = gens[g];
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
      throw DimensionMismatch(where + ": expected " + std::to_string(d) + " rows");
    }
    scaledlin::Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != d) {
        throw DimensionMismatch(where + " row " + std::to_string(i + 1) + ": expected " + std::to_string(d) +
                                " entries");
      }
      for (int k = 0; k < d; ++k) {
        m(i, k) = parse_decimal(row[static_cast<std::size_t>(k)],
                                where + " entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")");
      }
    }
    matrices.push_back(std::move(m));
  }
  std::vector<int> blocks;
  if (j.contains("blocks")) {
    if (!j["blocks"].is_array()) throw InputError("\"blocks\" must be an array of sizes");
    for (const auto& b : j["blocks"]) {
      if (!b.is_number_integer()) throw InputError("\"blocks\" entries must be integers");
      blocks.push_back(b.get<int>());
    }
  }
  return Representation::from_matrices(r, matrices, blocks);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Representation load_representation(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_representation(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json representation_to_json(const Representation& rep) {
  Json j;
  j["dimension"] = rep.dimension();
  j["rank"] = rep.rank();
  Json gens = Json::array();
  for (const auto& m : rep.generator_matrices()) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(format_exact(m(i, k) == 0 ? 0.0 : m(i, k)));
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  j["generators"] = std::move(gens);
  const auto sizes = rep.block_sizes();
  if (sizes.size() > 1) j["blocks"] = sizes;
  return j;
}

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format12(v));
}

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

Json numbers(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Json numbers(const scaledlin::Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex_hash(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string representation_hash(const Representation& rep) {
  return hex_hash(representation_to_json(rep).dump());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace anosov::io
