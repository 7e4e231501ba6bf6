#pragma once

// Representation files, number formatting and config hashing shared by the
// report writers and the command-line front end.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "anosov/representation.hpp"
#include "json.hpp"

namespace anosov::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses { "dimension", "rank", "generators": [[[ "decimal", ... ], ...], ...],
/// optional "blocks": [sizes] }. Entries must be decimal strings. Throws
/// InputError carrying line and column for syntax errors.
Representation parse_representation(std::string_view text);
Representation load_representation(const std::string& path);

/// Generator entries are written with 17 significant digits so they round-trip.
Json representation_to_json(const Representation& rep);

/// Value rounded to 12 significant digits, as printed in reports.
double round12(double v);
/// round12, with non-finite values mapped to null.
Json number(double v);
Json numbers(std::span<const double> v);
Json numbers(const scaledlin::Vector& v);

/// "%.12g".
std::string format12(double v);

std::uint64_t fnv1a(std::string_view bytes);
/// 16 hex digits of fnv1a.
std::string hex_hash(std::string_view bytes);
std::string representation_hash(const Representation& rep);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

std::string read_file(const std::string& path);

}  // namespace anosov::io
