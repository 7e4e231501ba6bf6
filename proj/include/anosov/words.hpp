#pragma once

// Combinatorics of the free group F_r: reduced words, geodesic enumeration,
// eventually periodic rays and stable length. The Cayley graph of F_r is a
// tree, so reduced words are exactly the geodesics from the identity.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace anosov::words {

/// A generator or its formal inverse. Codes are ordered
/// a_1 < a_1^-1 < a_2 < a_2^-1 < ..., which is the enumeration order.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr explicit Letter(int code) : code_(static_cast<std::uint8_t>(code)) {}
  static constexpr Letter generator(int index, bool inverse = false) {
    return Letter(2 * index + (inverse ? 1 : 0));
  }

  constexpr int code() const { return code_; }
  constexpr int generator_index() const { return code_ >> 1; }
  constexpr bool is_inverse() const { return (code_ & 1) != 0; }
  constexpr Letter inverse() const { return Letter(code_ ^ 1); }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint8_t code_ = 0;
};

class Alphabet {
 public:
  static constexpr int kMaxRank = 26;

  explicit Alphabet(int rank);

  int rank() const { return rank_; }
  int size() const { return 2 * rank_; }
  bool contains(Letter l) const { return l.code() < size(); }
  Letter letter(int code) const;

  /// 'a'..'z' are generators, 'A'..'Z' their inverses.
  Letter parse(char symbol) const;
  static char symbol(Letter l);

  bool operator==(const Alphabet&) const = default;

 private:
  int rank_;
};

/// A freely reduced word; its length is the word length in F_r.
class ReducedWord {
 public:
  ReducedWord() = default;

  /// Throws InputError if the sequence contains a cancelling pair.
  static ReducedWord from_reduced(std::vector<Letter> letters);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  ReducedWord inverse() const;
  ReducedWord power(std::size_t n) const;
  /// Reduced product.
  ReducedWord operator*(const ReducedWord& rhs) const;
  bool is_cyclically_reduced() const;
  ReducedWord subword(std::size_t pos, std::size_t count) const;

  auto operator<=>(const ReducedWord&) const = default;

 private:
  explicit ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  friend ReducedWord reduce(std::span<const Letter> letters);

  std::vector<Letter> letters_;
};

/// Free reduction by a single stack pass.
ReducedWord reduce(std::span<const Letter> letters);

/// Parses letters such as "a B a a" or "aBaa" (whitespace ignored).
/// Throws InputError on symbols outside the alphabet.
std::vector<Letter> parse_letters(const Alphabet& alphabet, std::string_view text);

inline ReducedWord parse_word(const Alphabet& alphabet, std::string_view text) {
  auto letters = parse_letters(alphabet, text);
  return reduce(letters);
}

/// "a B a a" when spaced, "aBaa" otherwise.
std::string to_string(const ReducedWord& w, bool spaced = true);

/// The cyclically reduced conjugate obtained by stripping matching
/// letter/inverse pairs from both ends.
ReducedWord cyclic_reduce(const ReducedWord& w);

/// lim |w^n|/n, which in a tree equals the cyclically reduced length.
inline std::size_t stable_length(const ReducedWord& w) { return cyclic_reduce(w).size(); }

/// Shortest u with w = u^k.
ReducedWord primitive_root(const ReducedWord& w);

/// Number of reduced words of length L: 2r(2r-1)^(L-1) for L >= 1.
std::uint64_t geodesic_count(const Alphabet& alphabet, int length);

/// Default guard on exhaustive enumeration.
inline constexpr std::uint64_t kDefaultEnumerationCap = 50'000'000;

/// Visits every reduced word of exactly `length` letters once, in lex order.
/// Throws ResourceCapExceeded when the count is above `cap`.
void for_each_geodesic(const Alphabet& alphabet, int length,
                       const std::function<void(std::span<const Letter>)>& visit,
                       std::uint64_t cap = kDefaultEnumerationCap);

std::vector<ReducedWord> enumerate_geodesics(const Alphabet& alphabet, int length,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// Cyclically reduced words of exactly `length` letters, in lex order.
std::vector<ReducedWord> enumerate_cyclically_reduced(const Alphabet& alphabet, int length,
                                                      std::uint64_t cap = kDefaultEnumerationCap);

/// A geodesic ray from the identity. Either prefix * period^infinity with no
/// cancellation at the junctions, or a seeded pseudo-random reduced sequence.
class Ray {
 public:
  /// Throws InputError when the period is empty or not cyclically reduced,
  /// or when prefix and period cancel at the junction.
  static Ray periodic(ReducedWord prefix, ReducedWord period);
  static Ray random(const Alphabet& alphabet, std::uint64_t seed);

  bool is_periodic() const { return !seed_.has_value(); }
  const ReducedWord& prefix() const { return prefix_; }
  const ReducedWord& period() const { return period_; }

  /// Compact identifier: "b(a)", "(ab)", or "rand:<seed>".
  std::string id() const;

  /// The first `count` letters of the ray.
  std::vector<Letter> letters(std::size_t count) const;

  /// gamma_0 = e, gamma_1, ..., gamma_N.
  std::vector<ReducedWord> prefixes(std::size_t n) const;

  /// The ray gamma_1^-1 * ray (its first letter removed). Periodic rays only.
  Ray shifted() const;

  /// Primitive period and shortest prefix describing the same ray.
  Ray canonical() const;

  bool operator==(const Ray& other) const;

 private:
  Ray() = default;

  ReducedWord prefix_;
  ReducedWord period_;
  std::optional<std::uint64_t> seed_;
  int rank_ = 0;
};

/// Free function form of Ray::prefixes.
inline std::vector<ReducedWord> ray_prefixes(const Ray& ray, std::size_t n) {
  return ray.prefixes(n);
}

/// All distinct eventually periodic rays with prefix length <= max_prefix and
/// primitive period length in [1, max_period], in canonical form.
std::vector<Ray> eventually_periodic_rays(const Alphabet& alphabet, int max_prefix,
                                          int max_period);

/// `count` seeded random rays; ray i uses a seed derived from (seed, i).
std::vector<Ray> random_rays(const Alphabet& alphabet, std::size_t count, std::uint64_t seed);

/// Length of the common prefix of two rays, compared up to `horizon` letters.
std::size_t gromov_product(const Ray& a, const Ray& b, std::size_t horizon = 256);

}  // namespace anosov::words
