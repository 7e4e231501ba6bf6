#include "anosov/words.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include "anosov/error.hpp"

namespace anosov::words {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw InputError("alphabet rank must be in [1, 26], got " + std::to_string(rank));
  }
}

Letter Alphabet::letter(int code) const {
  if (code < 0 || code >= size()) {
    throw InputError("letter code " + std::to_string(code) + " outside alphabet of rank " +
                     std::to_string(rank_));
  }
  return Letter(code);
}

Letter Alphabet::parse(char symbol) const {
  const unsigned char c = static_cast<unsigned char>(symbol);
  if (std::islower(c) && symbol - 'a' < rank_) return Letter::generator(symbol - 'a', false);
  if (std::isupper(c) && symbol - 'A' < rank_) return Letter::generator(symbol - 'A', true);
  throw InputError(std::string("unknown letter symbol '") + symbol + "' for rank " +
                   std::to_string(rank_));
}

char Alphabet::symbol(Letter l) {
  const char base = l.is_inverse() ? 'A' : 'a';
  return static_cast<char>(base + l.generator_index());
}

ReducedWord ReducedWord::from_reduced(std::vector<Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i] == letters[i - 1].inverse()) {
      throw InputError("word is not reduced at position " + std::to_string(i));
    }
  }
  return ReducedWord(std::move(letters));
}

ReducedWord reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return ReducedWord(std::move(out));
}

ReducedWord ReducedWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = l.inverse();
  return ReducedWord(std::move(out));
}

ReducedWord ReducedWord::operator*(const ReducedWord& rhs) const {
  std::vector<Letter> joined(letters_);
  joined.insert(joined.end(), rhs.letters_.begin(), rhs.letters_.end());
  return reduce(joined);
}

ReducedWord ReducedWord::power(std::size_t n) const {
  ReducedWord out;
  for (std::size_t i = 0; i < n; ++i) out = out * *this;
  return out;
}

bool ReducedWord::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
}

ReducedWord ReducedWord::subword(std::size_t pos, std::size_t count) const {
  auto first = letters_.begin() + static_cast<std::ptrdiff_t>(pos);
  return ReducedWord(std::vector<Letter>(first, first + static_cast<std::ptrdiff_t>(count)));
}

std::vector<Letter> parse_letters(const Alphabet& alphabet, std::string_view text) {
  std::vector<Letter> out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(alphabet.parse(c));
  }
  return out;
}

std::string to_string(const ReducedWord& w, bool spaced) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spaced && i > 0) out.push_back(' ');
    out.push_back(Alphabet::symbol(w[i]));
  }
  return out;
}

ReducedWord cyclic_reduce(const ReducedWord& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return w.subword(lo, hi - lo);
}

ReducedWord primitive_root(const ReducedWord& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return w.subword(0, p);
  }
  return w;
}

std::uint64_t geodesic_count(const Alphabet& alphabet, int length) {
  if (length < 0) throw InputError("negative length");
  if (length == 0) return 1;
  const std::uint64_t branch = static_cast<std::uint64_t>(alphabet.size() - 1);
  std::uint64_t count = static_cast<std::uint64_t>(alphabet.size());
  for (int i = 1; i < length; ++i) {
    if (branch != 0 && count > UINT64_MAX / branch) return UINT64_MAX;
    count *= branch;
  }
  return count;
}

namespace {

void geodesic_dfs(const Alphabet& alphabet, int length, std::vector<Letter>& stack,
                  const std::function<void(std::span<const Letter>)>& visit) {
  if (static_cast<int>(stack.size()) == length) {
    visit(stack);
    return;
  }
  for (int code = 0; code < alphabet.size(); ++code) {
    const Letter l(code);
    if (!stack.empty() && stack.back() == l.inverse()) continue;
    stack.push_back(l);
    geodesic_dfs(alphabet, length, stack, visit);
    stack.pop_back();
  }
}

}  // namespace

void for_each_geodesic(const Alphabet& alphabet, int length,
                       const std::function<void(std::span<const Letter>)>& visit,
                       std::uint64_t cap) {
  const auto count = geodesic_count(alphabet, length);
  if (count > cap) {
    throw ResourceCapExceeded("enumeration of " + std::to_string(count) +
                              " words exceeds cap " + std::to_string(cap));
  }
  std::vector<Letter> stack;
  stack.reserve(static_cast<std::size_t>(length));
  geodesic_dfs(alphabet, length, stack, visit);
}

std::vector<ReducedWord> enumerate_geodesics(const Alphabet& alphabet, int length,
                                             std::uint64_t cap) {
  std::vector<ReducedWord> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(geodesic_count(alphabet, length), cap)));
  for_each_geodesic(
      alphabet, length,
      [&](std::span<const Letter> w) {
        out.push_back(ReducedWord::from_reduced({w.begin(), w.end()}));
      },
      cap);
  return out;
}

std::vector<ReducedWord> enumerate_cyclically_reduced(const Alphabet& alphabet, int length,
                                                      std::uint64_t cap) {
  std::vector<ReducedWord> out;
  for_each_geodesic(
      alphabet, length,
      [&](std::span<const Letter> w) {
        if (w.size() >= 2 && w.front() == w.back().inverse()) return;
        out.push_back(ReducedWord::from_reduced({w.begin(), w.end()}));
      },
      cap);
  return out;
}

// ---------------------------------------------------------------------------
// Rays

Ray Ray::periodic(ReducedWord prefix, ReducedWord period) {
  if (period.empty()) throw InputError("ray period must be nonempty");
  if (!period.is_cyclically_reduced()) {
    throw InputError("ray period '" + to_string(period, false) + "' is not cyclically reduced");
  }
  if (!prefix.empty() && prefix.back() == period.front().inverse()) {
    throw InputError("ray prefix '" + to_string(prefix, false) + "' cancels against period '" +
                     to_string(period, false) + "'");
  }
  Ray ray;
  ray.prefix_ = std::move(prefix);
  ray.period_ = std::move(period);
  return ray;
}

Ray Ray::random(const Alphabet& alphabet, std::uint64_t seed) {
  Ray ray;
  ray.seed_ = seed;
  ray.rank_ = alphabet.rank();
  return ray;
}

std::string Ray::id() const {
  if (seed_) return "rand:" + std::to_string(*seed_);
  return to_string(prefix_, false) + "(" + to_string(period_, false) + ")";
}

std::vector<Letter> Ray::letters(std::size_t count) const {
  std::vector<Letter> out;
  out.reserve(count);
  if (seed_) {
    // mt19937_64 output is fixed by the standard; reduce with a plain modulus so
    // the sequence does not depend on the library's distribution code.
    std::mt19937_64 rng(*seed_);
    const std::uint64_t size = static_cast<std::uint64_t>(2 * rank_);
    for (std::size_t i = 0; i < count; ++i) {
      if (out.empty()) {
        out.emplace_back(static_cast<int>(rng() % size));
      } else {
        const int forbidden = out.back().inverse().code();
        int code = static_cast<int>(rng() % (size - 1));
        if (code >= forbidden) ++code;
        out.emplace_back(code);
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (i < prefix_.size()) {
      out.push_back(prefix_[i]);
    } else {
      out.push_back(period_[(i - prefix_.size()) % period_.size()]);
    }
  }
  return out;
}

std::vector<ReducedWord> Ray::prefixes(std::size_t n) const {
  const auto all = letters(n);
  std::vector<ReducedWord> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out.push_back(ReducedWord::from_reduced({all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k)}));
  }
  return out;
}

Ray Ray::shifted() const {
  if (seed_) throw InputError("shifted() needs a periodic ray");
  if (!prefix_.empty()) {
    return Ray::periodic(prefix_.subword(1, prefix_.size() - 1), period_).canonical();
  }
  std::vector<Letter> rotated(period_.letters().begin() + 1, period_.letters().end());
  rotated.push_back(period_.front());
  return Ray::periodic(ReducedWord(), ReducedWord::from_reduced(std::move(rotated))).canonical();
}

Ray Ray::canonical() const {
  if (seed_) return *this;
  ReducedWord period = primitive_root(period_);
  std::vector<Letter> prefix(prefix_.letters().begin(), prefix_.letters().end());
  std::vector<Letter> per(period.letters().begin(), period.letters().end());
  while (!prefix.empty() && prefix.back() == per.back()) {
    prefix.pop_back();
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
  }
  return Ray::periodic(ReducedWord::from_reduced(std::move(prefix)),
                       ReducedWord::from_reduced(std::move(per)));
}

bool Ray::operator==(const Ray& other) const {
  if (seed_ || other.seed_) return seed_ == other.seed_ && rank_ == other.rank_;
  const Ray a = canonical();
  const Ray b = other.canonical();
  return a.prefix_ == b.prefix_ && a.period_ == b.period_;
}

std::vector<Ray> eventually_periodic_rays(const Alphabet& alphabet, int max_prefix,
                                          int max_period) {
  std::vector<Ray> out;
  std::set<std::pair<ReducedWord, ReducedWord>> seen;
  for (int q = 1; q <= max_period; ++q) {
    for (const auto& period : enumerate_cyclically_reduced(alphabet, q)) {
      if (primitive_root(period).size() != period.size()) continue;
      for (int p = 0; p <= max_prefix; ++p) {
        for (const auto& prefix : enumerate_geodesics(alphabet, p)) {
          if (!prefix.empty() && prefix.back() == period.front().inverse()) continue;
          Ray ray = Ray::periodic(prefix, period).canonical();
          if (seen.emplace(ray.prefix(), ray.period()).second) out.push_back(std::move(ray));
        }
      }
    }
  }
  return out;
}

std::vector<Ray> random_rays(const Alphabet& alphabet, std::size_t count, std::uint64_t seed) {
  std::vector<Ray> out;
  out.reserve(count);
  std::mt19937_64 mixer(seed);
  for (std::size_t i = 0; i < count; ++i) out.push_back(Ray::random(alphabet, mixer()));
  return out;
}

std::size_t gromov_product(const Ray& a, const Ray& b, std::size_t horizon) {
  const auto la = a.letters(horizon);
  const auto lb = b.letters(horizon);
  std::size_t k = 0;
  while (k < horizon && la[k] == lb[k]) ++k;
  return k;
}

}  // namespace anosov::words
