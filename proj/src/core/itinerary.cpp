#include "itinerary.hpp"

#include <algorithm>
#include <utility>

#include "errors.hpp"

namespace henondim {

namespace {

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

bool rotation_less(const std::vector<std::uint8_t>& w, int a, int b) {
  const int n = static_cast<int>(w.size());
  for (int k = 0; k < n; ++k) {
    const auto x = w[(a + k) % n];
    const auto y = w[(b + k) % n];
    if (x != y) return x < y;
  }
  return false;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

Itinerary::Itinerary(std::vector<std::uint8_t> word, int alphabet)
    : word_(std::move(word)), alphabet_(alphabet) {
  if (alphabet_ < 2 || alphabet_ > 255) {
    throw Error(ErrorTag::invalid_argument, "alphabet size must lie in [2, 255]");
  }
  for (auto s : word_) {
    if (s >= alphabet_) throw Error(ErrorTag::invalid_argument, "symbol outside the alphabet");
  }
}

int Itinerary::canonical_shift() const {
  int best = 0;
  for (int k = 1; k < length(); ++k) {
    if (rotation_less(word_, k, best)) best = k;
  }
  return best;
}

Itinerary Itinerary::rotated(int shift) const {
  const int n = length();
  if (n == 0) return *this;
  shift = ((shift % n) + n) % n;
  std::vector<std::uint8_t> w(word_.begin() + shift, word_.end());
  w.insert(w.end(), word_.begin(), word_.begin() + shift);
  return Itinerary(std::move(w), alphabet_);
}

Itinerary Itinerary::canonical() const { return rotated(canonical_shift()); }

bool Itinerary::is_canonical() const {
  for (int k = 1; k < length(); ++k) {
    if (rotation_less(word_, k, 0)) return false;
  }
  return true;
}

int Itinerary::primitive_period() const {
  const int n = length();
  for (int m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    bool repeats = true;
    for (int k = m; k < n && repeats; ++k) repeats = word_[k] == word_[k - m];
    if (repeats) return m;
  }
  return n;
}

std::string Itinerary::to_string() const {
  if (alphabet_ > static_cast<int>(kDigits.size())) {
    throw Error(ErrorTag::invalid_argument, "alphabet too large for text itineraries");
  }
  std::string s;
  s.reserve(word_.size());
  for (auto c : word_) s.push_back(kDigits[c]);
  return s;
}

Itinerary Itinerary::parse(std::string_view text, int alphabet) {
  std::vector<std::uint8_t> w;
  w.reserve(text.size());
  for (char c : text) {
    const auto pos = kDigits.find(c);
    if (pos == std::string_view::npos || static_cast<int>(pos) >= alphabet) {
      throw Error(ErrorTag::invalid_argument, "bad itinerary symbol '" + std::string(1, c) + "'");
    }
    w.push_back(static_cast<std::uint8_t>(pos));
  }
  if (w.empty()) throw Error(ErrorTag::invalid_argument, "empty itinerary");
  return Itinerary(std::move(w), alphabet);
}

std::vector<Itinerary> canonical_words(int alphabet, int n) {
  std::vector<Itinerary> out;
  std::vector<std::uint8_t> w(n, 0);
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(alphabet), n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // Most-significant symbol first, so idx order is lexicographic order.
    std::uint64_t rest = idx;
    for (int k = n - 1; k >= 0; --k) {
      w[k] = static_cast<std::uint8_t>(rest % alphabet);
      rest /= alphabet;
    }
    Itinerary it(w, alphabet);
    if (it.is_canonical()) out.push_back(std::move(it));
  }
  return out;
}

std::uint64_t primitive_orbit_count(int alphabet, int n) {
  std::int64_t sum = 0;
  for (int m = 1; m <= n; ++m) {
    if (n % m == 0) sum += mobius(n / m) * static_cast<std::int64_t>(ipow(alphabet, m));
  }
  return static_cast<std::uint64_t>(sum / n);
}

}  // namespace henondim
