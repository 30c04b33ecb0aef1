#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace henondim {

// Symbolic word over {0, ..., d-1}. The orbit of a horseshoe is identified by
// the cyclic class of its word; the canonical representative is the
// lexicographically least rotation.
class Itinerary {
 public:
  Itinerary() = default;
  Itinerary(std::vector<std::uint8_t> word, int alphabet);

  const std::vector<std::uint8_t>& word() const { return word_; }
  int alphabet() const { return alphabet_; }
  int length() const { return static_cast<int>(word_.size()); }

  Itinerary canonical() const;
  bool is_canonical() const;
  // Smallest m such that the word is a repetition of its first m symbols.
  int primitive_period() const;
  bool is_primitive() const { return primitive_period() == length(); }
  Itinerary rotated(int shift) const;
  // Offset k such that rotated(k) == canonical().
  int canonical_shift() const;

  // Digits 0-9 then a-z; alphabets above 36 are not representable.
  std::string to_string() const;
  static Itinerary parse(std::string_view text, int alphabet);

  friend bool operator==(const Itinerary&, const Itinerary&) = default;
  friend auto operator<=>(const Itinerary& a, const Itinerary& b) { return a.word_ <=> b.word_; }

 private:
  std::vector<std::uint8_t> word_;
  int alphabet_ = 2;
};

// All canonical words of length n in ascending order; primitive ones and
// repetitions alike.
std::vector<Itinerary> canonical_words(int alphabet, int n);

// Number of primitive cyclic classes of length n (Moreau's necklace count).
std::uint64_t primitive_orbit_count(int alphabet, int n);

}  // namespace henondim
