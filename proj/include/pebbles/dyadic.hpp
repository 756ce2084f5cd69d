#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace pebbles {

// A rational of the form numerator / 2^exponent, kept fully reduced
// (numerator odd, or exponent zero).
class DyadicRational {
 public:
  constexpr DyadicRational() = default;
  DyadicRational(std::int64_t numerator, unsigned exponent = 0);

  static DyadicRational integer(std::int64_t n) { return DyadicRational(n, 0); }

  std::int64_t numerator() const { return numerator_; }
  unsigned exponent() const { return exponent_; }
  bool is_integer() const { return exponent_ == 0; }

  // Largest integer <= value / smallest integer >= value.
  std::int64_t floor() const;
  std::int64_t ceil() const;

  DyadicRational operator-() const { return DyadicRational(-numerator_, exponent_); }
  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
    return a + (-b);
  }

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  // The simplest dyadic strictly between lo and hi (lo < hi).
  static DyadicRational simplest_between(const DyadicRational& lo, const DyadicRational& hi);
  // Simplest number strictly greater than lo / strictly less than hi.
  static DyadicRational simplest_above(const DyadicRational& lo);
  static DyadicRational simplest_below(const DyadicRational& hi);

  // `n` for integers, `p/2^q` otherwise.
  std::string to_string() const;

 private:
  std::int64_t numerator_ = 0;
  unsigned exponent_ = 0;
};

}  // namespace pebbles
