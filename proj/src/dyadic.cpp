#include "pebbles/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace pebbles {

namespace {

constexpr unsigned kMaxExponent = 60;

std::int64_t scale(std::int64_t numerator, unsigned shift) {
  if (shift >= 63) throw std::overflow_error("dyadic exponent overflow");
  return numerator * (std::int64_t{1} << shift);
}

}  // namespace

DyadicRational::DyadicRational(std::int64_t numerator, unsigned exponent)
    : numerator_(numerator), exponent_(exponent) {
  if (exponent_ > kMaxExponent) throw std::overflow_error("dyadic exponent overflow");
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && numerator_ % 2 == 0) {
    numerator_ /= 2;
    --exponent_;
  }
}

std::int64_t DyadicRational::floor() const {
  // Arithmetic shift rounds toward negative infinity.
  return numerator_ >> exponent_;
}

std::int64_t DyadicRational::ceil() const {
  return -((-numerator_) >> exponent_);
}

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  unsigned e = std::max(a.exponent_, b.exponent_);
  return DyadicRational(scale(a.numerator_, e - a.exponent_) + scale(b.numerator_, e - b.exponent_), e);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  unsigned e = std::max(a.exponent_, b.exponent_);
  return scale(a.numerator_, e - a.exponent_) <=> scale(b.numerator_, e - b.exponent_);
}

DyadicRational DyadicRational::simplest_above(const DyadicRational& lo) {
  if (lo < DyadicRational{}) return DyadicRational{};
  return integer(lo.floor() + 1);
}

DyadicRational DyadicRational::simplest_below(const DyadicRational& hi) {
  if (hi > DyadicRational{}) return DyadicRational{};
  return integer(hi.ceil() - 1);
}

DyadicRational DyadicRational::simplest_between(const DyadicRational& lo, const DyadicRational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between requires lo < hi");
  const DyadicRational zero{};
  if (lo < zero && zero < hi) return zero;
  if (lo >= zero) {
    auto candidate = integer(lo.floor() + 1);
    if (candidate < hi) return candidate;
  } else {
    auto candidate = integer(hi.ceil() - 1);
    if (candidate > lo) return candidate;
  }
  // No integer strictly inside: the interval lies within (k, k+1). Find the
  // coarsest grid 2^-q that has a point strictly inside; it is unique.
  for (unsigned q = 1; q <= kMaxExponent; ++q) {
    // smallest m with m/2^q > lo
    std::int64_t m;
    {
      unsigned e = std::max(q, lo.exponent_);
      std::int64_t lo_scaled = scale(lo.numerator_, e - lo.exponent_);
      // lo = lo_scaled / 2^e ; m/2^q > lo  <=>  m * 2^(e-q) > lo_scaled
      std::int64_t unit = std::int64_t{1} << (e - q);
      m = (lo_scaled >= 0 ? lo_scaled / unit : -((-lo_scaled + unit - 1) / unit));
      while (m * unit <= lo_scaled) ++m;
    }
    DyadicRational candidate(m, q);
    if (candidate < hi) return candidate;
  }
  throw std::overflow_error("dyadic precision exhausted");
}

std::string DyadicRational::to_string() const {
  if (exponent_ == 0) return std::to_string(numerator_);
  return std::to_string(numerator_) + "/2^" + std::to_string(exponent_);
}

}  // namespace pebbles
