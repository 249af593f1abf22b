#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dexnet/errors.hpp"

namespace dexnet {

// Fixed-point decimal with 6 fractional digits, backed by a 128-bit integer.
// All USD quantities (prices, reserves, TVL) use this type so that sums and
// differences of dataset values are exact. Multiplication truncates the
// result toward zero at the 6th fractional digit.
class Fixed6 {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Fixed6() : raw_(0) {}

  static constexpr Fixed6 from_raw(__int128 raw) { return Fixed6(raw); }
  static constexpr Fixed6 from_int(std::int64_t units) {
    return Fixed6(static_cast<__int128>(units) * kScale);
  }

  // Parses a plain decimal string: optional sign, digits, optional fraction.
  // Fractional digits beyond the 6th are truncated toward zero. Throws
  // ArgumentError on anything else (exponents, hex, empty input).
  static Fixed6 parse(std::string_view text);
  static std::optional<Fixed6> try_parse(std::string_view text);

  constexpr __int128 raw() const { return raw_; }
  double to_double() const { return static_cast<double>(raw_) / kScale; }

  // Exact decimal rendering, trailing fractional zeros trimmed ("40", "0.5").
  std::string str() const;

  Fixed6 operator+(Fixed6 o) const { return Fixed6(raw_ + o.raw_); }
  Fixed6 operator-(Fixed6 o) const { return Fixed6(raw_ - o.raw_); }
  Fixed6& operator+=(Fixed6 o) {
    raw_ += o.raw_;
    return *this;
  }
  Fixed6& operator-=(Fixed6 o) {
    raw_ -= o.raw_;
    return *this;
  }
  Fixed6 operator-() const { return Fixed6(-raw_); }

  // Product of two quantities (e.g. price * reserve), truncated toward zero.
  Fixed6 mul(Fixed6 o) const {
    __int128 p;
    if (__builtin_mul_overflow(raw_, o.raw_, &p))
      throw ArgumentError("fixed-point multiplication overflow");
    return Fixed6(p / kScale);
  }

  Fixed6 half() const { return Fixed6(raw_ / 2); }

  bool is_negative() const { return raw_ < 0; }
  bool is_zero() const { return raw_ == 0; }

  friend constexpr bool operator==(Fixed6 a, Fixed6 b) { return a.raw_ == b.raw_; }
  friend constexpr auto operator<=>(Fixed6 a, Fixed6 b) { return a.raw_ <=> b.raw_; }

 private:
  explicit constexpr Fixed6(__int128 raw) : raw_(raw) {}
  __int128 raw_;
};

// num/den as a double; 0 when den is zero.
double ratio(Fixed6 num, Fixed6 den);

}  // namespace dexnet
