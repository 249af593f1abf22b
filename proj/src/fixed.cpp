#include "dexnet/fixed.hpp"

#include <cctype>

namespace dexnet {

namespace {

// 10^30 USD in raw units; enough for any dataset value, small enough that
// sums of millions of records cannot overflow __int128.
constexpr __int128 kMaxRaw = []() {
  __int128 v = 1;
  for (int i = 0; i < 36; ++i) v *= 10;
  return v;
}();

std::optional<__int128> parse_raw(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  __int128 integer = 0;
  std::size_t int_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    integer = integer * 10 + (text[i] - '0');
    if (integer > kMaxRaw) return std::nullopt;
    ++int_digits;
    ++i;
  }
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (frac_digits < 6) frac = frac * 10 + (text[i] - '0');
      ++frac_digits;
      ++i;
    }
    if (frac_digits == 0) return std::nullopt;  // "1." is not a number
  }
  if (i != text.size()) return std::nullopt;
  if (int_digits == 0 && frac_digits == 0) return std::nullopt;
  while (frac_digits < 6 && frac_digits > 0) {
    frac *= 10;
    ++frac_digits;
  }
  if (frac_digits == 0) frac = 0;
  __int128 raw = integer * Fixed6::kScale + frac;
  if (raw > kMaxRaw) return std::nullopt;
  return negative ? -raw : raw;
}

void append_u128(std::string& out, unsigned __int128 v) {
  char buf[40];
  int n = 0;
  do {
    buf[n++] = static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  } while (v != 0);
  while (n > 0) out.push_back(buf[--n]);
}

}  // namespace

Fixed6 Fixed6::parse(std::string_view text) {
  auto v = try_parse(text);
  if (!v) throw ArgumentError("not a decimal number: '" + std::string(text) + "'");
  return *v;
}

std::optional<Fixed6> Fixed6::try_parse(std::string_view text) {
  auto raw = parse_raw(text);
  if (!raw) return std::nullopt;
  return Fixed6::from_raw(*raw);
}

std::string Fixed6::str() const {
  std::string out;
  unsigned __int128 v;
  if (raw_ < 0) {
    out.push_back('-');
    v = static_cast<unsigned __int128>(-raw_);
  } else {
    v = static_cast<unsigned __int128>(raw_);
  }
  append_u128(out, v / kScale);
  auto frac = static_cast<std::int64_t>(v % kScale);
  if (frac != 0) {
    char digits[7];
    for (int i = 5; i >= 0; --i) {
      digits[i] = static_cast<char>('0' + frac % 10);
      frac /= 10;
    }
    int len = 6;
    while (len > 0 && digits[len - 1] == '0') --len;
    out.push_back('.');
    out.append(digits, digits + len);
  }
  return out;
}

double ratio(Fixed6 num, Fixed6 den) {
  if (den.is_zero()) return 0.0;
  return static_cast<double>(static_cast<long double>(num.raw()) /
                             static_cast<long double>(den.raw()));
}

}  // namespace dexnet
