#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mina {

/// Exact cost value. Costs stay rational until they enter the LP.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

/// Decimal digits to an integer. BigInt's string constructor would read a
/// leading zero as an octal prefix.
inline BigInt decimal(std::string_view s) {
  auto first = s.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return BigInt(std::string{s.substr(first)});
}

inline BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace detail

/// Parses a non-negative decimal ("3", "0.125") or fraction ("1/3").
/// Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    BigInt d = detail::decimal(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(detail::decimal(num), d);
  }
  auto dot = text.find('.');
  auto whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (!detail::all_digits(whole) || (dot != std::string_view::npos && !detail::all_digits(frac))) {
    throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  }
  BigInt digits = detail::decimal(std::string(whole) + std::string(frac));
  return Rational(digits, detail::pow10(static_cast<unsigned>(frac.size())));
}

/// Shortest exact text form: a terminating decimal when the denominator is
/// of the form 2^a 5^b, otherwise "p/q". Inverse of parse_rational.
inline std::string format_rational(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  BigInt rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return sign + num.str() + "/" + den.str();

  unsigned places = std::max(twos, fives);
  BigInt scaled = num * detail::pow10(places) / den;
  std::string digits = scaled.str();
  if (places == 0) return sign + digits;
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  std::string out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return sign + out;
}

/// Smallest c >= 0 with 2^c >= x.
inline int ceil_log2(const Rational& x) {
  int c = 0;
  Rational power = 1;
  while (power < x) {
    power *= 2;
    ++c;
  }
  return c;
}

inline Rational pow2(int e) {
  Rational r = 1;
  if (e >= 0) {
    for (int i = 0; i < e; ++i) r *= 2;
  } else {
    for (int i = 0; i < -e; ++i) r /= 2;
  }
  return r;
}

}  // namespace mina
