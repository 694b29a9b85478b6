#ifndef TROPSING_RATIONAL_HPP
#define TROPSING_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropsing {

// Exact scalar types used throughout. Rat is always kept in canonical form
// (gcd(|num|, den) = 1, den > 0) by the backend.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Int = long long;

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

// Parses "num", "num/den" or "-num/den". Rejects empty strings, den = 0 and
// stray characters.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto bad = [&] { throw std::invalid_argument("malformed rational literal: '" + s + "'"); };
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = (s[pos] == '-');
    ++pos;
  }
  auto read_digits = [&]() -> BigInt {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) bad();
    BigInt v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    return v;
  };
  BigInt num = read_digits();
  BigInt den = 1;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    den = read_digits();
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  if (pos != s.size()) bad();
  if (neg) num = -num;
  return Rat(num, den);
}

inline std::string render_rational(const Rat& x) {
  if (is_integer(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline int sign_of(const Rat& x) { return x.sign(); }

inline Int gcd_ll(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Divides an integer vector by the gcd of its entries and flips signs so the
// first nonzero entry is positive. Returns false for the zero vector.
inline bool make_primitive(std::vector<Int>& v) {
  Int g = 0;
  for (Int x : v) g = gcd_ll(g, x);
  if (g == 0) return false;
  int lead = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] /= g;
    if (lead == 0 && v[k] != 0) lead = v[k] > 0 ? 1 : -1;
  }
  if (lead < 0)
    for (Int& x : v) x = -x;
  return true;
}

}  // namespace tropsing

#endif  // TROPSING_RATIONAL_HPP
