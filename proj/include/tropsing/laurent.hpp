#ifndef TROPSING_LAURENT_HPP
#define TROPSING_LAURENT_HPP

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropsing/rational.hpp"
#include "tropsing/tropical.hpp"

namespace tropsing {

/** Dense polynomial in t over Q; c[k] is the coefficient of t^k. */
struct QtPoly {
  std::vector<Rat> c;

  QtPoly() = default;
  explicit QtPoly(Rat constant) {
    if (constant != 0) c.push_back(std::move(constant));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  // Order of vanishing at t = 0; -1 encodes the zero polynomial.
  int ord() const {
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) return static_cast<int>(k);
    return -1;
  }
  static QtPoly monomial(const Rat& coeff, int k) {
    QtPoly p;
    if (coeff == 0) return p;
    if (k < 0) throw std::invalid_argument("QtPoly exponent must be >= 0");
    p.c.assign(k + 1, Rat(0));
    p.c[k] = coeff;
    return p;
  }
};

inline QtPoly operator+(const QtPoly& a, const QtPoly& b) {
  QtPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
  r.trim();
  return r;
}

inline QtPoly operator-(const QtPoly& a) {
  QtPoly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

inline QtPoly operator-(const QtPoly& a, const QtPoly& b) { return a + (-b); }

inline QtPoly operator*(const QtPoly& a, const QtPoly& b) {
  QtPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

inline bool operator==(const QtPoly& a, const QtPoly& b) { return a.c == b.c; }

// Division with remainder; b must be nonzero.
inline std::pair<QtPoly, QtPoly> divmod(const QtPoly& a, const QtPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  QtPoly rem = a, quot;
  if (a.degree() >= b.degree()) quot.c.assign(a.degree() - b.degree() + 1, Rat(0));
  const Rat lead = b.c.back();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    Rat q = rem.c.back() / lead;
    quot.c[shift] = q;
    for (int k = 0; k <= b.degree(); ++k) rem.c[shift + k] -= q * b.c[k];
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

inline QtPoly poly_gcd(QtPoly a, QtPoly b) {
  while (!b.is_zero()) {
    QtPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {  // monic normalization
    Rat lead = a.c.back();
    for (auto& x : a.c) x /= lead;
  }
  return a;
}

/**
 * Element of Q(t), stored as a reduced fraction num/den of polynomials.
 * Laurent polynomials embed via negative powers of t in the denominator.
 */
struct LaurentScalar {
  QtPoly num, den;

  LaurentScalar() : den(Rat(1)) {}
  explicit LaurentScalar(Rat constant) : num(std::move(constant)), den(Rat(1)) {}
  LaurentScalar(QtPoly n, QtPoly d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  static LaurentScalar term(const Rat& coeff, int k) {
    LaurentScalar s;
    if (coeff == 0) return s;
    if (k >= 0) {
      s.num = QtPoly::monomial(coeff, k);
      s.den = QtPoly(Rat(1));
    } else {
      s.num = QtPoly(coeff);
      s.den = QtPoly::monomial(Rat(1), -k);
    }
    return s;
  }

  bool is_zero() const { return num.is_zero(); }

  void reduce() {
    if (den.is_zero()) throw std::invalid_argument("zero denominator in Q(t)");
    if (num.is_zero()) {
      den = QtPoly(Rat(1));
      return;
    }
    QtPoly g = poly_gcd(num, den);
    if (g.degree() > 0 || g.ord() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
    // normalize: lowest nonzero coefficient of den equals 1
    Rat scale = den.c[den.ord()];
    if (scale != 1) {
      for (auto& x : num.c) x /= scale;
      for (auto& x : den.c) x /= scale;
    }
  }
};

inline LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) {
  return LaurentScalar(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline LaurentScalar operator-(const LaurentScalar& a) {
  LaurentScalar r = a;
  r.num = -r.num;
  return r;
}
inline LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) { return a + (-b); }
inline LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  return LaurentScalar(a.num * b.num, a.den * b.den);
}
inline LaurentScalar inverse(const LaurentScalar& a) {
  if (a.is_zero()) throw std::invalid_argument("inverse of zero in Q(t)");
  return LaurentScalar(a.den, a.num);
}
inline LaurentScalar operator/(const LaurentScalar& a, const LaurentScalar& b) {
  return a * inverse(b);
}
inline bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
  return (a.num * b.den) == (b.num * a.den);
}

inline LaurentScalar pow(const LaurentScalar& a, Int e) {
  if (e < 0) return pow(inverse(a), -e);
  LaurentScalar r(Rat(1)), base = a;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

// t-adic valuation: order at t = 0, infinity for the zero element.
inline TropValue valuation(const LaurentScalar& a) {
  if (a.is_zero()) return TropValue::infinity();
  return TropValue::finite(Rat(a.num.ord() - a.den.ord()));
}

/**
 * Parses a signed sum of terms "c", "c*t^k", "t^k" or "t" with rational c and
 * integer k (e.g. "-2-2*t^6", "1/2*t^-3 + 1").
 */
inline LaurentScalar parse_laurent(const std::string& input) {
  std::string s;
  for (char ch : input)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty Q(t) literal");
  std::size_t pos = 0;
  auto bad = [&] { throw std::invalid_argument("malformed Q(t) literal: '" + input + "'"); };
  auto read_int = [&](bool allow_sign) -> Int {
    std::size_t start = pos;
    if (allow_sign && pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) bad();
    return std::stoll(s.substr(start, pos - start));
  };
  LaurentScalar result;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      bad();
    }
    first = false;
    Rat coeff(1);
    bool have_coeff = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      Int n = read_int(false);
      Int d = 1;
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        d = read_int(false);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + input + "'");
      }
      coeff = Rat(n, d);
      have_coeff = true;
    }
    Int expo = 0;
    if (pos < s.size() && (s[pos] == 't' || s[pos] == '*')) {
      if (s[pos] == '*') {
        if (!have_coeff) bad();
        ++pos;
      }
      if (pos >= s.size() || s[pos] != 't') bad();
      ++pos;
      expo = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        expo = read_int(true);
      }
    } else if (!have_coeff) {
      bad();
    }
    if (sign < 0) coeff = -coeff;
    result = result + LaurentScalar::term(coeff, static_cast<int>(expo));
  }
  return result;
}

inline std::string render_qtpoly(const QtPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < p.c.size(); ++k) {
    if (p.c[k] == 0) continue;
    Rat a = p.c[k];
    if (first) {
      if (a < 0) out << "-";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    first = false;
    Rat mag = a < 0 ? Rat(-a) : a;
    if (k == 0) {
      out << render_rational(mag);
    } else {
      if (mag != 1) out << render_rational(mag) << "*";
      out << "t";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

inline std::string render_laurent(const LaurentScalar& a) {
  if (a.is_zero()) return "0";
  if (a.den == QtPoly(Rat(1))) return render_qtpoly(a.num);
  return "(" + render_qtpoly(a.num) + ")/(" + render_qtpoly(a.den) + ")";
}

}  // namespace tropsing

#endif  // TROPSING_LAURENT_HPP
