#ifndef TROPSING_TROPICAL_HPP
#define TROPSING_TROPICAL_HPP

#include <stdexcept>
#include <string>

#include "tropsing/rational.hpp"

namespace tropsing {

/**
 * Element of the min-plus semiring (Q ∪ {inf}, min, +). Infinity is the
 * additive identity and absorbs under multiplication.
 */
struct TropValue {
  bool inf = true;
  Rat value{};  // meaningful only when !inf

  TropValue() = default;
  static TropValue infinity() { return TropValue{}; }
  static TropValue finite(Rat v) {
    TropValue t;
    t.inf = false;
    t.value = std::move(v);
    return t;
  }
  bool is_finite() const { return !inf; }

  friend bool operator==(const TropValue& a, const TropValue& b) {
    if (a.inf != b.inf) return false;
    return a.inf || a.value == b.value;
  }
};

inline TropValue trop_add(const TropValue& a, const TropValue& b) {
  if (a.inf) return b;
  if (b.inf) return a;
  return TropValue::finite(a.value <= b.value ? a.value : b.value);
}

inline TropValue trop_mul(const TropValue& a, const TropValue& b) {
  if (a.inf || b.inf) return TropValue::infinity();
  return TropValue::finite(a.value + b.value);
}

inline std::string render_trop(const TropValue& t) {
  return t.inf ? "inf" : render_rational(t.value);
}

inline TropValue parse_trop(const std::string& s) {
  if (s == "inf") return TropValue::infinity();
  return TropValue::finite(parse_rational(s));
}

/**
 * Element of the extended semiring: two copies of Q (tangible and ghost)
 * plus infinity. Addition keeps the smaller value with its layer and turns
 * ties into ghosts; multiplication adds values and is ghost-absorbing.
 */
struct SuperValue {
  enum class Kind { tangible, ghost, infinity };
  Kind kind = Kind::infinity;
  Rat value{};

  static SuperValue infinity() { return SuperValue{}; }
  static SuperValue tangible(Rat v) { return SuperValue{Kind::tangible, std::move(v)}; }
  static SuperValue ghost(Rat v) { return SuperValue{Kind::ghost, std::move(v)}; }

  bool is_inf() const { return kind == Kind::infinity; }
  bool is_ghost() const { return kind == Kind::ghost; }

  friend bool operator==(const SuperValue& a, const SuperValue& b) {
    if (a.kind != b.kind) return false;
    return a.is_inf() || a.value == b.value;
  }
};

inline SuperValue super_add(const SuperValue& a, const SuperValue& b) {
  if (a.is_inf()) return b;
  if (b.is_inf()) return a;
  if (a.value < b.value) return a;
  if (b.value < a.value) return b;
  return SuperValue::ghost(a.value);
}

inline SuperValue super_mul(const SuperValue& a, const SuperValue& b) {
  if (a.is_inf() || b.is_inf()) return SuperValue::infinity();
  SuperValue r;
  r.kind = (a.is_ghost() || b.is_ghost()) ? SuperValue::Kind::ghost : SuperValue::Kind::tangible;
  r.value = a.value + b.value;
  return r;
}

// Forgets the layer structure (semiring morphism onto TropValue).
inline TropValue project(const SuperValue& a) {
  return a.is_inf() ? TropValue::infinity() : TropValue::finite(a.value);
}

inline std::string render_super(const SuperValue& a) {
  if (a.is_inf()) return "inf";
  if (a.is_ghost()) return "g:" + render_rational(a.value);
  return render_rational(a.value);
}

inline SuperValue parse_super(const std::string& s) {
  if (s == "inf") return SuperValue::infinity();
  if (s.rfind("g:", 0) == 0) return SuperValue::ghost(parse_rational(s.substr(2)));
  return SuperValue::tangible(parse_rational(s));
}

}  // namespace tropsing

#endif  // TROPSING_TROPICAL_HPP
