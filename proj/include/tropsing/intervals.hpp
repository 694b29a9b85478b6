#ifndef TROPSING_INTERVALS_HPP
#define TROPSING_INTERVALS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropsing/rational.hpp"

namespace tropsing {

/** Rational number extended by -inf/+inf endpoints. */
struct ExtRat {
  enum class Kind { ninf, fin, pinf };
  Kind kind = Kind::fin;
  Rat v{};

  static ExtRat ninf() { return {Kind::ninf, Rat(0)}; }
  static ExtRat pinf() { return {Kind::pinf, Rat(0)}; }
  static ExtRat fin(Rat x) { return {Kind::fin, std::move(x)}; }
  bool finite() const { return kind == Kind::fin; }

  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.kind == Kind::ninf) return b.kind != Kind::ninf;
    if (a.kind == Kind::pinf) return false;
    if (b.kind == Kind::ninf) return false;
    if (b.kind == Kind::pinf) return true;
    return a.v < b.v;
  }
  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.kind != b.kind) return false;
    return a.kind != Kind::fin || a.v == b.v;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a < b || a == b; }
};

/** Closed interval [lo, hi]; lo = hi encodes a point. */
struct Interval {
  ExtRat lo = ExtRat::ninf();
  ExtRat hi = ExtRat::pinf();

  bool valid() const { return lo <= hi && !(lo == ExtRat::pinf()) && !(hi == ExtRat::ninf()); }
  bool contains(const Rat& x) const {
    ExtRat e = ExtRat::fin(x);
    return lo <= e && e <= hi;
  }
};

/** Finite union of closed intervals and points in canonical disjoint form. */
struct IntervalSet {
  std::vector<Interval> parts;  // sorted, pairwise disjoint

  static IntervalSet empty() { return {}; }
  static IntervalSet all() { return IntervalSet{{Interval{}}}; }
  static IntervalSet point(Rat x) {
    return IntervalSet{{Interval{ExtRat::fin(x), ExtRat::fin(std::move(x))}}};
  }
  static IntervalSet ray_ge(Rat x) {
    return IntervalSet{{Interval{ExtRat::fin(std::move(x)), ExtRat::pinf()}}};
  }
  static IntervalSet ray_le(Rat x) {
    return IntervalSet{{Interval{ExtRat::ninf(), ExtRat::fin(std::move(x))}}};
  }
  static IntervalSet segment(ExtRat lo, ExtRat hi) {
    Interval i{std::move(lo), std::move(hi)};
    if (!i.valid()) return {};
    return IntervalSet{{std::move(i)}};
  }

  bool is_empty() const { return parts.empty(); }
  bool contains(const Rat& x) const {
    for (const auto& p : parts)
      if (p.contains(x)) return true;
    return false;
  }

  void normalize() {
    std::vector<Interval> v;
    for (auto& p : parts)
      if (p.valid()) v.push_back(p);
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
      if (!(a.lo == b.lo)) return a.lo < b.lo;
      return a.hi < b.hi;
    });
    std::vector<Interval> merged;
    for (auto& p : v) {
      if (!merged.empty() && p.lo <= merged.back().hi) {
        if (merged.back().hi < p.hi) merged.back().hi = p.hi;
      } else {
        merged.push_back(p);
      }
    }
    parts = std::move(merged);
  }
};

inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  for (const auto& x : a.parts) {
    for (const auto& y : b.parts) {
      Interval i;
      i.lo = x.lo < y.lo ? y.lo : x.lo;
      i.hi = x.hi < y.hi ? x.hi : y.hi;
      if (i.valid()) out.parts.push_back(std::move(i));
    }
  }
  out.normalize();
  return out;
}

inline IntervalSet unite(IntervalSet a, const IntervalSet& b) {
  for (const auto& y : b.parts) a.parts.push_back(y);
  a.normalize();
  return a;
}

/**
 * Locus where the minimum of a family of affine functions a*u + b is attained
 * at least twice (counting repeated functions), restricted to a closed
 * domain. Between consecutive crossing parameters the strict winner is a
 * single line, so the locus is the crossing points with a multiple argmin
 * plus the stretches won by a repeated line.
 */
inline IntervalSet tie_locus(const std::vector<std::pair<Rat, Rat>>& lines, const Interval& domain) {
  if (!domain.valid()) return IntervalSet::empty();
  std::map<std::pair<Rat, Rat>, int> mult;
  for (const auto& l : lines) ++mult[l];
  if (lines.size() < 2) return IntervalSet::empty();
  std::vector<std::pair<Rat, Rat>> distinct;
  for (const auto& [l, m] : mult) distinct.push_back(l);
  auto value = [&](const std::pair<Rat, Rat>& l, const Rat& u) { return l.first * u + l.second; };
  auto tied_at = [&](const Rat& u) {
    Rat best;
    int count = 0, best_mult = 0;
    for (const auto& l : distinct) {
      Rat v = value(l, u);
      if (count == 0 || v < best) {
        best = v;
        count = 1;
        best_mult = mult[l];
      } else if (v == best) {
        ++count;
        best_mult += mult[l];
      }
    }
    return count >= 2 || best_mult >= 2;
  };
  auto winner_mult = [&](const Rat& u) {
    Rat best;
    int count = 0, wm = 0;
    for (const auto& l : distinct) {
      Rat v = value(l, u);
      if (count == 0 || v < best) {
        best = v;
        count = 1;
        wm = mult[l];
      } else if (v == best) {
        ++count;
      }
    }
    return count == 1 ? wm : 0;
  };

  // crossing parameters of distinct lines inside the domain, plus endpoints
  std::vector<Rat> events;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      if (distinct[i].first == distinct[j].first) continue;  // parallel
      Rat u = (distinct[j].second - distinct[i].second) / (distinct[i].first - distinct[j].first);
      if (domain.contains(u)) events.push_back(std::move(u));
    }
  }
  if (domain.lo.finite()) events.push_back(domain.lo.v);
  if (domain.hi.finite()) events.push_back(domain.hi.v);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  IntervalSet out;
  for (const auto& u : events)
    if (tied_at(u)) out.parts.push_back(Interval{ExtRat::fin(u), ExtRat::fin(u)});

  // stretches between events (and the unbounded ends) won by a repeated line
  auto region = [&](const ExtRat& lo, const ExtRat& hi) {
    Rat sample;
    if (lo.finite() && hi.finite()) sample = (lo.v + hi.v) / 2;
    else if (lo.finite()) sample = lo.v + 1;
    else if (hi.finite()) sample = hi.v - 1;
    else sample = 0;
    if (winner_mult(sample) >= 2) out.parts.push_back(Interval{lo, hi});
  };
  if (events.empty()) {
    region(domain.lo, domain.hi);
  } else {
    region(domain.lo, ExtRat::fin(events.front()));
    for (std::size_t k = 0; k + 1 < events.size(); ++k)
      region(ExtRat::fin(events[k]), ExtRat::fin(events[k + 1]));
    region(ExtRat::fin(events.back()), domain.hi);
  }
  out.normalize();
  return out;
}

inline std::string render_extrat(const ExtRat& e) {
  if (e.kind == ExtRat::Kind::ninf) return "-inf";
  if (e.kind == ExtRat::Kind::pinf) return "inf";
  return render_rational(e.v);
}

}  // namespace tropsing

#endif  // TROPSING_INTERVALS_HPP
