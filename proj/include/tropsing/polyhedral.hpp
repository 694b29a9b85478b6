#ifndef TROPSING_POLYHEDRAL_HPP
#define TROPSING_POLYHEDRAL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropsing/linalg.hpp"
#include "tropsing/rational.hpp"
#include "tropsing/trop_poly.hpp"

namespace tropsing {

enum class Rel { eq, le, lt };  // a.x = b, a.x <= b, a.x < b

struct LinCon {
  RatVec a;
  Rat b;
  Rel rel = Rel::le;
};

/** H-description: equalities plus weak and strict inequalities over Q^d. */
struct HPolyhedron {
  int dim = 0;
  std::vector<LinCon> cons;

  void add(RatVec a, Rat b, Rel rel) { cons.push_back(LinCon{std::move(a), std::move(b), rel}); }
};

namespace detail {

// Positive rescaling to a primitive integer row; returns false for a = 0.
inline bool normalize_row(RatVec& a, Rat& b) {
  BigInt l = 1;
  for (const auto& x : a) l = boost::multiprecision::lcm(l, denominator(x));
  l = boost::multiprecision::lcm(l, denominator(b));
  BigInt g = 0;
  std::vector<BigInt> ints(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    ints[k] = numerator(a[k] * Rat(l));
    g = boost::multiprecision::gcd(g, abs(ints[k]));
  }
  BigInt bi = numerator(b * Rat(l));
  if (g == 0) return false;
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = Rat(ints[k] / g);
  b = Rat(bi, g);
  return true;
}

struct IneqSystem {
  // rows a.x <= b (strict flag per row), over `vars` variables
  std::vector<RatVec> a;
  std::vector<Rat> b;
  std::vector<bool> strict;
  bool contradictory = false;

  void push(RatVec ai, Rat bi, bool st) {
    bool zero = std::all_of(ai.begin(), ai.end(), [](const Rat& x) { return x == 0; });
    if (zero) {
      if (bi < 0 || (bi == 0 && st)) contradictory = true;
      return;
    }
    normalize_row(ai, bi);
    a.push_back(std::move(ai));
    b.push_back(std::move(bi));
    strict.push_back(st);
  }

  // Keep only the tightest constraint per normalized direction.
  void dedupe() {
    std::map<RatVec, std::size_t> best;
    std::vector<RatVec> na;
    std::vector<Rat> nb;
    std::vector<bool> ns;
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto it = best.find(a[i]);
      if (it == best.end()) {
        best[a[i]] = na.size();
        na.push_back(a[i]);
        nb.push_back(b[i]);
        ns.push_back(strict[i]);
      } else {
        std::size_t k = it->second;
        if (b[i] < nb[k] || (b[i] == nb[k] && strict[i])) {
          nb[k] = b[i];
          ns[k] = strict[i];
        }
      }
    }
    a = std::move(na);
    b = std::move(nb);
    strict = std::move(ns);
  }
};

}  // namespace detail

/**
 * Deterministic exact feasibility by Fourier-Motzkin elimination: returns a
 * rational point satisfying every constraint (strict ones strictly), or
 * nullopt. Equalities are removed by Gaussian substitution first.
 */
inline std::optional<RatVec> feasible_point(const HPolyhedron& P) {
  int d = P.dim;
  // Step 1: eliminate equalities.
  RatMat eq;
  for (const auto& c : P.cons)
    if (c.rel == Rel::eq) {
      RatVec row = c.a;
      row.push_back(c.b);
      eq.push_back(std::move(row));
    }
  auto pivots = rref(eq);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == static_cast<std::size_t>(d)) return std::nullopt;  // 0 = nonzero
  std::vector<int> pivot_row(d, -1);
  std::vector<bool> is_free(d, true);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    pivot_row[pivots[r]] = static_cast<int>(r);
    is_free[pivots[r]] = false;
  }
  std::vector<std::size_t> free_vars;
  for (int k = 0; k < d; ++k)
    if (is_free[k]) free_vars.push_back(k);
  std::size_t nf = free_vars.size();

  // Rewrite inequalities over the free variables.
  detail::IneqSystem sys;
  for (const auto& c : P.cons) {
    if (c.rel == Rel::eq) continue;
    RatVec af(nf, Rat(0));
    Rat bf = c.b;
    const RatVec& full = c.a;
    // substitute pivot variables: x_p = row[d] - sum over free columns
    for (int p = 0; p < d; ++p) {
      if (pivot_row[p] < 0 || full[p] == 0) continue;
      const RatVec& row = eq[pivot_row[p]];
      bf -= full[p] * row[d];
      for (std::size_t fk = 0; fk < nf; ++fk) af[fk] -= full[p] * row[free_vars[fk]];
    }
    for (std::size_t fk = 0; fk < nf; ++fk) af[fk] += full[free_vars[fk]];
    sys.push(std::move(af), std::move(bf), c.rel == Rel::lt);
    if (sys.contradictory) return std::nullopt;
  }
  sys.dedupe();

  // Step 2: Fourier-Motzkin down to zero free variables, keeping each level.
  std::vector<detail::IneqSystem> levels;
  levels.push_back(sys);
  for (std::size_t k = nf; k > 0; --k) {
    const detail::IneqSystem& cur = levels.back();
    detail::IneqSystem next;
    std::vector<std::size_t> lower, upper;
    for (std::size_t i = 0; i < cur.a.size(); ++i) {
      const Rat& c = cur.a[i][k - 1];
      if (c > 0)
        upper.push_back(i);
      else if (c < 0)
        lower.push_back(i);
      else {
        RatVec a0(cur.a[i].begin(), cur.a[i].end() - 1);
        next.push(std::move(a0), cur.b[i], cur.strict[i]);
      }
    }
    for (auto li : lower) {
      for (auto ui : upper) {
        const Rat cl = -cur.a[li][k - 1];  // > 0
        const Rat cu = cur.a[ui][k - 1];   // > 0
        RatVec a0(k - 1);
        for (std::size_t t = 0; t + 1 < k; ++t) a0[t] = cu * cur.a[li][t] + cl * cur.a[ui][t];
        Rat b0 = cu * cur.b[li] + cl * cur.b[ui];
        next.push(std::move(a0), std::move(b0), cur.strict[li] || cur.strict[ui]);
        if (next.contradictory) return std::nullopt;
      }
    }
    next.dedupe();
    if (next.contradictory) return std::nullopt;
    levels.push_back(std::move(next));
  }

  // Step 3: back-substitute with the midpoint rule.
  RatVec fvals(nf, Rat(0));
  for (std::size_t k = 1; k <= nf; ++k) {
    const detail::IneqSystem& cur = levels[nf - k];  // system over k variables
    bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
    Rat lo, hi;
    for (std::size_t i = 0; i < cur.a.size(); ++i) {
      const Rat& c = cur.a[i][k - 1];
      if (c == 0) continue;
      Rat rest = cur.b[i];
      for (std::size_t t = 0; t + 1 < k; ++t) rest -= cur.a[i][t] * fvals[t];
      Rat bound = rest / c;
      if (c > 0) {
        if (!has_hi || bound < hi) {
          hi = bound;
          hi_strict = cur.strict[i];
          has_hi = true;
        } else if (bound == hi && cur.strict[i]) {
          hi_strict = true;
        }
      } else {
        if (!has_lo || bound > lo) {
          lo = bound;
          lo_strict = cur.strict[i];
          has_lo = true;
        } else if (bound == lo && cur.strict[i]) {
          lo_strict = true;
        }
      }
    }
    Rat& x = fvals[k - 1];
    if (has_lo && has_hi) {
      if (lo > hi || (lo == hi && (lo_strict || hi_strict))) return std::nullopt;
      x = lo == hi ? lo : Rat(lo + hi) / 2;
    } else if (has_lo) {
      x = lo + 1;
    } else if (has_hi) {
      x = hi - 1;
    } else {
      x = 0;
    }
  }

  RatVec result(d, Rat(0));
  for (std::size_t fk = 0; fk < nf; ++fk) result[free_vars[fk]] = fvals[fk];
  for (int p = d - 1; p >= 0; --p) {
    if (pivot_row[p] < 0) continue;
    const RatVec& row = eq[pivot_row[p]];
    Rat v = row[d];
    for (int k = 0; k < d; ++k)
      if (k != p && row[k] != 0) v -= row[k] * result[k];
    result[p] = v;
  }
  return result;
}

inline bool satisfies(const LinCon& c, const RatVec& x) {
  Rat v = dot(c.a, x);
  switch (c.rel) {
    case Rel::eq: return v == c.b;
    case Rel::le: return v <= c.b;
    case Rel::lt: return v < c.b;
  }
  return false;
}

inline bool point_in_poly(const HPolyhedron& P, const RatVec& x) {
  for (const auto& c : P.cons)
    if (!satisfies(c, x)) return false;
  return true;
}

/** Rational hyperplane <normal, x> = offset with primitive integer normal. */
struct Hyperplane {
  RatVec normal;
  Rat offset;

  void canonicalize() {
    RatVec a = normal;
    Rat b = offset;
    if (!detail::normalize_row(a, b)) throw std::invalid_argument("zero hyperplane normal");
    int lead = 0;
    for (const auto& x : a) {
      if (x != 0) {
        lead = x > 0 ? 1 : -1;
        break;
      }
    }
    if (lead < 0) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    normal = std::move(a);
    offset = std::move(b);
  }
  friend bool operator==(const Hyperplane& u, const Hyperplane& v) {
    return u.normal == v.normal && u.offset == v.offset;
  }
  friend bool operator<(const Hyperplane& u, const Hyperplane& v) {
    if (u.normal != v.normal) return u.normal < v.normal;
    return u.offset < v.offset;
  }
};

inline std::vector<Hyperplane> canonicalize_planes(std::vector<Hyperplane> planes) {
  for (auto& h : planes) h.canonicalize();
  std::sort(planes.begin(), planes.end());
  planes.erase(std::unique(planes.begin(), planes.end()), planes.end());
  return planes;
}

/**
 * Relatively open face of a hyperplane arrangement: the set of points with a
 * fixed sign pattern. The sample lies in the relative interior (= satisfies
 * the pattern exactly).
 */
struct Face {
  std::string sign_vector;  // one of '-','0','+' per hyperplane
  int dim = 0;
  RatVec sample;
  std::vector<std::size_t> hull;  // indices of the equality hyperplanes
};

inline char sign_at(const Hyperplane& h, const RatVec& x) {
  Rat v = dot(h.normal, x) - h.offset;
  return v == 0 ? '0' : (v < 0 ? '-' : '+');
}

inline std::string locate(const std::vector<Hyperplane>& planes, const RatVec& x) {
  std::string s;
  s.reserve(planes.size());
  for (const auto& h : planes) s.push_back(sign_at(h, x));
  return s;
}

inline LinCon plane_constraint(const Hyperplane& h, char sign) {
  switch (sign) {
    case '0': return LinCon{h.normal, h.offset, Rel::eq};
    case '-': return LinCon{h.normal, h.offset, Rel::lt};
    case '+': {
      RatVec a = h.normal;
      for (auto& x : a) x = -x;
      return LinCon{std::move(a), Rat(-h.offset), Rel::lt};
    }
  }
  throw std::invalid_argument("bad sign");
}

inline HPolyhedron face_polyhedron(const std::vector<Hyperplane>& planes, const std::string& signs,
                                   int d) {
  HPolyhedron P;
  P.dim = d;
  for (std::size_t k = 0; k < planes.size(); ++k) P.cons.push_back(plane_constraint(planes[k], signs[k]));
  return P;
}

/**
 * Every nonempty relatively open face of the arrangement, each exactly once,
 * with a rational relative-interior sample. Depth-first search over sign
 * vectors; the parent's witness settles one branch per level for free, the
 * other two cost one exact feasibility check each.
 */
inline std::vector<Face> arrangement_faces(const std::vector<Hyperplane>& planes, int d) {
  for (const auto& h : planes)
    if (static_cast<int>(h.normal.size()) != d)
      throw std::invalid_argument("hyperplane dimension mismatch");
  {
    auto sorted = planes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("arrangement requires deduplicated hyperplanes");
  }
  std::vector<Face> out;
  std::string signs(planes.size(), '?');
  HPolyhedron prefix;
  prefix.dim = d;

  auto emit = [&](const RatVec& witness) {
    Face f;
    f.sign_vector = signs;
    f.sample = witness;
    RatMat eqs;
    for (std::size_t k = 0; k < planes.size(); ++k)
      if (signs[k] == '0') {
        f.hull.push_back(k);
        eqs.push_back(planes[k].normal);
      }
    f.dim = d - static_cast<int>(rank(std::move(eqs)));
    out.push_back(std::move(f));
  };

  RatVec origin(d, Rat(0));
  // `prefix` mirrors the sign choices made so far; the constraint for the
  // chosen sign is pushed around each recursive call.
  auto rec = [&](auto&& self, std::size_t k, const RatVec& witness) -> void {
    if (k == planes.size()) {
      emit(witness);
      return;
    }
    char actual = sign_at(planes[k], witness);
    for (char s : {'-', '0', '+'}) {
      std::optional<RatVec> w;
      if (s == actual) {
        w = witness;
      } else {
        prefix.cons.push_back(plane_constraint(planes[k], s));
        w = feasible_point(prefix);
        prefix.cons.pop_back();
      }
      if (!w) continue;
      signs[k] = s;
      prefix.cons.push_back(plane_constraint(planes[k], s));
      self(self, k + 1, *w);
      prefix.cons.pop_back();
    }
    signs[k] = '?';
  };
  rec(rec, 0, origin);

  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.sign_vector < b.sign_vector;
  });
  return out;
}

/**
 * Loci where two terms of f take equal value: <q, i - j> = p_j - p_i over all
 * support pairs, deduplicated. These carve T(f) into the weight classes.
 */
inline std::vector<Hyperplane> pairwise_hyperplanes(const TropPoly& f) {
  std::vector<Hyperplane> planes;
  for (std::size_t i = 0; i < f.n(); ++i) {
    for (std::size_t j = i + 1; j < f.n(); ++j) {
      Hyperplane h;
      h.normal.resize(f.dim());
      for (int k = 0; k < f.dim(); ++k)
        h.normal[k] = Rat(f.support.points[i][k] - f.support.points[j][k]);
      h.offset = f.coeffs[j] - f.coeffs[i];
      planes.push_back(std::move(h));
    }
  }
  return canonicalize_planes(std::move(planes));
}

// --- canonical forms and projections -------------------------------------

// Fourier-Motzkin elimination of one variable, exact and strictness-aware.
inline HPolyhedron eliminate_var(const HPolyhedron& P, int var) {
  int d = P.dim;
  HPolyhedron Q;
  Q.dim = d - 1;
  auto drop = [&](const RatVec& a) {
    RatVec r;
    r.reserve(d - 1);
    for (int k = 0; k < d; ++k)
      if (k != var) r.push_back(a[k]);
    return r;
  };
  // Use an equality containing the variable as a substitution rule if any.
  int sub = -1;
  for (std::size_t i = 0; i < P.cons.size(); ++i)
    if (P.cons[i].rel == Rel::eq && P.cons[i].a[var] != 0) {
      sub = static_cast<int>(i);
      break;
    }
  if (sub >= 0) {
    const LinCon& e = P.cons[sub];
    for (std::size_t i = 0; i < P.cons.size(); ++i) {
      if (i == static_cast<std::size_t>(sub)) continue;
      const LinCon& c = P.cons[i];
      Rat f = c.a[var] / e.a[var];
      RatVec a(d);
      for (int k = 0; k < d; ++k) a[k] = c.a[k] - f * e.a[k];
      Q.add(drop(a), c.b - f * e.b, c.rel);
    }
    return Q;
  }
  std::vector<std::size_t> lower, upper;
  for (std::size_t i = 0; i < P.cons.size(); ++i) {
    const LinCon& c = P.cons[i];
    if (c.a[var] == 0) {
      Q.add(drop(c.a), c.b, c.rel);
    } else if (c.a[var] > 0) {
      upper.push_back(i);
    } else {
      lower.push_back(i);
    }
  }
  for (auto li : lower) {
    for (auto ui : upper) {
      const LinCon& l = P.cons[li];
      const LinCon& u = P.cons[ui];
      Rat cl = -l.a[var], cu = u.a[var];
      RatVec a(d);
      for (int k = 0; k < d; ++k) a[k] = cu * l.a[k] + cl * u.a[k];
      Rel rel = (l.rel == Rel::lt || u.rel == Rel::lt) ? Rel::lt : Rel::le;
      Q.add(drop(a), cu * l.b + cl * u.b, rel);
    }
  }
  return Q;
}

/**
 * Canonical H-description of a nonempty polyhedron: implicit equalities
 * extracted and row-reduced, inequalities reduced modulo the affine hull,
 * redundancies dropped, rows normalized and sorted. Equal sets receive equal
 * descriptions. Returns nullopt for an empty input.
 */
inline std::optional<HPolyhedron> canonicalize_hpoly(const HPolyhedron& P) {
  if (!feasible_point(P)) return std::nullopt;
  int d = P.dim;
  std::vector<LinCon> eqs, ineqs;
  for (const auto& c : P.cons)
    (c.rel == Rel::eq ? eqs : ineqs).push_back(c);
  // implicit equalities: a weak constraint that cannot hold strictly
  std::vector<LinCon> kept;
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (ineqs[i].rel == Rel::lt) {
      kept.push_back(ineqs[i]);
      continue;
    }
    HPolyhedron test = P;
    test.cons.push_back(LinCon{ineqs[i].a, ineqs[i].b, Rel::lt});
    if (feasible_point(test)) {
      kept.push_back(ineqs[i]);
    } else {
      eqs.push_back(LinCon{ineqs[i].a, ineqs[i].b, Rel::eq});
    }
  }
  // canonical affine hull
  RatMat eqm;
  for (const auto& e : eqs) {
    RatVec row = e.a;
    row.push_back(e.b);
    eqm.push_back(std::move(row));
  }
  auto pivots = rref(eqm);
  HPolyhedron R;
  R.dim = d;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    RatVec a(eqm[r].begin(), eqm[r].end() - 1);
    Rat b = eqm[r].back();
    detail::normalize_row(a, b);
    R.add(std::move(a), std::move(b), Rel::eq);
  }
  // reduce inequalities modulo the hull, normalize, dedupe
  detail::IneqSystem sys;
  for (auto& c : kept) {
    RatVec a = c.a;
    Rat b = c.b;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (a[pivots[r]] == 0) continue;
      Rat f = a[pivots[r]];
      for (int k = 0; k < d; ++k) a[k] -= f * eqm[r][k];
      b -= f * eqm[r][d];
    }
    sys.push(std::move(a), std::move(b), c.rel == Rel::lt);
  }
  sys.dedupe();
  std::vector<LinCon> cands;
  for (std::size_t i = 0; i < sys.a.size(); ++i)
    cands.push_back(LinCon{sys.a[i], sys.b[i], sys.strict[i] ? Rel::lt : Rel::le});
  std::sort(cands.begin(), cands.end(), [](const LinCon& x, const LinCon& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.rel < y.rel;
  });
  // drop redundant inequalities
  std::vector<bool> alive(cands.size(), true);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    HPolyhedron test = R;
    for (std::size_t k = 0; k < cands.size(); ++k)
      if (alive[k] && k != i) test.cons.push_back(cands[k]);
    // negation of cands[i]
    RatVec na = cands[i].a;
    for (auto& x : na) x = -x;
    test.cons.push_back(LinCon{na, Rat(-cands[i].b), cands[i].rel == Rel::lt ? Rel::le : Rel::lt});
    alive[i] = feasible_point(test).has_value();
  }
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (alive[i]) R.cons.push_back(cands[i]);
  return R;
}

inline std::string poly_key(const HPolyhedron& P) {
  std::ostringstream out;
  for (const auto& c : P.cons) {
    out << (c.rel == Rel::eq ? "E" : c.rel == Rel::le ? "W" : "S");
    for (const auto& x : c.a) out << " " << render_rational(x);
    out << " | " << render_rational(c.b) << " ; ";
  }
  return out.str();
}

}  // namespace tropsing

#endif  // TROPSING_POLYHEDRAL_HPP
