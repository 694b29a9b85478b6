#ifndef TROPSING_LATTICE_HPP
#define TROPSING_LATTICE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropsing/linalg.hpp"
#include "tropsing/rational.hpp"

namespace tropsing {

using LatticePoint = std::vector<Int>;

/** Integer affine function L(w) = <j, w> + beta on exponent space. */
struct AffineForm {
  std::vector<Int> j;
  Int beta = 0;

  Int eval(const LatticePoint& p) const {
    Int s = beta;
    for (std::size_t k = 0; k < j.size(); ++k) s += j[k] * p[k];
    return s;
  }
  bool is_constant() const {
    return std::all_of(j.begin(), j.end(), [](Int x) { return x == 0; });
  }
  // Sign-canonical representative of {L, -L}: first nonzero entry of (j, beta)
  // is positive.
  void canonicalize_sign() {
    for (Int x : j) {
      if (x > 0) return;
      if (x < 0) break;
    }
    if (std::all_of(j.begin(), j.end(), [](Int x) { return x == 0; }) && beta >= 0) return;
    for (Int& x : j) x = -x;
    beta = -beta;
  }
  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    return a.j == b.j && a.beta == b.beta;
  }
  friend bool operator<(const AffineForm& a, const AffineForm& b) {
    if (a.j != b.j) return a.j < b.j;
    return a.beta < b.beta;
  }
};

inline std::string render_form(const AffineForm& L) {
  std::string s = "[";
  for (std::size_t k = 0; k < L.j.size(); ++k) s += (k ? "," : "") + std::to_string(L.j[k]);
  s += "];" + std::to_string(L.beta);
  return s;
}

inline int affine_dim(const std::vector<LatticePoint>& pts) {
  if (pts.empty()) throw std::invalid_argument("affine_dim of empty set");
  if (pts.size() == 1) return 0;
  RatMat diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVec row(pts[0].size());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = Rat(pts[i][k] - pts[0][k]);
    diffs.push_back(std::move(row));
  }
  return static_cast<int>(rank(std::move(diffs)));
}

// Index of the Z-span of the given points inside Z^d: 1 when they generate
// the full lattice, >1 for a proper finite-index sublattice, 0 when the span
// has deficient rank.
inline BigInt lattice_index(const std::vector<LatticePoint>& pts, int dim) {
  std::vector<std::vector<BigInt>> rows;
  for (const auto& p : pts) rows.emplace_back(p.begin(), p.end());
  // integer row reduction to upper-triangular form via gcd elimination
  std::size_t r = 0;
  for (int c = 0; c < dim && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        BigInt q = rows[i][c] / rows[r][c];
        for (int k = 0; k < dim; ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] != 0) ++r;
  }
  if (static_cast<int>(r) < dim) return BigInt(0);
  BigInt det = 1;
  for (int k = 0; k < dim; ++k) det *= rows[k][k];
  return abs(det);
}

/**
 * A finite configuration of distinct lattice points in Z^d. Construction only
 * requires distinctness; operations that need the affine span to be
 * full-dimensional call require_full_span().
 */
struct Support {
  int dim = 0;
  std::vector<LatticePoint> points;
  int affine_dimension = -1;
  BigInt span_index = 0;  // 0: deficient rank; 1: spans Z^d; >1: sublattice

  static Support create(int dim, std::vector<LatticePoint> pts) {
    if (dim <= 0) throw std::invalid_argument("support dimension must be positive");
    Support s;
    s.dim = dim;
    s.points = std::move(pts);
    for (const auto& p : s.points)
      if (static_cast<int>(p.size()) != dim)
        throw std::invalid_argument("support point has wrong dimension");
    std::set<LatticePoint> seen(s.points.begin(), s.points.end());
    if (seen.size() != s.points.size())
      throw std::invalid_argument("support points must be pairwise distinct");
    if (!s.points.empty()) {
      s.affine_dimension = affine_dim(s.points);
      s.span_index = lattice_index(s.points, dim);
    }
    return s;
  }

  std::size_t size() const { return points.size(); }
  bool full_affine_span() const { return affine_dimension == dim; }
  bool spans_lattice() const { return span_index == 1; }

  void require_full_span() const {
    if (!full_affine_span())
      throw std::invalid_argument("support does not affinely span its ambient space");
  }

  std::optional<std::size_t> index_of(const LatticePoint& p) const {
    for (std::size_t k = 0; k < points.size(); ++k)
      if (points[k] == p) return k;
    return std::nullopt;
  }
};

// Apex detection: i is an apex of S iff removing it drops the affine
// dimension, i.e. all other points lie in a hyperplane of <S> missing i.
// Configurations of fewer than 3 points and affinely independent ones count
// as pyramids.
inline std::optional<std::size_t> is_pyramid(const std::vector<LatticePoint>& pts) {
  if (pts.empty()) return std::nullopt;
  if (pts.size() == 1) return 0;
  int full = affine_dim(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<LatticePoint> rest;
    rest.reserve(pts.size() - 1);
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != i) rest.push_back(pts[k]);
    if (affine_dim(rest) < full) return i;
  }
  return std::nullopt;
}

struct Circuit {
  std::vector<std::size_t> indices;  // sorted positions in the support
  int dim;                           // affine dimension, |indices| - 2
};

// All minimal affinely dependent subsets. A circuit on k points has affine
// dimension k - 2, so only subset sizes 3..d+2 can occur.
inline std::vector<Circuit> circuits(const Support& s) {
  std::vector<Circuit> out;
  std::size_t n = s.size();
  std::size_t maxk = std::min<std::size_t>(n, s.dim + 2);
  std::vector<std::size_t> idx;
  auto dependent = [&](const std::vector<std::size_t>& sel) {
    std::vector<LatticePoint> pts;
    for (auto i : sel) pts.push_back(s.points[i]);
    return affine_dim(pts) < static_cast<int>(sel.size()) - 1;
  };
  std::vector<std::size_t> sel;
  auto rec = [&](auto&& self, std::size_t start, std::size_t k) -> void {
    if (sel.size() == k) {
      if (!dependent(sel)) return;
      for (std::size_t drop = 0; drop < sel.size(); ++drop) {
        std::vector<std::size_t> sub;
        for (std::size_t t = 0; t < sel.size(); ++t)
          if (t != drop) sub.push_back(sel[t]);
        if (dependent(sub)) return;  // not minimal
      }
      out.push_back(Circuit{sel, static_cast<int>(k) - 2});
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      sel.push_back(i);
      self(self, i + 1, k);
      sel.pop_back();
    }
  };
  for (std::size_t k = 3; k <= maxk; ++k) rec(rec, 0, k);
  return out;
}

namespace detail {

// Primitive integer affine form vanishing on the affine hull of the given
// points (which must span a hyperplane); nullopt otherwise.
inline std::optional<AffineForm> hyperplane_through(const std::vector<LatticePoint>& pts, int dim) {
  RatMat sys;  // unknowns (j_1..j_d, beta): <j, p> + beta = 0
  for (const auto& p : pts) {
    RatVec row(dim + 1);
    for (int k = 0; k < dim; ++k) row[k] = Rat(p[k]);
    row[dim] = 1;
    sys.push_back(std::move(row));
  }
  RatMat ns = null_space(std::move(sys));
  if (ns.size() != 1) return std::nullopt;  // points do not span a hyperplane
  // scale the rational solution to primitive integers
  BigInt lcm_den = 1;
  for (const auto& x : ns[0]) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
  std::vector<BigInt> big(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    Rat scaled = ns[0][k] * Rat(lcm_den);
    big[k] = numerator(scaled);
  }
  BigInt g = 0;
  for (const auto& x : big) g = boost::multiprecision::gcd(g, abs(x));
  AffineForm L;
  L.j.resize(dim);
  for (int k = 0; k < dim; ++k) L.j[k] = static_cast<Int>(big[k] / g);
  L.beta = static_cast<Int>(big[dim] / g);
  L.canonicalize_sign();
  return L;
}

}  // namespace detail

/**
 * The finite set of primitive integer affine forms whose zero set meets the
 * support in an affinely (d-1)-dimensional subset: one canonical
 * representative per hyperplane spanned by points of the support.
 */
inline std::vector<AffineForm> spanning_forms(const Support& s) {
  s.require_full_span();
  int d = s.dim;
  std::set<AffineForm> forms;
  std::vector<std::size_t> sel;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(sel.size()) == d) {
      std::vector<LatticePoint> pts;
      for (auto i : sel) pts.push_back(s.points[i]);
      if (affine_dim(pts) != d - 1) return;
      auto L = detail::hyperplane_through(pts, d);
      if (!L) return;
      Int g = 0;
      for (Int x : L->j) g = gcd_ll(g, x);
      if (g != 1) return;  // spec: gcd of the linear part must be 1
      forms.insert(*L);
      return;
    }
    for (std::size_t i = start; i < s.size(); ++i) {
      sel.push_back(i);
      self(self, i + 1);
      sel.pop_back();
    }
  };
  rec(rec, 0);
  return {forms.begin(), forms.end()};
}

/** Cayley configuration A1 x {0} ∪ A2 x {1} with provenance bookkeeping. */
struct CayleySupport {
  Support support;               // in Z^3
  std::vector<int> layer;        // 0 for A1 points, 1 for A2 points
  std::vector<std::size_t> src;  // index in the originating support
};

inline CayleySupport cayley(const Support& a1, const Support& a2) {
  if (a1.dim != 2 || a2.dim != 2)
    throw std::invalid_argument("cayley construction expects planar supports");
  std::vector<LatticePoint> all;
  for (const auto& p : a1.points) all.push_back(p);
  for (const auto& p : a2.points) all.push_back(p);
  if (lattice_index(all, 2) != 1)
    throw std::invalid_argument("cayley construction: ZA1 + ZA2 must equal Z^2");
  CayleySupport c;
  std::vector<LatticePoint> pts;
  for (std::size_t k = 0; k < a1.size(); ++k) {
    pts.push_back({a1.points[k][0], a1.points[k][1], 0});
    c.layer.push_back(0);
    c.src.push_back(k);
  }
  for (std::size_t k = 0; k < a2.size(); ++k) {
    pts.push_back({a2.points[k][0], a2.points[k][1], 1});
    c.layer.push_back(1);
    c.src.push_back(k);
  }
  c.support = Support::create(3, std::move(pts));
  if (!c.support.full_affine_span())
    throw std::invalid_argument(
        "cayley configuration is degenerate: combined support does not span 3-space");
  return c;
}

}  // namespace tropsing

#endif  // TROPSING_LATTICE_HPP
