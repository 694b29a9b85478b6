#ifndef TROPSING_SUBDIVISION_HPP
#define TROPSING_SUBDIVISION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tropsing/polyhedral.hpp"
#include "tropsing/trop_poly.hpp"

namespace tropsing {

/** Affine witness phi(w) = <q, w> + beta certifying a lower face. */
struct LiftWitness {
  RatVec q;
  Rat beta;

  Rat at(const LatticePoint& p) const {
    Rat s = beta;
    for (std::size_t k = 0; k < q.size(); ++k) s += q[k] * p[k];
    return s;
  }
};

struct MarkedCell {
  std::vector<std::size_t> marking;  // support indices achieving equality
  int dim = 0;                       // affine dimension of the marked points
  std::optional<LiftWitness> witness;  // present on top-dimensional cells
};

struct MarkedSubdivision {
  std::vector<MarkedCell> cells;  // all faces, sorted by (dim, marking)
};

namespace detail {

// Local coordinates on the affine hull of a point set: the hull projects
// bijectively onto the pivot coordinates of the difference matrix.
inline std::vector<std::size_t> hull_coordinates(const std::vector<LatticePoint>& pts) {
  RatMat diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVec row(pts[0].size());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = Rat(pts[i][k] - pts[0][k]);
    diffs.push_back(std::move(row));
  }
  if (diffs.empty()) return {};
  return rref(diffs);
}

// Affine functional vanishing exactly on the hull of `sub` (rational local
// points) when that hull is a hyperplane of the local space; nullopt else.
inline std::optional<std::pair<RatVec, Rat>> local_hyperplane(const RatMat& sub) {
  std::size_t dim = sub[0].size();
  RatMat sys;
  for (const auto& p : sub) {
    RatVec row = p;
    row.push_back(Rat(1));
    sys.push_back(std::move(row));
  }
  RatMat ns = null_space(std::move(sys));
  if (ns.size() != 1) return std::nullopt;
  RatVec a(ns[0].begin(), ns[0].end() - 1);
  if (std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; })) return std::nullopt;
  return std::make_pair(std::move(a), ns[0].back());
}

// All faces (as index sets into the full support) of the polytope spanned by
// the marked points `cell`, the cell itself included.
inline void collect_faces(const Support& s, const std::vector<std::size_t>& cell,
                          std::set<std::vector<std::size_t>>& out) {
  if (!out.insert(cell).second) return;
  std::vector<LatticePoint> pts;
  for (auto i : cell) pts.push_back(s.points[i]);
  auto coords = hull_coordinates(pts);
  std::size_t k = coords.size();
  if (k == 0) return;  // a single point has no proper faces
  RatMat local(pts.size(), RatVec(k));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t c = 0; c < k; ++c) local[i][c] = Rat(pts[i][coords[c]]);
  // candidate facet hyperplanes: spanned by k-subsets of the cell
  std::vector<std::size_t> sel;
  std::set<std::vector<std::size_t>> facets;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (sel.size() == k) {
      RatMat sub;
      for (auto i : sel) sub.push_back(local[i]);
      auto h = local_hyperplane(sub);
      if (!h) return;
      int pos = 0, neg = 0;
      std::vector<std::size_t> zero;
      for (std::size_t i = 0; i < local.size(); ++i) {
        Rat v = dot(h->first, local[i]) + h->second;
        if (v > 0) ++pos;
        else if (v < 0) ++neg;
        else zero.push_back(cell[i]);
      }
      if (pos > 0 && neg > 0) return;  // not supporting
      facets.insert(zero);
      return;
    }
    for (std::size_t i = start; i < local.size(); ++i) {
      sel.push_back(i);
      self(self, i + 1);
      sel.pop_back();
    }
  };
  rec(rec, 0);
  for (const auto& facet : facets) collect_faces(s, facet, out);
}

}  // namespace detail

/**
 * The coherent marked subdivision induced by the coefficients: domains of
 * linearity of the lower hull of the lifted points (i, p_i), each cell marked
 * by every support point achieving equality with its affine witness. All
 * faces of top cells are included, with induced markings.
 */
inline MarkedSubdivision subdivision(const TropPoly& f) {
  f.support.require_full_span();
  const int d = f.dim();
  const std::size_t n = f.n();
  std::map<std::vector<std::size_t>, LiftWitness> tops;
  std::vector<std::size_t> sel;
  auto consider = [&](const std::vector<std::size_t>& subset) {
    RatMat sys;
    RatVec rhs;
    for (auto i : subset) {
      RatVec row(d + 1);
      for (int k = 0; k < d; ++k) row[k] = Rat(f.support.points[i][k]);
      row[d] = 1;
      sys.push_back(std::move(row));
      rhs.push_back(f.coeffs[i]);
    }
    auto sol = solve_square(std::move(sys), std::move(rhs));
    if (!sol) return;  // affinely dependent subset
    LiftWitness w;
    w.q.assign(sol->begin(), sol->end() - 1);
    w.beta = sol->back();
    std::vector<std::size_t> marking;
    for (std::size_t i = 0; i < n; ++i) {
      Rat v = w.at(f.support.points[i]);
      if (v > f.coeffs[i]) return;  // not a lower face
      if (v == f.coeffs[i]) marking.push_back(i);
    }
    tops.emplace(std::move(marking), std::move(w));
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(sel.size()) == d + 1) {
      consider(sel);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      sel.push_back(i);
      self(self, i + 1);
      sel.pop_back();
    }
  };
  rec(rec, 0);

  std::set<std::vector<std::size_t>> all;
  for (const auto& [marking, w] : tops) detail::collect_faces(f.support, marking, all);

  MarkedSubdivision out;
  for (const auto& marking : all) {
    MarkedCell cell;
    cell.marking = marking;
    std::vector<LatticePoint> pts;
    for (auto i : marking) pts.push_back(f.support.points[i]);
    cell.dim = affine_dim(pts);
    auto it = tops.find(marking);
    if (it != tops.end()) cell.witness = it->second;
    out.cells.push_back(std::move(cell));
  }
  std::sort(out.cells.begin(), out.cells.end(), [](const MarkedCell& a, const MarkedCell& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.marking < b.marking;
  });
  return out;
}

/**
 * A marking sigma together with its dual cell sigma* = {w : argmin at w
 * contains sigma}, as equalities within sigma and weak inequalities against
 * the rest of the support.
 */
struct DualCellInfo {
  std::vector<std::size_t> marking;
  HPolyhedron cell;
  int marking_dim = 0;
  int dual_dim = 0;
};

inline DualCellInfo make_dual_cell(const TropPoly& f, const std::vector<std::size_t>& marking) {
  DualCellInfo info;
  info.marking = marking;
  info.cell.dim = f.dim();
  std::vector<bool> in_marking(f.n(), false);
  for (auto i : marking) in_marking[i] = true;
  const std::size_t i0 = marking.front();
  auto row_between = [&](std::size_t i, std::size_t j) {
    // <i - j, w> <= p_j - p_i  encodes l_i(w) <= l_j(w)
    RatVec a(f.dim());
    for (int k = 0; k < f.dim(); ++k)
      a[k] = Rat(f.support.points[i][k] - f.support.points[j][k]);
    return std::make_pair(std::move(a), Rat(f.coeffs[j] - f.coeffs[i]));
  };
  for (auto i : marking) {
    if (i == i0) continue;
    auto [a, b] = row_between(i0, i);
    info.cell.add(std::move(a), std::move(b), Rel::eq);
  }
  for (std::size_t k = 0; k < f.n(); ++k) {
    if (in_marking[k]) continue;
    auto [a, b] = row_between(i0, k);
    info.cell.add(std::move(a), std::move(b), Rel::le);
  }
  std::vector<LatticePoint> pts;
  for (auto i : marking) pts.push_back(f.support.points[i]);
  info.marking_dim = affine_dim(pts);
  info.dual_dim = f.dim() - info.marking_dim;
  return info;
}

// Marking sigma = argmin at q (a singleton off the hypersurface) and its dual
// cell.
inline DualCellInfo dual_cell(const TropPoly& f, const RatVec& q) {
  auto ev = eval(f, q);
  if (ev.argmin.empty()) throw std::invalid_argument("dual_cell of an empty polynomial");
  return make_dual_cell(f, ev.argmin);
}

/**
 * The tropical hypersurface as a marked polyhedral complex: the dual cells of
 * every subdivision cell of positive dimension. Vertices of T(f) are the
 * duals of the full-dimensional marked cells.
 */
inline std::vector<DualCellInfo> complex(const TropPoly& f) {
  if (f.n() < 2) throw std::invalid_argument("complex requires at least two terms");
  auto sub = subdivision(f);
  std::vector<DualCellInfo> out;
  for (const auto& cell : sub.cells) {
    if (cell.dim < 1) continue;
    out.push_back(make_dual_cell(f, cell.marking));
  }
  std::sort(out.begin(), out.end(), [](const DualCellInfo& a, const DualCellInfo& b) {
    if (a.dual_dim != b.dual_dim) return a.dual_dim < b.dual_dim;
    return a.marking < b.marking;
  });
  return out;
}

}  // namespace tropsing

#endif  // TROPSING_SUBDIVISION_HPP
