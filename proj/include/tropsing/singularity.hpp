#ifndef TROPSING_SINGULARITY_HPP
#define TROPSING_SINGULARITY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tropsing/intervals.hpp"
#include "tropsing/polyhedral.hpp"
#include "tropsing/subdivision.hpp"
#include "tropsing/trop_poly.hpp"

namespace tropsing {

// Ordered partition of the support indices by increasing value p_i + <q, i>;
// the first block is the argmin set.
using Flag = std::vector<std::vector<std::size_t>>;

inline Flag flag(const TropPoly& f, const RatVec& q) {
  RatVec v = value_vector(f, q);
  std::map<Rat, std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < v.size(); ++k) buckets[v[k]].push_back(k);
  Flag out;
  for (auto& [val, idx] : buckets) out.push_back(std::move(idx));
  return out;
}

enum class SingStatus { not_on_hypersurface, regular, singular };

struct SingularityVerdict {
  SingStatus status = SingStatus::not_on_hypersurface;
  std::optional<AffineForm> witness;  // regular: a form whose derivative has a unique argmin at q
  std::optional<Flag> flg;            // singular: the flag at q
};

namespace detail {

// Multiplicity of the minimum of v over the given index subset.
inline std::size_t min_multiplicity(const RatVec& v, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 0;
  Rat best = v[idx[0]];
  for (auto i : idx)
    if (v[i] < best) best = v[i];
  std::size_t count = 0;
  for (auto i : idx)
    if (v[i] == best) ++count;
  return count;
}

}  // namespace detail

/**
 * Decides singularity of q on T(f) by the derivative test: q is singular iff
 * for every spanning form L the minimum of the terms surviving in the Euler
 * derivative with respect to L is attained at least twice. Regular points
 * carry the lexicographically smallest certifying form.
 */
inline SingularityVerdict is_singular_point_with(const TropPoly& f, const RatVec& q,
                                                 const std::vector<AffineForm>& forms) {
  SingularityVerdict verdict;
  auto ev = eval(f, q);
  if (ev.argmin.size() < 2) return verdict;  // not on the hypersurface
  RatVec v = value_vector(f, q);
  for (const auto& L : forms) {  // forms are sorted: first hit is lex-smallest
    auto idx = derivative_indices(f.support, L);
    if (detail::min_multiplicity(v, idx) == 1) {
      verdict.status = SingStatus::regular;
      verdict.witness = L;
      return verdict;
    }
  }
  verdict.status = SingStatus::singular;
  verdict.flg = flag(f, q);
  return verdict;
}

inline SingularityVerdict is_singular_point(const TropPoly& f, const RatVec& q) {
  f.support.require_full_span();
  return is_singular_point_with(f, q, spanning_forms(f.support));
}

/**
 * Same verdict through the dual-cell shortcut: a pyramidal argmin marking is
 * regular via the form cutting out its base; otherwise only the forms
 * vanishing on the whole marking need to be consulted.
 */
inline SingularityVerdict is_singular_point_via_duality(const TropPoly& f, const RatVec& q) {
  f.support.require_full_span();
  SingularityVerdict verdict;
  auto ev = eval(f, q);
  if (ev.argmin.size() < 2) return verdict;
  RatVec v = value_vector(f, q);
  auto forms = spanning_forms(f.support);
  std::vector<LatticePoint> sigma;
  for (auto i : ev.argmin) sigma.push_back(f.support.points[i]);
  auto apex = is_pyramid(sigma);
  if (apex) {
    const LatticePoint& a = sigma[*apex];
    for (const auto& L : forms) {
      if (L.eval(a) == 0) continue;
      bool base_in = true;
      for (std::size_t k = 0; k < sigma.size(); ++k)
        if (k != *apex && L.eval(sigma[k]) != 0) {
          base_in = false;
          break;
        }
      if (!base_in) continue;
      verdict.status = SingStatus::regular;
      verdict.witness = L;
      return verdict;
    }
    throw std::logic_error("no spanning form separates the pyramid apex");
  }
  for (const auto& L : forms) {
    bool vanishes_on_sigma = std::all_of(ev.argmin.begin(), ev.argmin.end(), [&](std::size_t i) {
      return L.eval(f.support.points[i]) == 0;
    });
    if (!vanishes_on_sigma) continue;
    auto idx = derivative_indices(f.support, L);
    if (detail::min_multiplicity(v, idx) == 1) {
      verdict.status = SingStatus::regular;
      verdict.witness = L;
      return verdict;
    }
  }
  verdict.status = SingStatus::singular;
  verdict.flg = flag(f, q);
  return verdict;
}

struct ClassifiedFace {
  Face face;
  SingularityVerdict verdict;
};

/**
 * The full singular locus: the pairwise-equality arrangement refines T(f)
 * into weight classes on which the verdict is constant, so classifying one
 * sample per face classifies every point.
 */
struct SingularLocus {
  std::vector<Hyperplane> planes;
  std::vector<ClassifiedFace> faces;
  std::vector<std::size_t> singular;  // indices into `faces`
};

inline SingularLocus singular_locus(const TropPoly& f) {
  f.support.require_full_span();
  if (f.dim() > 3)
    throw std::invalid_argument("singular_locus supports dimension <= 3 (point tests work in any d)");
  SingularLocus locus;
  locus.planes = pairwise_hyperplanes(f);
  auto forms = spanning_forms(f.support);
  auto faces = arrangement_faces(locus.planes, f.dim());
  for (auto& face : faces) {
    ClassifiedFace cf;
    cf.verdict = is_singular_point_with(f, face.sample, forms);
    cf.face = std::move(face);
    if (cf.verdict.status == SingStatus::singular)
      locus.singular.push_back(locus.faces.size());
    locus.faces.push_back(std::move(cf));
  }
  return locus;
}

/**
 * Constructive singular point on the dual of a pyramidal top cell whose base
 * carries a circuit of dimension d-1 (nullopt when no outside point sees the
 * base hyperplane below the apex). Preconditions are validated.
 */
inline std::optional<RatVec> circuit_pyramid_criterion(const TropPoly& f, const MarkedCell& cell) {
  const int d = f.dim();
  if (cell.dim != d) throw std::invalid_argument("criterion expects a top-dimensional cell");
  std::vector<LatticePoint> pts;
  for (auto i : cell.marking) pts.push_back(f.support.points[i]);
  auto apex_pos = is_pyramid(pts);
  if (!apex_pos) throw std::invalid_argument("criterion expects a pyramidal cell");
  Support sub = Support::create(d, pts);
  bool has_big_circuit = false;
  for (const auto& c : circuits(sub))
    if (c.dim == d - 1) {
      has_big_circuit = true;
      break;
    }
  if (!has_big_circuit)
    throw std::invalid_argument("criterion expects a circuit of dimension d-1 in the cell");

  // witness of the cell as a lower face
  LiftWitness w;
  if (cell.witness) {
    w = *cell.witness;
  } else {
    RatMat sys;
    RatVec rhs;
    std::vector<std::size_t> indep;
    for (std::size_t k = 0; k < pts.size() && indep.size() < static_cast<std::size_t>(d) + 1; ++k) {
      indep.push_back(k);
      std::vector<LatticePoint> chosen;
      for (auto t : indep) chosen.push_back(pts[t]);
      if (affine_dim(chosen) != static_cast<int>(indep.size()) - 1) indep.pop_back();
    }
    if (indep.size() != static_cast<std::size_t>(d) + 1)
      throw std::invalid_argument("cell marking does not span the ambient space");
    for (auto t : indep) {
      RatVec row(d + 1);
      for (int k = 0; k < d; ++k) row[k] = Rat(pts[t][k]);
      row[d] = 1;
      sys.push_back(std::move(row));
      rhs.push_back(f.coeffs[cell.marking[t]]);
    }
    auto sol = solve_square(std::move(sys), std::move(rhs));
    if (!sol) throw std::logic_error("interpolation system unexpectedly singular");
    w.q.assign(sol->begin(), sol->end() - 1);
    w.beta = sol->back();
  }
  std::vector<bool> in_cell(f.n(), false);
  for (auto i : cell.marking) in_cell[i] = true;
  for (std::size_t i = 0; i < f.n(); ++i) {
    Rat val = w.at(f.support.points[i]);
    if (in_cell[i] ? val != f.coeffs[i] : val >= f.coeffs[i])
      throw std::invalid_argument("marking is not a top cell of the subdivision");
  }

  // base hyperplane, normalized so the apex evaluates positively
  std::vector<LatticePoint> base;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (k != *apex_pos) base.push_back(pts[k]);
  auto Lopt = detail::hyperplane_through(base, d);
  if (!Lopt) throw std::logic_error("pyramid base fails to span a hyperplane");
  AffineForm L = *Lopt;
  Int la = L.eval(pts[*apex_pos]);
  if (la < 0) {
    for (Int& x : L.j) x = -x;
    L.beta = -L.beta;
    la = -la;
  }

  // after normalizing coefficients to vanish on the cell, the singular point
  // sits at distance min p'_i / (L(apex) - L(i)) along the direction of L
  std::optional<Rat> best;
  for (std::size_t i = 0; i < f.n(); ++i) {
    if (in_cell[i]) continue;
    Int li = L.eval(f.support.points[i]);
    if (li >= la) continue;
    Rat reduced = f.coeffs[i] - w.at(f.support.points[i]);  // > 0
    Rat ratio = reduced / Rat(la - li);
    if (!best || ratio < *best) best = ratio;
  }
  if (!best) return std::nullopt;
  RatVec q(d);
  for (int k = 0; k < d; ++k) q[k] = *best * Rat(L.j[k]) - w.q[k];
  return q;
}

inline bool univariate_singular(const TropPoly& f) {
  if (f.dim() != 1) throw std::invalid_argument("univariate test expects dimension 1");
  auto sub = subdivision(f);
  for (const auto& cell : sub.cells)
    if (cell.marking.size() >= 3) return true;  // affinely dependent marking
  return false;
}

struct PlanarEdgeReport {
  std::vector<std::size_t> marking;  // a marked 1-cell with >= 3 points
  AffineForm L;                      // the form vanishing on it
  bool meets_derivative;             // sigma* intersects T(df/dL)
};

struct PlanarReport {
  bool triangulation = false;
  std::vector<std::vector<std::size_t>> circuit_cells;  // top cells containing a 2-dim circuit
  std::vector<PlanarEdgeReport> dependent_edges;
  int which_case = 0;  // 1: a 2-dim circuit in a cell; 2: via a dependent edge; 0: neither
  bool singular = false;
};

/**
 * Planar classification: a coherent subdivision is singular exactly when some
 * cell contains a planar circuit, or some marked edge with three or more
 * points has a dual cell meeting the matching Euler derivative.
 */
inline PlanarReport classify_planar(const TropPoly& f) {
  if (f.dim() != 2) throw std::invalid_argument("planar classification expects dimension 2");
  f.support.require_full_span();
  auto sub = subdivision(f);
  PlanarReport rep;
  rep.triangulation = true;
  for (const auto& cell : sub.cells) {
    if (cell.dim != 2 || !cell.witness) continue;
    std::vector<LatticePoint> pts;
    for (auto i : cell.marking) pts.push_back(f.support.points[i]);
    Support subsupp = Support::create(2, pts);
    auto cs = circuits(subsupp);
    if (!cs.empty()) rep.triangulation = false;  // dependent marking
    for (const auto& c : cs) {
      if (c.dim == 2) {
        rep.circuit_cells.push_back(cell.marking);
        break;
      }
    }
  }
  for (const auto& cell : sub.cells) {
    if (cell.dim != 1 || cell.marking.size() < 3) continue;
    rep.triangulation = false;
    std::vector<LatticePoint> pts;
    for (auto i : cell.marking) pts.push_back(f.support.points[i]);
    auto Lopt = detail::hyperplane_through({pts[0], pts[1]}, 2);
    if (!Lopt) throw std::logic_error("marked edge fails to span a line");
    PlanarEdgeReport er;
    er.marking = cell.marking;
    er.L = *Lopt;
    // parametrize sigma* and intersect with the derivative's tie locus
    auto dual = make_dual_cell(f, cell.marking);
    auto base = feasible_point(dual.cell);
    if (!base) throw std::logic_error("dual cell of a subdivision cell is empty");
    RatMat eqs;
    for (const auto& c : dual.cell.cons)
      if (c.rel == Rel::eq) eqs.push_back(c.a);
    RatMat dir = null_space(std::move(eqs));
    if (dir.size() != 1) throw std::logic_error("dual cell of an edge is not one-dimensional");
    const RatVec& u = dir[0];
    Interval domain;
    for (const auto& c : dual.cell.cons) {
      if (c.rel == Rel::eq) continue;
      Rat du = dot(c.a, u);
      Rat rest = c.b - dot(c.a, *base);
      if (du == 0) continue;  // holds identically on the line
      Rat bound = rest / du;
      if (du > 0) {
        ExtRat h = ExtRat::fin(bound);
        if (h < domain.hi) domain.hi = h;
      } else {
        ExtRat l = ExtRat::fin(bound);
        if (domain.lo < l) domain.lo = l;
      }
    }
    std::vector<std::pair<Rat, Rat>> lines;
    for (auto i : derivative_indices(f.support, er.L)) {
      Rat slope(0), offset = f.coeffs[i];
      for (int k = 0; k < 2; ++k) {
        slope += u[k] * f.support.points[i][k];
        offset += (*base)[k] * f.support.points[i][k];
      }
      lines.emplace_back(std::move(slope), std::move(offset));
    }
    er.meets_derivative = !tie_locus(lines, domain).is_empty();
    rep.dependent_edges.push_back(std::move(er));
  }
  bool edge_fires = std::any_of(rep.dependent_edges.begin(), rep.dependent_edges.end(),
                                [](const PlanarEdgeReport& e) { return e.meets_derivative; });
  if (!rep.circuit_cells.empty()) rep.which_case = 1;
  else if (edge_fires) rep.which_case = 2;
  rep.singular = !rep.circuit_cells.empty() || edge_fires;
  return rep;
}

/**
 * Display helper: closures of the singular faces, with collinear pieces and
 * their boundary vertices merged. The relatively open faces themselves stay
 * authoritative; this only feeds reporting.
 */
struct ClosedPiece {
  int dim = 0;
  HPolyhedron poly;  // closed description
};

inline std::vector<ClosedPiece> merged_singular_faces(const SingularLocus& locus, int d) {
  struct LineGroup {
    RatMat eqs;  // canonical rref rows [a | b]
    RatVec base;
    RatVec dir;
    IntervalSet set;
  };
  std::vector<LineGroup> groups;
  std::vector<RatVec> points;
  auto line_key = [&](const HPolyhedron& P) {
    RatMat eqm;
    for (const auto& c : P.cons)
      if (c.rel == Rel::eq) {
        RatVec row = c.a;
        row.push_back(c.b);
        eqm.push_back(std::move(row));
      }
    rref(eqm);
    return eqm;
  };
  for (auto idx : locus.singular) {
    const Face& face = locus.faces[idx].face;
    if (face.dim > 1) continue;  // merge pass only handles points and segments
    HPolyhedron P = face_polyhedron(locus.planes, face.sign_vector, d);
    if (face.dim == 0) {
      points.push_back(face.sample);
      continue;
    }
    RatMat key = line_key(P);
    LineGroup* grp = nullptr;
    for (auto& g : groups)
      if (g.eqs == key) {
        grp = &g;
        break;
      }
    if (!grp) {
      LineGroup g;
      g.eqs = key;
      g.base = face.sample;
      RatMat normals;
      for (const auto& row : key) normals.push_back(RatVec(row.begin(), row.end() - 1));
      RatMat ns = null_space(std::move(normals));
      g.dir = ns[0];
      groups.push_back(std::move(g));
      grp = &groups.back();
    }
    // closed parameter interval of the face along the group's line
    Interval iv;
    for (const auto& c : P.cons) {
      if (c.rel == Rel::eq) continue;
      Rat du = dot(c.a, grp->dir);
      if (du == 0) continue;
      Rat bound = (c.b - dot(c.a, grp->base)) / du;
      if (du > 0) {
        ExtRat h = ExtRat::fin(bound);
        if (h < iv.hi) iv.hi = h;
      } else {
        ExtRat l = ExtRat::fin(bound);
        if (iv.lo < l) iv.lo = l;
      }
    }
    grp->set = unite(grp->set, IntervalSet::segment(iv.lo, iv.hi));
  }
  // attach isolated singular points lying on a group's line
  std::vector<bool> absorbed(points.size(), false);
  for (auto& g : groups) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      bool on_line = true;
      for (const auto& row : g.eqs) {
        Rat v = -row.back();
        for (std::size_t c = 0; c + 1 < row.size(); ++c) v += row[c] * points[k][c];
        if (v != 0) {
          on_line = false;
          break;
        }
      }
      if (!on_line) continue;
      // parameter of the point on the line
      Rat s(0);
      Rat uu(0);
      for (std::size_t c = 0; c < g.dir.size(); ++c) {
        s += (points[k][c] - g.base[c]) * g.dir[c];
        uu += g.dir[c] * g.dir[c];
      }
      g.set = unite(g.set, IntervalSet::point(s / uu));
      absorbed[k] = true;
    }
  }
  std::vector<ClosedPiece> out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (absorbed[k]) continue;
    ClosedPiece piece;
    piece.dim = 0;
    piece.poly.dim = d;
    for (int c = 0; c < d; ++c) {
      RatVec a(d, Rat(0));
      a[c] = 1;
      piece.poly.add(std::move(a), points[k][c], Rel::eq);
    }
    out.push_back(std::move(piece));
  }
  for (auto& g : groups) {
    for (const auto& part : g.set.parts) {
      ClosedPiece piece;
      piece.dim = part.lo == part.hi ? 0 : 1;
      piece.poly.dim = d;
      for (const auto& row : g.eqs)
        piece.poly.add(RatVec(row.begin(), row.end() - 1), row.back(), Rel::eq);
      auto add_bound = [&](const ExtRat& e, bool upper) {
        if (!e.finite()) return;
        // parameter s of x on the line satisfies s = <dir, x - base>/<dir, dir>
        RatVec a = g.dir;
        Rat b = e.v * dot(g.dir, g.dir) + dot(g.dir, g.base);
        if (!upper) {
          for (auto& x : a) x = -x;
          b = -b;
        }
        piece.poly.add(std::move(a), std::move(b), Rel::le);
      };
      add_bound(part.lo, false);
      add_bound(part.hi, true);
      out.push_back(std::move(piece));
    }
  }
  return out;
}

}  // namespace tropsing

#endif  // TROPSING_SINGULARITY_HPP
