#ifndef TROPSING_TROP_POLY_HPP
#define TROPSING_TROP_POLY_HPP

#include <stdexcept>
#include <vector>

#include "tropsing/lattice.hpp"
#include "tropsing/tropical.hpp"

namespace tropsing {

/**
 * Tropical (min-plus) polynomial with prescribed support: one finite
 * coefficient per support point, in support order. Euler derivatives may
 * produce empty or singleton supports; both are ordinary polynomials whose
 * hypersurface is empty.
 */
struct TropPoly {
  Support support;
  std::vector<Rat> coeffs;

  static TropPoly create(Support s, std::vector<Rat> p) {
    if (s.size() != p.size())
      throw std::invalid_argument("coefficient count does not match support size");
    return TropPoly{std::move(s), std::move(p)};
  }
  int dim() const { return support.dim; }
  std::size_t n() const { return support.size(); }
};

struct EvalResult {
  TropValue value;
  std::vector<std::size_t> argmin;  // support indices attaining the minimum
};

// v_i = p_i + <q, i> for every support point.
inline RatVec value_vector(const TropPoly& f, const RatVec& q) {
  if (static_cast<int>(q.size()) != f.dim())
    throw std::invalid_argument("evaluation point has wrong dimension");
  RatVec v(f.n());
  for (std::size_t k = 0; k < f.n(); ++k) {
    Rat s = f.coeffs[k];
    for (int c = 0; c < f.dim(); ++c) s += q[c] * f.support.points[k][c];
    v[k] = s;
  }
  return v;
}

inline EvalResult eval(const TropPoly& f, const RatVec& q) {
  EvalResult r;
  if (f.n() == 0) return r;  // value infinity, empty argmin
  RatVec v = value_vector(f, q);
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] < v[best]) best = k;
  r.value = TropValue::finite(v[best]);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] == v[best]) r.argmin.push_back(k);
  return r;
}

inline bool on_hypersurface(const TropPoly& f, const RatVec& q) {
  return eval(f, q).argmin.size() >= 2;
}

// Keeps exactly the terms where L does not vanish, coefficients unchanged.
inline TropPoly euler_derivative(const TropPoly& f, const AffineForm& L) {
  if (static_cast<int>(L.j.size()) != f.dim())
    throw std::invalid_argument("affine form has wrong dimension");
  std::vector<LatticePoint> pts;
  std::vector<Rat> coeffs;
  for (std::size_t k = 0; k < f.n(); ++k) {
    if (L.eval(f.support.points[k]) != 0) {
      pts.push_back(f.support.points[k]);
      coeffs.push_back(f.coeffs[k]);
    }
  }
  Support s;
  s.dim = f.dim();
  s.points = std::move(pts);
  if (!s.points.empty()) {
    s.affine_dimension = affine_dim(s.points);
    s.span_index = lattice_index(s.points, s.dim);
  }
  return TropPoly{std::move(s), std::move(coeffs)};
}

// Indices where L does not vanish (the derivative's support, as indices into
// the original support).
inline std::vector<std::size_t> derivative_indices(const Support& s, const AffineForm& L) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (L.eval(s.points[k]) != 0) idx.push_back(k);
  return idx;
}

}  // namespace tropsing

#endif  // TROPSING_TROP_POLY_HPP
