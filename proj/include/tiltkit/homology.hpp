#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiltkit/decompose.hpp"

namespace tiltkit {

inline constexpr std::size_t default_resolution_bound = 32;

struct ProjectiveCover {
  ProjectiveModule cover;
  ModuleMap epi;
};

/// P(m) -> m with generators a complement of rad(m) at each vertex.
inline ProjectiveCover projective_cover(const Representation& m) {
  if (m.is_zero()) throw PreconditionError("projective cover of the zero module");
  Submodule rad = radical(m);
  std::vector<std::size_t> tops;
  std::vector<Matrix> images;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    QuotientBasis q = quotient_basis(m.dims[v], rad.inclusion.mats[v]);
    for (std::size_t r = 0; r < q.section.rows(); ++r) {
      tops.push_back(v);
      images.push_back(q.section.row(r));
    }
  }
  ProjectiveModule p = projective_sum(m.algebra, tops);
  ModuleMap epi = map_from_generators(p, m, images);
  return {p, epi};
}

/// Lifts g: P -> M along an epimorphism q: E -> M, for P projective.
inline ModuleMap lift_through_epi(const ProjectiveModule& p, const ModuleMap& g, const ModuleMap& q) {
  std::vector<Matrix> images;
  for (std::size_t i = 0; i < p.tops.size(); ++i) {
    const std::size_t t = p.tops[i];
    Matrix y = g.mats[t].row(p.generator_row(i));
    auto x = solve_linear_system(q.mats[t], y).particular;
    if (!x) throw PreconditionError("lift_through_epi: map does not factor");
    images.push_back(*x);
  }
  return map_from_generators(p, q.source, images);
}

/// f with iota o f = h, if h lands in the image of the monomorphism iota.
inline std::optional<ModuleMap> factor_through_mono(const ModuleMap& h, const ModuleMap& iota) {
  ModuleMap f = ModuleMap::zero(h.source, iota.source);
  for (std::size_t v = 0; v < h.mats.size(); ++v) {
    if (h.source.dims[v] == 0 || iota.source.dims[v] == 0) {
      if (!h.mats[v].is_zero()) return std::nullopt;
      continue;
    }
    auto x = solve_linear_system(iota.mats[v], h.mats[v]).particular;
    if (!x) return std::nullopt;
    f.mats[v] = *x;
  }
  return f;
}

/// The map E -> M induced by g: D -> M through an epimorphism pi: D -> E.
inline ModuleMap induced_from_quotient(const ModuleMap& pi, const ModuleMap& g) {
  ModuleMap h = ModuleMap::zero(pi.target, g.target);
  for (std::size_t v = 0; v < pi.mats.size(); ++v) {
    if (pi.target.dims[v] == 0) continue;
    auto s = solve_linear_system(pi.mats[v], Matrix::identity(pi.target.dims[v])).particular;
    if (!s) throw PreconditionError("induced_from_quotient: map is not surjective");
    h.mats[v] = *s * g.mats[v];
    if (!(pi.mats[v] * h.mats[v] == g.mats[v])) throw PreconditionError("map does not vanish on the kernel");
  }
  return h;
}

/// Projective resolution P_L -> ... -> P_0 -> M.
struct Resolution {
  Representation module;
  std::vector<ProjectiveModule> terms;
  std::vector<ModuleMap> differentials;  ///< differentials[k - 1] = d_k : P_k -> P_{k-1}
  ModuleMap augmentation;
  bool complete = true;  ///< false when truncated before the kernel vanished

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
  const ModuleMap& d(std::size_t k) const { return differentials.at(k - 1); }
  bool has_term(std::size_t k) const { return k < terms.size(); }
};

namespace detail {

inline Resolution resolve(const Representation& m, std::size_t upto, bool raise, std::size_t bound) {
  Resolution res;
  res.module = m;
  if (m.is_zero()) {
    ProjectiveModule z = projective_sum(m.algebra, {});
    res.augmentation = ModuleMap::zero(z.rep, m);
    return res;
  }
  ProjectiveCover c = projective_cover(m);
  res.terms.push_back(c.cover);
  res.augmentation = c.epi;
  Submodule k = kernel(c.epi);
  while (!k.module.is_zero()) {
    const std::size_t next = res.terms.size();
    if (next > upto) {
      if (raise) {
        throw BoundExceeded("projective resolution exceeds length " + std::to_string(bound) +
                            " (projective dimension may be infinite)");
      }
      res.complete = false;
      return res;
    }
    ProjectiveCover ck = projective_cover(k.module);
    res.differentials.push_back(compose(k.inclusion, ck.epi));
    res.terms.push_back(ck.cover);
    k = kernel(ck.epi);
  }
  return res;
}

}  // namespace detail

/// Minimal projective resolution; raises BoundExceeded beyond max_len.
inline Resolution min_resolution(const Representation& m, std::size_t max_len = default_resolution_bound) {
  return detail::resolve(m, max_len, true, max_len);
}

/// Minimal resolution truncated after P_upto; `complete` tells whether it ended.
inline Resolution partial_resolution(const Representation& m, std::size_t upto) {
  return detail::resolve(m, upto, false, upto);
}

/// Projective dimension, or nullopt when the resolution is longer than bound.
/// The zero module gets 0.
inline std::optional<std::size_t> proj_dim(const Representation& m, std::size_t bound = default_resolution_bound) {
  Resolution r = partial_resolution(m, bound);
  if (!r.complete) return std::nullopt;
  return r.length();
}

inline std::optional<std::size_t> global_dimension(const AlgebraPtr& a, std::size_t bound = default_resolution_bound) {
  std::size_t g = 0;
  for (std::size_t v = 0; v < a->vertex_count(); ++v) {
    auto p = proj_dim(simple(a, v), bound);
    if (!p) return std::nullopt;
    g = std::max(g, *p);
  }
  return g;
}

/// Ext^k(M, N) from a resolution of M, in generator coordinates of Hom(P_k, N).
struct ExtSpace {
  std::size_t degree = 0;
  Resolution resolution;
  Representation target;
  Subquotient space;

  std::size_t dim() const { return space.dim(); }
  const Matrix& basis() const { return space.basis; }

  /// Coordinates of the class of a cocycle in the basis.
  Matrix class_of(const Matrix& cocycle) const {
    auto c = space.class_of(cocycle);
    if (!c) throw PreconditionError("not a cocycle");
    return *c;
  }

  /// The cocycle P_k -> N for a row of coefficients over the basis.
  ModuleMap cocycle_map(const Matrix& coeffs) const {
    return map_from_coords(resolution.terms.at(degree), target, coeffs * space.basis);
  }
};

inline ExtSpace ext_space(std::size_t k, const Resolution& res, const Representation& n) {
  require_same_algebra(res.module, n);
  ExtSpace e;
  e.degree = k;
  e.resolution = res;
  e.target = n;
  if (!res.has_term(k)) {
    if (!res.complete) throw BoundExceeded("resolution too short for Ext^" + std::to_string(k));
    e.space = subquotient(0, Matrix(0, 0), Matrix(0, 0));
    return e;
  }
  if (!res.has_term(k + 1) && !res.complete) throw BoundExceeded("resolution too short for Ext^" + std::to_string(k));
  const ProjectiveModule& pk = res.terms[k];
  const std::size_t nk = hom_from_projective_dim(pk, n);
  Matrix cocycles = Matrix::identity(nk);
  if (res.has_term(k + 1)) cocycles = solve_right_kernel(precompose_matrix(res.terms[k + 1], pk, res.d(k + 1), n));
  Matrix coboundaries(0, nk);
  if (k >= 1) coboundaries = precompose_matrix(pk, res.terms[k - 1], res.d(k), n);
  e.space = subquotient(nk, cocycles, coboundaries);
  return e;
}

inline ExtSpace ext_space(std::size_t k, const Representation& m, const Representation& n,
                          std::size_t max_len = default_resolution_bound) {
  if (k + 1 > max_len) return ext_space(k, min_resolution(m, max_len), n);
  Resolution r = partial_resolution(m, k + 1);
  return ext_space(k, r, n);
}

inline std::size_t ext_dim(std::size_t k, const Representation& m, const Representation& n,
                           std::size_t max_len = default_resolution_bound) {
  return ext_space(k, m, n, max_len).dim();
}

/// Tor_k^A(X, Y) for a right module X and a left module Y, given as a
/// representation of the opposite algebra. P_k (x) Y is identified with the
/// sum of Y at the tops of P_k.
inline std::size_t tor_dim(std::size_t k, const Representation& x, const Representation& y,
                           std::size_t max_len = default_resolution_bound) {
  const Algebra& a = *x.algebra;
  const Algebra& b = *y.algebra;
  if (a.dim() != b.dim() || a.vertex_count() != b.vertex_count()) {
    throw InputError("tor: second argument is not over the opposite algebra");
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.basis[i].source != b.basis[i].target || a.basis[i].target != b.basis[i].source) {
      throw InputError("tor: second argument is not over the opposite algebra");
    }
  }
  Resolution res = k + 1 > max_len ? min_resolution(x, max_len) : partial_resolution(x, k + 1);
  if (!res.has_term(k)) return 0;

  // Boundary C_j -> C_{j-1}.
  auto boundary = [&](std::size_t j) {
    const ProjectiveModule& pj = res.terms[j];
    const ProjectiveModule& pi = res.terms[j - 1];
    const ModuleMap& d = res.d(j);
    std::vector<std::size_t> off(pi.tops.size() + 1, 0);
    for (std::size_t i = 0; i < pi.tops.size(); ++i) off[i + 1] = off[i] + y.dims[pi.tops[i]];
    Matrix out(hom_from_projective_dim(pj, y), off.back());
    const auto acts = y.actions();
    std::size_t row = 0;
    for (std::size_t g = 0; g < pj.tops.size(); ++g) {
      const std::size_t w = pj.tops[g];
      const std::size_t r = pj.generator_row(g);
      for (std::size_t c = 0; c < pi.index[w].size(); ++c) {
        const Scalar& coeff = d.mats[w](r, c);
        if (coeff.is_zero()) continue;
        auto [i, bidx] = pi.index[w][c];
        out.add_block(row, off[i], acts[bidx], coeff);
      }
      row += y.dims[w];
    }
    return out;
  };

  const std::size_t ck = hom_from_projective_dim(res.terms[k], y);
  std::size_t ker = ck;
  if (k >= 1) ker = ck - rank(boundary(k));
  std::size_t im = 0;
  if (res.has_term(k + 1)) im = rank(boundary(k + 1));
  return ker - im;
}

/// 0 -> left -> middle -> right -> 0.
struct ShortExactSequence {
  Representation left;
  Representation middle;
  Representation right;
  ModuleMap inclusion;
  ModuleMap projection;

  bool is_exact() const {
    if (!inclusion.is_natural() || !projection.is_natural()) return false;
    if (!inclusion.is_injective() || !projection.is_surjective()) return false;
    if (!compose(projection, inclusion).is_zero()) return false;
    for (std::size_t v = 0; v < middle.dims.size(); ++v) {
      if (left.dims[v] + right.dims[v] != middle.dims[v]) return false;
    }
    return true;
  }
};

namespace detail {

/// Pushout of (P_1 -> P_0) along f: P_1 -> N, i.e. (N + P_0) / {(f(p), -d p)}.
inline ShortExactSequence pushout_extension(const ModuleMap& d1, const ModuleMap& aug, const ModuleMap& f,
                                            const Representation& n) {
  DirectSum s = direct_sum({n, d1.target});
  ModuleMap phi = compose(s.inclusions[0], f) + Scalar(-1) * compose(s.inclusions[1], d1);
  Quotient e = cokernel(phi);
  ModuleMap iota = compose(e.projection, s.inclusions[0]);
  ModuleMap g = compose(aug, s.projections[1]);
  ModuleMap q = induced_from_quotient(e.projection, g);
  return {n, e.module, aug.target, iota, q};
}

}  // namespace detail

/// Realizes a class of Ext^1(M, N) (coordinates over ext.basis) as an extension.
inline ShortExactSequence realize_extension(const ExtSpace& ext, const Matrix& coeffs) {
  if (ext.degree != 1) throw PreconditionError("realize_extension needs a degree-1 class");
  const Resolution& r = ext.resolution;
  const Representation& n = ext.target;
  if (r.module.is_zero()) {
    return {n, n, r.module, ModuleMap::identity(n), ModuleMap::zero(n, r.module)};
  }
  if (!r.has_term(1)) {
    DirectSum s = direct_sum({n, r.module});
    return {n, s.module, r.module, s.inclusions[0], s.projections[1]};
  }
  ModuleMap f = ext.dim() ? ext.cocycle_map(coeffs) : ModuleMap::zero(r.terms[1].rep, n);
  return detail::pushout_extension(r.d(1), r.augmentation, f, n);
}

/// Coordinates of the class of an extension 0 -> N -> E -> M -> 0.
inline Matrix extension_class(const ExtSpace& ext, const ShortExactSequence& seq) {
  const Resolution& r = ext.resolution;
  if (!r.has_term(1) || ext.dim() == 0) return Matrix(1, ext.dim());
  ModuleMap h0 = lift_through_epi(r.terms[0], r.augmentation, seq.projection);
  ModuleMap h = compose(h0, r.d(1));
  auto f = factor_through_mono(h, seq.inclusion);
  if (!f) throw InternalError("lifted map does not land in the kernel");
  return ext.class_of(generator_coords(r.terms[1], *f));
}

/// Lift of an endomorphism phi of M to P_0 and P_1 of its resolution.
struct ChainLift {
  ModuleMap phi0;
  ModuleMap phi1;
};

inline ChainLift lift_endomorphism(const Resolution& r, const ModuleMap& phi) {
  ChainLift out;
  out.phi0 = lift_through_epi(r.terms[0], compose(phi, r.augmentation), r.augmentation);
  if (r.has_term(1)) {
    Image im = image(r.d(1));
    auto g = factor_through_mono(compose(out.phi0, r.d(1)), im.inclusion);
    if (!g) throw InternalError("chain lift does not land in the image");
    out.phi1 = lift_through_epi(r.terms[1], *g, im.corestriction);
  }
  return out;
}

struct UniversalExtension {
  ShortExactSequence sequence;  ///< 0 -> X -> N -> M^k -> 0
  std::size_t multiplicity = 0;
  std::vector<Matrix> classes;   ///< Ext^1(M, X) coordinates of the k components
  std::size_t ext1_dim = 0;      ///< dim_K Ext^1(M, X)
  std::size_t end_dim = 0;       ///< dim_K End(M)
};

/// Builds 0 -> X -> N -> M^k -> 0 whose components generate Ext^1(M, X) as a
/// module over End(M) (chosen greedily; k = dim Ext^1 when End(M) = K).
inline UniversalExtension universal_extension(const Representation& m, const Representation& x,
                                              std::size_t max_len = default_resolution_bound) {
  UniversalExtension u;
  ExtSpace e1 = ext_space(1, m, x, max_len);
  u.ext1_dim = e1.dim();
  HomSpace end = hom_space(m, m);
  u.end_dim = end.dim();
  if (e1.dim() == 0) {
    Representation zero(m.algebra);
    u.sequence = {x, x, zero, ModuleMap::identity(x), ModuleMap::zero(x, zero)};
    return u;
  }
  const Resolution& r = e1.resolution;
  std::vector<ModuleMap> phi1;
  for (const auto& phi : end.basis) phi1.push_back(lift_endomorphism(r, phi).phi1);

  // Orbit of a class under End(M): the span of xi o phi_1.
  auto orbit = [&](const Matrix& coeffs) {
    ModuleMap f = e1.cocycle_map(coeffs);
    Matrix span(0, e1.dim());
    for (const auto& p1 : phi1) span = Matrix::vstack(span, e1.class_of(generator_coords(r.terms[1], compose(f, p1))));
    return span;
  };
  Matrix covered(0, e1.dim());
  for (std::size_t i = 0; i < e1.dim(); ++i) {
    Matrix c(1, e1.dim());
    c(0, i) = Scalar(1);
    if (covered.rows() && in_row_space(covered, c)) continue;
    u.classes.push_back(c);
    covered = sum_subspaces(covered, orbit(c));
    if (covered.rows() == e1.dim()) break;
  }
  const std::size_t k = u.classes.size();
  u.multiplicity = k;

  std::vector<std::size_t> tops0;
  std::vector<std::size_t> tops1;
  for (std::size_t c = 0; c < k; ++c) {
    tops0.insert(tops0.end(), r.terms[0].tops.begin(), r.terms[0].tops.end());
    tops1.insert(tops1.end(), r.terms[1].tops.begin(), r.terms[1].tops.end());
  }
  ProjectiveModule p0 = projective_sum(m.algebra, tops0);
  ProjectiveModule p1 = projective_sum(m.algebra, tops1);
  Representation mk = power(m, k);
  ModuleMap d1 = ModuleMap::zero(p1.rep, p0.rep);
  ModuleMap aug = ModuleMap::zero(p0.rep, mk);
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    for (std::size_t c = 0; c < k; ++c) {
      const ModuleMap& dd = r.d(1);
      d1.mats[v].set_block(c * dd.mats[v].rows(), c * dd.mats[v].cols(), dd.mats[v]);
      const ModuleMap& a = r.augmentation;
      aug.mats[v].set_block(c * a.mats[v].rows(), c * a.mats[v].cols(), a.mats[v]);
    }
  }
  std::vector<Matrix> images;
  for (std::size_t c = 0; c < k; ++c) {
    Matrix coords = u.classes[c] * e1.basis();
    std::size_t pos = 0;
    for (auto t : r.terms[1].tops) {
      images.push_back(coords.block(0, pos, 1, x.dims[t]));
      pos += x.dims[t];
    }
  }
  ModuleMap f = map_from_generators(p1, x, images);
  u.sequence = detail::pushout_extension(d1, aug, f, x);
  return u;
}

/// Is every indecomposable summand of m isomorphic to a summand of t?
inline bool in_add(const Representation& m, const Decomposition& t, std::uint64_t seed = default_seed) {
  if (m.is_zero()) return true;
  Decomposition d = decompose(m, seed);
  for (const auto& c : d.classes) {
    bool found = false;
    for (const auto& tc : t.classes) {
      if (is_isomorphic(c.module, tc.module, seed)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Minimal left add(t)-approximation x -> T_0.
struct AddApproximation {
  ModuleMap map;                       ///< x -> T_0
  std::vector<std::size_t> piece_class;  ///< class of t for each summand of T_0
  Decomposition t_decomposition;
  bool minimal_certified = false;  ///< every psi with psi o f = 0 lies in J(End T_0)

  /// Multiplicity of class j in T_0.
  std::size_t multiplicity(std::size_t j) const {
    return static_cast<std::size_t>(std::count(piece_class.begin(), piece_class.end(), j));
  }
};

namespace detail {

inline Matrix hom_coords(const HomSpace& h, const ModuleMap& f) {
  Matrix basis(0, f.flatten().cols());
  for (const auto& b : h.basis) basis = Matrix::vstack(basis, b.flatten());
  auto c = coordinates(basis, f.flatten());
  if (!c) throw InternalError("map not in the hom space");
  return *c;
}

/// Does every map x -> t_j factor through the maps `maps` (x -> piece)?
inline bool factors_through(const std::vector<ModuleMap>& maps, const std::vector<std::size_t>& piece_class,
                            const std::vector<Representation>& classes, const std::vector<HomSpace>& hx) {
  for (std::size_t j = 0; j < classes.size(); ++j) {
    if (hx[j].dim() == 0) continue;
    Matrix span(0, hx[j].dim());
    for (std::size_t p = 0; p < maps.size(); ++p) {
      HomSpace hp = hom_space(classes[piece_class[p]], classes[j]);
      for (const auto& g : hp.basis) span = Matrix::vstack(span, hom_coords(hx[j], compose(g, maps[p])));
    }
    if (span.rows() == 0 || rank(span) != hx[j].dim()) return false;
  }
  return true;
}

}  // namespace detail

inline AddApproximation left_add_approximation(const Representation& x, const Representation& t,
                                               std::uint64_t seed = default_seed) {
  require_same_algebra(x, t);
  AddApproximation out;
  out.t_decomposition = decompose(t, seed);
  std::vector<Representation> classes;
  for (const auto& c : out.t_decomposition.classes) classes.push_back(c.module);
  const std::size_t nc = classes.size();

  std::vector<HomSpace> hx;
  for (const auto& c : classes) hx.push_back(hom_space(x, c));

  // Radical maps between the classes.
  std::vector<std::vector<std::vector<ModuleMap>>> rad(nc, std::vector<std::vector<ModuleMap>>(nc));
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = 0; b < nc; ++b) {
      if (a != b) {
        rad[a][b] = hom_space(classes[a], classes[b]).basis;
        continue;
      }
      EndomorphismAlgebra e = endomorphism_algebra(classes[a]);
      for (std::size_t r = 0; r < e.radical.rows(); ++r) {
        std::vector<Scalar> c;
        for (std::size_t i = 0; i < e.hom.dim(); ++i) c.push_back(e.radical(r, i));
        rad[a][a].push_back(combine(e.hom, classes[a], classes[a], c));
      }
    }
  }

  // Basis of Hom(x, t_j): complement of the radical part first, then the radical part.
  std::vector<ModuleMap> maps;
  std::vector<std::size_t> piece_class;
  std::vector<ModuleMap> tail_maps;
  std::vector<std::size_t> tail_class;
  for (std::size_t j = 0; j < nc; ++j) {
    if (hx[j].dim() == 0) continue;
    Matrix radpart(0, hx[j].dim());
    for (std::size_t k = 0; k < nc; ++k) {
      for (const auto& h : hx[k].basis) {
        for (const auto& g : rad[k][j]) radpart = Matrix::vstack(radpart, detail::hom_coords(hx[j], compose(g, h)));
      }
    }
    Matrix rb = radpart.rows() ? row_basis(radpart) : Matrix(0, hx[j].dim());
    QuotientBasis q = quotient_basis(hx[j].dim(), rb);
    auto to_map = [&](const Matrix& row) {
      std::vector<Scalar> c;
      for (std::size_t i = 0; i < hx[j].dim(); ++i) c.push_back(row(0, i));
      return combine(hx[j], x, classes[j], c);
    };
    for (std::size_t r = 0; r < q.section.rows(); ++r) {
      maps.push_back(to_map(q.section.row(r)));
      piece_class.push_back(j);
    }
    for (std::size_t r = 0; r < rb.rows(); ++r) {
      tail_maps.push_back(to_map(rb.row(r)));
      tail_class.push_back(j);
    }
  }
  maps.insert(maps.end(), tail_maps.begin(), tail_maps.end());
  piece_class.insert(piece_class.end(), tail_class.begin(), tail_class.end());

  // Strip summands from the end while the factorization property survives.
  for (std::size_t p = maps.size(); p-- > 0;) {
    std::vector<ModuleMap> trial = maps;
    std::vector<std::size_t> trial_class = piece_class;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(p));
    trial_class.erase(trial_class.begin() + static_cast<std::ptrdiff_t>(p));
    if (detail::factors_through(trial, trial_class, classes, hx)) {
      maps = std::move(trial);
      piece_class = std::move(trial_class);
    }
  }

  std::vector<Representation> pieces;
  for (auto c : piece_class) pieces.push_back(classes[c]);
  DirectSum t0 = direct_sum(pieces, x.algebra);
  ModuleMap f = ModuleMap::zero(x, t0.module);
  for (std::size_t p = 0; p < maps.size(); ++p) f = f + compose(t0.inclusions[p], maps[p]);
  out.map = f;
  out.piece_class = piece_class;

  // Minimality: the kernel of End(T_0) -> Hom(x, T_0), psi |-> psi o f, lies in J(End T_0).
  if (!t0.module.is_zero()) {
    EndomorphismAlgebra e = endomorphism_algebra(t0.module);
    Matrix eq(0, f.flatten().cols());
    for (const auto& psi : e.hom.basis) eq = Matrix::vstack(eq, compose(psi, f).flatten());
    Matrix k = solve_right_kernel(eq);
    out.minimal_certified = sum_subspaces(k, e.radical).rows() == e.radical.rows();
  } else {
    out.minimal_certified = true;
  }
  return out;
}

}  // namespace tiltkit
