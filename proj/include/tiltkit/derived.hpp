#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiltkit/homology.hpp"

namespace tiltkit {

/// Bounded complex of finitely generated projectives, cohomological grading:
/// term(n) sits in degree n and d(n): term(n) -> term(n + 1).
struct PerfectComplex {
  AlgebraPtr algebra;
  int lo = 0;
  std::vector<ProjectiveModule> terms;  ///< terms[i] in degree lo + i
  std::vector<ModuleMap> diffs;         ///< diffs[i]: degree lo + i -> lo + i + 1

  PerfectComplex() = default;
  explicit PerfectComplex(AlgebraPtr a) : algebra(std::move(a)) {}

  bool is_zero() const { return terms.empty(); }
  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool in_range(int n) const { return !terms.empty() && n >= lo && n <= hi(); }

  ProjectiveModule term(int n) const {
    if (in_range(n)) return terms[static_cast<std::size_t>(n - lo)];
    return projective_sum(algebra, {});
  }

  ModuleMap d(int n) const {
    if (in_range(n) && in_range(n + 1)) return diffs[static_cast<std::size_t>(n - lo)];
    return ModuleMap::zero(term(n).rep, term(n + 1).rep);
  }

  std::size_t total_rank() const {
    std::size_t r = 0;
    for (const auto& t : terms) r += t.rank();
    return r;
  }

  /// d o d = 0 and every differential is a module map.
  bool validate() const {
    if (!terms.empty() && diffs.size() + 1 != terms.size()) return false;
    for (const auto& f : diffs) {
      if (!f.is_natural()) return false;
    }
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
      if (!compose(diffs[i + 1], diffs[i]).is_zero()) return false;
    }
    return true;
  }
};

namespace detail {

/// Drops zero terms at both ends.
inline PerfectComplex trimmed(PerfectComplex x) {
  while (!x.terms.empty() && x.terms.back().rank() == 0) {
    x.terms.pop_back();
    if (!x.diffs.empty()) x.diffs.pop_back();
  }
  while (!x.terms.empty() && x.terms.front().rank() == 0) {
    x.terms.erase(x.terms.begin());
    if (!x.diffs.empty()) x.diffs.erase(x.diffs.begin());
    ++x.lo;
  }
  if (x.terms.empty()) x.lo = 0;
  return x;
}

/// Concatenation of projective modules; rows of each part stay contiguous at every vertex.
struct ProjectiveConcat {
  ProjectiveModule module;
  std::vector<std::vector<std::size_t>> offsets;  ///< offsets[part][vertex]
};

inline ProjectiveConcat concat(const AlgebraPtr& a, const std::vector<ProjectiveModule>& parts) {
  ProjectiveConcat out;
  std::vector<std::size_t> tops;
  std::vector<std::size_t> running(a->vertex_count(), 0);
  for (const auto& p : parts) {
    tops.insert(tops.end(), p.tops.begin(), p.tops.end());
    out.offsets.push_back(running);
    for (std::size_t v = 0; v < running.size(); ++v) running[v] += p.rep.dims[v];
  }
  out.module = projective_sum(a, tops);
  return out;
}

}  // namespace detail

/// P concentrated in degree n.
inline PerfectComplex stalk(const ProjectiveModule& p, int n = 0) {
  PerfectComplex x(p.rep.algebra);
  x.lo = n;
  x.terms.push_back(p);
  return detail::trimmed(x);
}

/// Minimal projective resolution in degrees [-pd, 0].
inline PerfectComplex resolve_to_complex(const Representation& m, std::size_t max_len = default_resolution_bound) {
  Resolution r = min_resolution(m, max_len);
  PerfectComplex x(m.algebra);
  if (r.terms.empty()) return x;
  const std::size_t len = r.length();
  x.lo = -static_cast<int>(len);
  for (std::size_t i = 0; i <= len; ++i) x.terms.push_back(r.terms[len - i]);
  for (std::size_t i = 0; i < len; ++i) x.diffs.push_back(r.d(len - i));
  return x;
}

/// X[n]: X[n]^p = X^{p+n} with differential (-1)^n d.
inline PerfectComplex shift(const PerfectComplex& x, int n) {
  PerfectComplex y = x;
  y.lo = x.lo - n;
  if (n % 2 != 0) {
    for (auto& f : y.diffs) f = Scalar(-1) * f;
  }
  return y;
}

inline PerfectComplex complex_sum(const std::vector<PerfectComplex>& parts, AlgebraPtr a = nullptr) {
  if (!a) {
    if (parts.empty()) throw InputError("complex_sum of no complexes needs an algebra");
    a = parts.front().algebra;
  }
  PerfectComplex out(a);
  int lo = 0;
  int hi = -1;
  bool any = false;
  for (const auto& p : parts) {
    if (p.is_zero()) continue;
    lo = any ? std::min(lo, p.lo) : p.lo;
    hi = any ? std::max(hi, p.hi()) : p.hi();
    any = true;
  }
  if (!any) return out;
  out.lo = lo;
  std::vector<detail::ProjectiveConcat> cs;
  for (int n = lo; n <= hi; ++n) {
    std::vector<ProjectiveModule> ts;
    for (const auto& p : parts) ts.push_back(p.term(n));
    cs.push_back(detail::concat(a, ts));
    out.terms.push_back(cs.back().module);
  }
  for (int n = lo; n < hi; ++n) {
    const auto& src = cs[static_cast<std::size_t>(n - lo)];
    const auto& tgt = cs[static_cast<std::size_t>(n - lo + 1)];
    ModuleMap f = ModuleMap::zero(src.module.rep, tgt.module.rep);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      ModuleMap dj = parts[j].d(n);
      for (std::size_t v = 0; v < a->vertex_count(); ++v) {
        f.mats[v].set_block(src.offsets[j][v], tgt.offsets[j][v], dj.mats[v]);
      }
    }
    out.diffs.push_back(f);
  }
  return out;
}

inline PerfectComplex complex_power(const PerfectComplex& x, std::size_t k) {
  return complex_sum(std::vector<PerfectComplex>(k, x), x.algebra);
}

/// Morphism x -> y[degree], given by components x^p -> y^{p + degree} with
/// d_y f = (-1)^degree f d_x. Compositions and shifts need no extra signs.
struct ChainMap {
  PerfectComplex source;
  PerfectComplex target;
  int degree = 0;
  std::map<int, ModuleMap> components;

  ModuleMap component(int p) const {
    auto it = components.find(p);
    if (it != components.end()) return it->second;
    return ModuleMap::zero(source.term(p).rep, target.term(p + degree).rep);
  }

  bool is_chain_map() const {
    const Scalar sign = degree % 2 == 0 ? Scalar(1) : Scalar(-1);
    const int lo = std::min(source.lo, target.lo - degree) - 1;
    const int hi = std::max(source.hi(), target.hi() - degree) + 1;
    for (int p = lo; p <= hi; ++p) {
      ModuleMap lhs = compose(target.d(p + degree), component(p));
      ModuleMap rhs = sign * compose(component(p + 1), source.d(p));
      for (std::size_t v = 0; v < lhs.mats.size(); ++v) {
        if (!(lhs.mats[v] == rhs.mats[v])) return false;
      }
    }
    return true;
  }
};

inline ChainMap zero_chain_map(const PerfectComplex& x, const PerfectComplex& y, int degree = 0) {
  return ChainMap{x, y, degree, {}};
}

inline ChainMap identity_chain_map(const PerfectComplex& x) {
  ChainMap f{x, x, 0, {}};
  for (int p = x.lo; p <= x.hi() && !x.is_zero(); ++p) f.components[p] = ModuleMap::identity(x.term(p).rep);
  return f;
}

/// g o f for f: x -> y[m], g: y -> z[n]; the result has degree m + n.
inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h{f.source, g.target, f.degree + g.degree, {}};
  for (const auto& [p, fp] : f.components) {
    auto it = g.components.find(p + f.degree);
    if (it == g.components.end()) continue;
    h.components[p] = compose(it->second, fp);
  }
  return h;
}

inline ChainMap operator+(const ChainMap& f, const ChainMap& g) {
  ChainMap h = f;
  for (const auto& [p, gp] : g.components) {
    auto it = h.components.find(p);
    if (it == h.components.end()) {
      h.components[p] = gp;
    } else {
      it->second = it->second + gp;
    }
  }
  return h;
}

inline ChainMap operator*(const Scalar& c, const ChainMap& f) {
  ChainMap h = f;
  for (auto& [p, fp] : h.components) fp = c * fp;
  return h;
}

/// f as a degree-0 map x -> shift(y, degree).
inline ChainMap as_degree_zero(const ChainMap& f) {
  ChainMap g{f.source, shift(f.target, f.degree), 0, f.components};
  return g;
}

/// Block map between complex sums: blocks[i][j] is a degree-0 map part i -> part j.
inline ChainMap block_chain_map(const std::vector<PerfectComplex>& src_parts, const std::vector<PerfectComplex>& tgt_parts,
                                const std::vector<std::vector<std::optional<ChainMap>>>& blocks, AlgebraPtr a) {
  PerfectComplex src = complex_sum(src_parts, a);
  PerfectComplex tgt = complex_sum(tgt_parts, a);
  ChainMap f{src, tgt, 0, {}};
  if (src.is_zero() || tgt.is_zero()) return f;
  for (int p = src.lo; p <= src.hi(); ++p) {
    std::vector<ProjectiveModule> sp;
    std::vector<ProjectiveModule> tp;
    for (const auto& s : src_parts) sp.push_back(s.term(p));
    for (const auto& t : tgt_parts) tp.push_back(t.term(p));
    auto sc = detail::concat(a, sp);
    auto tc = detail::concat(a, tp);
    ModuleMap m = ModuleMap::zero(src.term(p).rep, tgt.term(p).rep);
    for (std::size_t i = 0; i < src_parts.size(); ++i) {
      for (std::size_t j = 0; j < tgt_parts.size(); ++j) {
        if (!blocks[i][j]) continue;
        ModuleMap c = blocks[i][j]->component(p);
        for (std::size_t v = 0; v < a->vertex_count(); ++v) {
          m.mats[v].set_block(sc.offsets[i][v], tc.offsets[j][v], c.mats[v]);
        }
      }
    }
    if (!m.is_zero()) f.components[p] = m;
  }
  return f;
}

/// Cone(f)^n = x^{n+1} + y^n with differential [[-d_x, f], [0, d_y]], for f of degree 0.
struct Cone {
  PerfectComplex complex;
  ChainMap inclusion;   ///< y -> cone
  ChainMap projection;  ///< cone -> x[1]
};

inline Cone cone(const ChainMap& f) {
  if (f.degree != 0) throw PreconditionError("cone needs a degree-0 chain map");
  const PerfectComplex& x = f.source;
  const PerfectComplex& y = f.target;
  AlgebraPtr a = x.algebra ? x.algebra : y.algebra;
  PerfectComplex c(a);
  PerfectComplex x1 = shift(x, 1);
  bool any = !x.is_zero() || !y.is_zero();
  if (!any) return {c, zero_chain_map(y, c), zero_chain_map(c, x1)};
  int lo = 0;
  int hi = 0;
  bool first = true;
  for (const PerfectComplex* z : std::vector<const PerfectComplex*>{&x1, &y}) {
    if (z->is_zero()) continue;
    lo = first ? z->lo : std::min(lo, z->lo);
    hi = first ? z->hi() : std::max(hi, z->hi());
    first = false;
  }
  c.lo = lo;
  std::vector<detail::ProjectiveConcat> cs;
  for (int n = lo; n <= hi; ++n) {
    cs.push_back(detail::concat(a, {x.term(n + 1), y.term(n)}));
    c.terms.push_back(cs.back().module);
  }
  for (int n = lo; n < hi; ++n) {
    const auto& s = cs[static_cast<std::size_t>(n - lo)];
    const auto& t = cs[static_cast<std::size_t>(n - lo + 1)];
    ModuleMap d = ModuleMap::zero(s.module.rep, t.module.rep);
    ModuleMap dx = x.d(n + 1);
    ModuleMap fx = f.component(n + 1);
    ModuleMap dy = y.d(n);
    for (std::size_t v = 0; v < a->vertex_count(); ++v) {
      d.mats[v].add_block(s.offsets[0][v], t.offsets[0][v], dx.mats[v], Scalar(-1));
      d.mats[v].set_block(s.offsets[0][v], t.offsets[1][v], fx.mats[v]);
      d.mats[v].set_block(s.offsets[1][v], t.offsets[1][v], dy.mats[v]);
    }
    c.diffs.push_back(d);
  }
  ChainMap inc{y, c, 0, {}};
  ChainMap proj{c, x1, 0, {}};
  for (int n = lo; n <= hi; ++n) {
    const auto& s = cs[static_cast<std::size_t>(n - lo)];
    const Representation& cn = s.module.rep;
    ModuleMap i = ModuleMap::zero(y.term(n).rep, cn);
    ModuleMap p = ModuleMap::zero(cn, x.term(n + 1).rep);
    for (std::size_t v = 0; v < a->vertex_count(); ++v) {
      for (std::size_t r = 0; r < y.term(n).rep.dims[v]; ++r) i.mats[v](r, s.offsets[1][v] + r) = Scalar(1);
      for (std::size_t r = 0; r < x.term(n + 1).rep.dims[v]; ++r) p.mats[v](s.offsets[0][v] + r, r) = Scalar(1);
    }
    if (!i.is_zero()) inc.components[n] = i;
    if (!p.is_zero()) proj.components[n] = p;
  }
  return {c, inc, proj};
}

/// Hom complex Hom^n(x, y) = prod_p Hom(x^p, y^{p+n}) in generator coordinates,
/// with D(f) = d_y f - (-1)^n f d_x.
class HomComplex {
 public:
  HomComplex(PerfectComplex x, PerfectComplex y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.is_zero() || y_.is_zero()) {
      lo_ = 0;
      hi_ = -1;
      return;
    }
    lo_ = y_.lo - x_.hi();
    hi_ = y_.hi() - x_.lo;
  }

  const PerfectComplex& source() const { return x_; }
  const PerfectComplex& target() const { return y_; }

  /// Degrees outside [window_lo, window_hi] have Hom^n = 0.
  int window_lo() const { return lo_; }
  int window_hi() const { return hi_; }

  struct Block {
    int p;
    std::size_t offset;
    std::size_t size;
  };

  std::vector<Block> layout(int n) const {
    std::vector<Block> out;
    std::size_t off = 0;
    if (x_.is_zero() || y_.is_zero()) return out;
    for (int p = x_.lo; p <= x_.hi(); ++p) {
      if (!y_.in_range(p + n)) continue;
      const std::size_t s = hom_from_projective_dim(x_.term(p), y_.term(p + n).rep);
      out.push_back({p, off, s});
      off += s;
    }
    return out;
  }

  std::size_t rank_of_space(int n) const {
    std::size_t s = 0;
    for (const auto& b : layout(n)) s += b.size;
    return s;
  }

  /// Matrix of D: Hom^n -> Hom^{n+1}.
  const Matrix& differential(int n) const {
    auto it = diff_cache_.find(n);
    if (it != diff_cache_.end()) return it->second;
    auto src = layout(n);
    auto tgt = layout(n + 1);
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (const auto& b : src) rows += b.size;
    for (const auto& b : tgt) cols += b.size;
    Matrix m(rows, cols);
    auto tgt_block = [&](int p) -> const Block* {
      for (const auto& b : tgt) {
        if (b.p == p) return &b;
      }
      return nullptr;
    };
    const Scalar sign = n % 2 == 0 ? Scalar(-1) : Scalar(1);
    for (const auto& b : src) {
      const int p = b.p;
      // d_y o f^p lands in the block of x^p -> y^{p+n+1}.
      if (const Block* t = tgt_block(p)) {
        m.set_block(b.offset, t->offset, postcompose_matrix(x_.term(p), y_.d(p + n)));
      }
      // f^p o d_x^{p-1} lands in the block of x^{p-1} -> y^{p+n}.
      if (const Block* t = tgt_block(p - 1)) {
        Matrix pre = precompose_matrix(x_.term(p - 1), x_.term(p), x_.d(p - 1), y_.term(p + n).rep);
        m.add_block(b.offset, t->offset, pre, sign);
      }
    }
    return diff_cache_.emplace(n, std::move(m)).first->second;
  }

  /// H^n as a subquotient of Hom^n.
  Subquotient cohomology(int n) const {
    const std::size_t dim = rank_of_space(n);
    if (dim == 0) return subquotient(0, Matrix(0, 0), Matrix(0, 0));
    Matrix z = solve_right_kernel(differential(n));
    Matrix b = differential(n - 1);
    return subquotient(dim, z, b);
  }

  std::size_t cohomology_dim(int n) const {
    const std::size_t dim = rank_of_space(n);
    if (dim == 0) return 0;
    return dim - rank(differential(n)) - rank(differential(n - 1));
  }

  /// The morphism x -> y[n] with the given coordinates.
  ChainMap map(int n, const Matrix& coords) const {
    ChainMap f{x_, y_, n, {}};
    for (const auto& b : layout(n)) {
      ModuleMap c = map_from_coords(x_.term(b.p), y_.term(b.p + n).rep, coords.block(0, b.offset, 1, b.size));
      if (!c.is_zero()) f.components[b.p] = c;
    }
    return f;
  }

  /// Coordinates of a morphism x -> y[n].
  Matrix coords(const ChainMap& f) const {
    Matrix out(1, rank_of_space(f.degree));
    for (const auto& b : layout(f.degree)) {
      auto it = f.components.find(b.p);
      if (it == f.components.end()) continue;
      out.set_block(0, b.offset, generator_coords(x_.term(b.p), it->second));
    }
    return out;
  }

 private:
  PerfectComplex x_;
  PerfectComplex y_;
  int lo_ = 0;
  int hi_ = -1;
  mutable std::map<int, Matrix> diff_cache_;
};

/// Hom_D(x, y[n]) with chain-map representatives of a basis.
struct DerivedHom {
  int degree = 0;
  std::shared_ptr<const HomComplex> complex;
  Subquotient space;

  std::size_t dim() const { return space.dim(); }

  ChainMap basis_map(std::size_t i) const { return complex->map(degree, space.basis.row(i)); }

  ChainMap map(const Matrix& coeffs) const { return complex->map(degree, coeffs * space.basis); }

  /// Class of a morphism x -> y[degree]; throws if it is not a chain map.
  Matrix class_of(const ChainMap& f) const {
    auto c = space.class_of(complex->coords(f));
    if (!c) throw PreconditionError("not a chain map");
    return *c;
  }

  bool is_null_homotopic(const ChainMap& f) const { return class_of(f).is_zero(); }
};

inline DerivedHom derived_hom_space(const PerfectComplex& x, const PerfectComplex& y, int n) {
  auto h = std::make_shared<const HomComplex>(x, y);
  return DerivedHom{n, h, h->cohomology(n)};
}

inline std::size_t derived_hom(const PerfectComplex& x, const PerfectComplex& y, int n) {
  return HomComplex(x, y).cohomology_dim(n);
}

/// dim Hom_D(x, y[n]) for every n in the support window (all other degrees vanish).
inline std::map<int, std::size_t> derived_hom_dims(const PerfectComplex& x, const PerfectComplex& y) {
  HomComplex h(x, y);
  std::map<int, std::size_t> out;
  for (int n = h.window_lo(); n <= h.window_hi(); ++n) out[n] = h.cohomology_dim(n);
  return out;
}

inline bool is_exceptional(const PerfectComplex& x) {
  for (const auto& [n, d] : derived_hom_dims(x, x)) {
    if (n != 0 && d != 0) return false;
  }
  return true;
}

/// H^n(x) as a module.
inline Representation cohomology(const PerfectComplex& x, int n) {
  Submodule z = kernel(x.d(n));
  Image b = image(x.d(n - 1));
  auto into = factor_through_mono(b.inclusion, z.inclusion);
  if (!into) throw InternalError("d o d != 0");
  return quotient(z.module, *into).module;
}

/// Degrees with nonzero cohomology.
inline std::vector<int> cohomology_support(const PerfectComplex& x) {
  std::vector<int> out;
  if (x.is_zero()) return out;
  for (int n = x.lo; n <= x.hi(); ++n) {
    if (!cohomology(x, n).is_zero()) out.push_back(n);
  }
  return out;
}

}  // namespace tiltkit
