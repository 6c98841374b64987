#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tiltkit/algebra.hpp"

namespace tiltkit {

/// A right module over a basic algebra: a space at each vertex and one
/// matrix per generator, shaped dims(source) x dims(target).
struct Representation {
  AlgebraPtr algebra;
  std::vector<std::size_t> dims;
  std::vector<Matrix> gens;

  Representation() = default;

  /// The zero module.
  explicit Representation(const AlgebraPtr& a) : Representation(a, std::vector<std::size_t>(a->vertex_count(), 0)) {}

  Representation(AlgebraPtr a, std::vector<std::size_t> d) : algebra(std::move(a)), dims(std::move(d)) {
    if (dims.size() != algebra->vertex_count()) throw InputError("dimension vector has wrong length");
    for (const auto& g : algebra->generators) gens.emplace_back(dims[g.source], dims[g.target]);
  }

  std::size_t total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }
  bool is_zero() const { return total_dim() == 0; }

  std::size_t offset(std::size_t v) const {
    std::size_t o = 0;
    for (std::size_t i = 0; i < v; ++i) o += dims[i];
    return o;
  }

  /// Action of a basis element b: dims(source b) x dims(target b).
  Matrix act(std::size_t b) const {
    const auto& e = algebra->basis[b];
    if (e.word.empty()) return Matrix::identity(dims[e.source]);
    Matrix m = gens[e.word[0]];
    for (std::size_t i = 1; i < e.word.size(); ++i) m = m * gens[e.word[i]];
    return m;
  }

  std::vector<Matrix> actions() const {
    std::vector<Matrix> out;
    out.reserve(algebra->dim());
    for (std::size_t b = 0; b < algebra->dim(); ++b) out.push_back(act(b));
    return out;
  }

  /// Action of a sparse algebra element supported on paths from v to w.
  Matrix act(const SparseVec& x, std::size_t v, std::size_t w) const {
    Matrix m(dims[v], dims[w]);
    for (const auto& [b, c] : x) m.add_block(0, 0, act(b), c);
    return m;
  }

  /// Checks shapes and that the action respects every basis product with a
  /// generator, which forces all relations to hold.
  void validate() const {
    const auto& a = *algebra;
    if (dims.size() != a.vertex_count() || gens.size() != a.generators.size()) {
      throw InputError("representation does not match its algebra");
    }
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto& gen = a.generators[g];
      if (gens[g].rows() != dims[gen.source] || gens[g].cols() != dims[gen.target]) {
        throw InputError("matrix for '" + gen.name + "' has shape " + gens[g].shape() + ", expected " +
                         std::to_string(dims[gen.source]) + "x" + std::to_string(dims[gen.target]));
      }
    }
    const auto acts = actions();
    for (std::size_t b = 0; b < a.dim(); ++b) {
      for (std::size_t g = 0; g < a.generators.size(); ++g) {
        const auto& gen = a.generators[g];
        if (a.basis[b].target != gen.source) continue;
        Matrix lhs = acts[b] * gens[g];
        Matrix rhs(dims[a.basis[b].source], dims[gen.target]);
        for (const auto& [k, c] : a.mul(b, gen.basis)) rhs.add_block(0, 0, acts[k], c);
        if (!(lhs == rhs)) {
          throw InputError("representation violates the relations at " + a.basis[b].label + "*" + gen.name);
        }
      }
    }
  }

  std::string dim_vector() const {
    std::string s = "(";
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(dims[i]);
    }
    return s + ")";
  }
};

inline void require_same_algebra(const Representation& m, const Representation& n) {
  if (m.algebra != n.algebra) throw InputError("modules over different algebras");
}

/// A morphism of right modules: one matrix per vertex.
struct ModuleMap {
  Representation source;
  Representation target;
  std::vector<Matrix> mats;

  static ModuleMap zero(const Representation& s, const Representation& t) {
    ModuleMap f{s, t, {}};
    for (std::size_t v = 0; v < s.dims.size(); ++v) f.mats.emplace_back(s.dims[v], t.dims[v]);
    return f;
  }

  static ModuleMap identity(const Representation& m) {
    ModuleMap f{m, m, {}};
    for (auto d : m.dims) f.mats.push_back(Matrix::identity(d));
    return f;
  }

  bool is_zero() const {
    for (const auto& m : mats) {
      if (!m.is_zero()) return false;
    }
    return true;
  }

  bool is_natural() const {
    const auto& a = *source.algebra;
    for (std::size_t g = 0; g < a.generators.size(); ++g) {
      const auto& gen = a.generators[g];
      if (!(mats[gen.source] * target.gens[g] == source.gens[g] * mats[gen.target])) return false;
    }
    return true;
  }

  bool is_injective() const {
    for (std::size_t v = 0; v < mats.size(); ++v) {
      if (rank(mats[v]) != source.dims[v]) return false;
    }
    return true;
  }

  bool is_surjective() const {
    for (std::size_t v = 0; v < mats.size(); ++v) {
      if (rank(mats[v]) != target.dims[v]) return false;
    }
    return true;
  }

  bool is_isomorphism() const { return source.dims == target.dims && is_injective(); }

  /// Block-diagonal matrix on the total spaces.
  Matrix total() const {
    Matrix t(source.total_dim(), target.total_dim());
    std::size_t r = 0;
    std::size_t c = 0;
    for (std::size_t v = 0; v < mats.size(); ++v) {
      t.set_block(r, c, mats[v]);
      r += source.dims[v];
      c += target.dims[v];
    }
    return t;
  }

  /// Entries flattened vertex by vertex, row-major.
  Matrix flatten() const {
    std::size_t n = 0;
    for (const auto& m : mats) n += m.rows() * m.cols();
    Matrix out(1, n);
    std::size_t k = 0;
    for (const auto& m : mats) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out(0, k++) = m(i, j);
      }
    }
    return out;
  }

  static ModuleMap unflatten(const Representation& s, const Representation& t, const Matrix& row, std::size_t r = 0) {
    ModuleMap f = zero(s, t);
    std::size_t k = 0;
    for (auto& m : f.mats) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = row(r, k++);
      }
    }
    return f;
  }
};

/// g after f (f: X -> Y, g: Y -> Z).
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.target.dims != g.source.dims) throw InputError("compose: incompatible maps");
  ModuleMap h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.mats.size(); ++v) h.mats.push_back(f.mats[v] * g.mats[v]);
  return h;
}

inline ModuleMap operator+(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h = f;
  for (std::size_t v = 0; v < h.mats.size(); ++v) h.mats[v] = h.mats[v] + g.mats[v];
  return h;
}

inline ModuleMap operator*(const Scalar& c, const ModuleMap& f) {
  ModuleMap h = f;
  for (auto& m : h.mats) m = c * m;
  return h;
}

struct HomSpace {
  std::vector<ModuleMap> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Solves the naturality system M_g X_t = X_s N_g for all generators g.
inline HomSpace hom_space(const Representation& m, const Representation& n) {
  require_same_algebra(m, n);
  const auto& a = *m.algebra;
  const std::size_t nv = a.vertex_count();
  std::vector<std::size_t> var_off(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) var_off[v + 1] = var_off[v] + m.dims[v] * n.dims[v];
  const std::size_t nvars = var_off[nv];
  HomSpace out;
  if (nvars == 0) return out;

  std::size_t neq = 0;
  for (const auto& g : a.generators) neq += m.dims[g.source] * n.dims[g.target];
  Matrix e(nvars, neq);
  std::size_t col = 0;
  for (std::size_t gi = 0; gi < a.generators.size(); ++gi) {
    const auto& g = a.generators[gi];
    const std::size_t s = g.source;
    const std::size_t t = g.target;
    const Matrix& mg = m.gens[gi];
    const Matrix& ng = n.gens[gi];
    for (std::size_t p = 0; p < m.dims[s]; ++p) {
      for (std::size_t q = 0; q < n.dims[t]; ++q) {
        for (std::size_t k = 0; k < m.dims[t]; ++k) {
          if (!mg(p, k).is_zero()) e(var_off[t] + k * n.dims[t] + q, col) += mg(p, k);
        }
        for (std::size_t k = 0; k < n.dims[s]; ++k) {
          if (!ng(k, q).is_zero()) e(var_off[s] + p * n.dims[s] + k, col) -= ng(k, q);
        }
        ++col;
      }
    }
  }
  Matrix ker = solve_right_kernel(e);
  for (std::size_t r = 0; r < ker.rows(); ++r) out.basis.push_back(ModuleMap::unflatten(m, n, ker, r));
  return out;
}

/// Linear combination of a hom basis.
inline ModuleMap combine(const HomSpace& h, const Representation& s, const Representation& t,
                         const std::vector<Scalar>& coeffs) {
  ModuleMap f = ModuleMap::zero(s, t);
  for (std::size_t i = 0; i < h.basis.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (std::size_t v = 0; v < f.mats.size(); ++v) f.mats[v].add_block(0, 0, h.basis[i].mats[v], coeffs[i]);
  }
  return f;
}

/// A submodule given by a basis of rows at each vertex, with its inclusion.
struct Submodule {
  Representation module;
  ModuleMap inclusion;
};

/// Quotient module with its projection.
struct Quotient {
  Representation module;
  ModuleMap projection;
};

/// `rows[v]` must span a subspace of M_v stable under the action.
inline Submodule submodule(const Representation& m, const std::vector<Matrix>& rows) {
  const auto& a = *m.algebra;
  std::vector<Matrix> basis;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    Matrix b = rows[v].rows() ? row_basis(rows[v]) : Matrix(0, m.dims[v]);
    dims.push_back(b.rows());
    basis.push_back(std::move(b));
  }
  Representation s(m.algebra, dims);
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    const auto& gen = a.generators[g];
    if (dims[gen.source] == 0 || dims[gen.target] == 0) continue;
    auto c = coordinates(basis[gen.target], basis[gen.source] * m.gens[g]);
    if (!c) throw PreconditionError("subspace is not a submodule");
    s.gens[g] = *c;
  }
  ModuleMap inc{s, m, basis};
  return {s, inc};
}

/// M / S for a family of stable subspaces S_v (rows, not necessarily independent).
inline Quotient quotient_by_rows(const Representation& m, const std::vector<Matrix>& rows) {
  const auto& a = *m.algebra;
  std::vector<QuotientBasis> qb;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    qb.push_back(quotient_basis(m.dims[v], rows[v]));
    dims.push_back(qb.back().section.rows());
  }
  Representation q(m.algebra, dims);
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    const auto& gen = a.generators[g];
    q.gens[g] = qb[gen.source].section * m.gens[g] * qb[gen.target].projection;
  }
  ModuleMap proj{m, q, {}};
  for (auto& b : qb) proj.mats.push_back(b.projection);
  return {q, proj};
}

/// The quotient of M by the image of an injective map sub: S -> M.
inline Quotient quotient(const Representation& m, const ModuleMap& sub) {
  if (!sub.is_injective()) throw PreconditionError("quotient: map is not injective");
  return quotient_by_rows(m, sub.mats);
}

inline Submodule kernel(const ModuleMap& f) {
  std::vector<Matrix> rows;
  for (const auto& m : f.mats) rows.push_back(solve_right_kernel(m));
  return submodule(f.source, rows);
}

struct Image {
  Representation module;
  ModuleMap inclusion;   ///< image -> target
  ModuleMap corestriction;  ///< source -> image
};

inline Image image(const ModuleMap& f) {
  Submodule s = submodule(f.target, f.mats);
  ModuleMap co{f.source, s.module, {}};
  for (std::size_t v = 0; v < f.mats.size(); ++v) {
    if (s.module.dims[v] == 0) {
      co.mats.emplace_back(f.source.dims[v], 0);
      continue;
    }
    auto c = coordinates(s.inclusion.mats[v], f.mats[v]);
    if (!c) throw InternalError("image corestriction failed");
    co.mats.push_back(*c);
  }
  return {s.module, s.inclusion, co};
}

inline Quotient cokernel(const ModuleMap& f) { return quotient_by_rows(f.target, f.mats); }

/// Direct sum with its structure maps.
struct DirectSum {
  Representation module;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};

inline DirectSum direct_sum(const std::vector<Representation>& parts, AlgebraPtr alg = nullptr) {
  if (parts.empty() && !alg) throw InputError("direct_sum of nothing needs an algebra");
  AlgebraPtr a = parts.empty() ? alg : parts[0].algebra;
  for (const auto& p : parts) {
    if (p.algebra != a) throw InputError("direct_sum: modules over different algebras");
  }
  std::vector<std::size_t> dims(a->vertex_count(), 0);
  for (const auto& p : parts) {
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += p.dims[v];
  }
  Representation s(a, dims);
  std::vector<std::size_t> off(a->vertex_count(), 0);
  DirectSum out{s, {}, {}};
  for (const auto& p : parts) {
    ModuleMap inc = ModuleMap::zero(p, s);
    ModuleMap pr = ModuleMap::zero(s, p);
    for (std::size_t v = 0; v < dims.size(); ++v) {
      for (std::size_t i = 0; i < p.dims[v]; ++i) {
        inc.mats[v](i, off[v] + i) = Scalar(1);
        pr.mats[v](off[v] + i, i) = Scalar(1);
      }
    }
    for (std::size_t g = 0; g < a->generators.size(); ++g) {
      const auto& gen = a->generators[g];
      out.module.gens[g].set_block(off[gen.source], off[gen.target], p.gens[g]);
    }
    for (std::size_t v = 0; v < dims.size(); ++v) off[v] += p.dims[v];
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(pr));
  }
  for (auto& f : out.inclusions) f.target = out.module;
  for (auto& f : out.projections) f.source = out.module;
  return out;
}

inline Representation direct_sum_module(const std::vector<Representation>& parts) {
  return direct_sum(parts).module;
}

inline Representation power(const Representation& m, std::size_t k) {
  return direct_sum(std::vector<Representation>(k, m), m.algebra).module;
}

/// Block map between direct sums: entry (i, j) maps part i of the source to part j of the target.
inline ModuleMap block_map(const DirectSum& src, const DirectSum& tgt, const std::vector<std::vector<ModuleMap>>& blocks) {
  ModuleMap f = ModuleMap::zero(src.module, tgt.module);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      ModuleMap piece = compose(tgt.inclusions[j], compose(blocks[i][j], src.projections[i]));
      f = f + piece;
    }
  }
  return f;
}

/// Inclusion of the sum of images of all maps gen -> target.
inline Submodule trace_submodule(const Representation& gen, const Representation& target) {
  require_same_algebra(gen, target);
  HomSpace h = hom_space(gen, target);
  std::vector<Matrix> rows;
  for (std::size_t v = 0; v < target.dims.size(); ++v) {
    Matrix acc(0, target.dims[v]);
    for (const auto& f : h.basis) acc = Matrix::vstack(acc, f.mats[v]);
    rows.push_back(acc);
  }
  return submodule(target, rows);
}

inline Submodule radical(const Representation& m) {
  const auto& a = *m.algebra;
  std::vector<Matrix> rows;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) rows.emplace_back(0, m.dims[v]);
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    const auto t = a.generators[g].target;
    rows[t] = Matrix::vstack(rows[t], m.gens[g]);
  }
  return submodule(m, rows);
}

inline Submodule socle(const Representation& m) {
  const auto& a = *m.algebra;
  std::vector<Matrix> rows;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) rows.push_back(Matrix::identity(m.dims[v]));
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    const auto s = a.generators[g].source;
    if (rows[s].rows() == 0) continue;
    Matrix k = solve_right_kernel(rows[s] * m.gens[g]);
    rows[s] = k.rows() ? k * rows[s] : Matrix(0, m.dims[s]);
  }
  return submodule(m, rows);
}

inline Quotient top(const Representation& m) { return quotient(m, radical(m).inclusion); }

inline Representation simple(AlgebraPtr a, std::size_t v) {
  if (v >= a->vertex_count()) throw InputError("unknown vertex");
  std::vector<std::size_t> d(a->vertex_count(), 0);
  d[v] = 1;
  return {a, d};
}

/// A direct sum of indecomposable projectives P_{tops[i]}. At vertex w the
/// basis is the list of pairs (i, b) with b a basis path from tops[i] to w.
struct ProjectiveModule {
  Representation rep;
  std::vector<std::size_t> tops;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> index;

  std::size_t rank() const { return tops.size(); }

  /// Row of generator i inside rep at vertex tops[i].
  std::size_t generator_row(std::size_t i) const {
    const auto& idx = index[tops[i]];
    const std::size_t e = rep.algebra->idempotents[tops[i]];
    for (std::size_t r = 0; r < idx.size(); ++r) {
      if (idx[r].first == i && idx[r].second == e) return r;
    }
    throw InternalError("generator row missing");
  }

  /// Row of (i, b) at vertex target(b).
  std::size_t row_of(std::size_t i, std::size_t b) const {
    const auto& idx = index[rep.algebra->basis[b].target];
    for (std::size_t r = 0; r < idx.size(); ++r) {
      if (idx[r].first == i && idx[r].second == b) return r;
    }
    throw InternalError("projective row missing");
  }
};

inline ProjectiveModule projective_sum(AlgebraPtr a, const std::vector<std::size_t>& tops) {
  const auto& alg = *a;
  const std::size_t nv = alg.vertex_count();
  ProjectiveModule p;
  p.tops = tops;
  p.index.assign(nv, {});
  for (std::size_t i = 0; i < tops.size(); ++i) {
    if (tops[i] >= nv) throw InputError("unknown vertex");
    for (std::size_t w = 0; w < nv; ++w) {
      for (auto b : alg.paths(tops[i], w)) p.index[w].push_back({i, b});
    }
  }
  std::vector<std::size_t> dims(nv);
  for (std::size_t w = 0; w < nv; ++w) dims[w] = p.index[w].size();
  p.rep = Representation(a, dims);
  // Row of (i, b) times generator g is (i, b*g) expanded.
  for (std::size_t g = 0; g < alg.generators.size(); ++g) {
    const auto& gen = alg.generators[g];
    Matrix& m = p.rep.gens[g];
    for (std::size_t r = 0; r < p.index[gen.source].size(); ++r) {
      auto [i, b] = p.index[gen.source][r];
      for (const auto& [k, c] : alg.mul(b, gen.basis)) m(r, p.row_of(i, k)) += c;
    }
  }
  return p;
}

inline ProjectiveModule projective_module(AlgebraPtr a, std::size_t v) { return projective_sum(std::move(a), {v}); }

inline Representation projective(AlgebraPtr a, std::size_t v) { return projective_module(std::move(a), v).rep; }

inline ProjectiveModule regular_module(AlgebraPtr a) {
  std::vector<std::size_t> tops(a->vertex_count());
  std::iota(tops.begin(), tops.end(), std::size_t{0});
  return projective_sum(std::move(a), tops);
}

/// I_v: the dual of the left projective A e_v.
inline Representation injective(AlgebraPtr a, std::size_t v) {
  const auto& alg = *a;
  if (v >= alg.vertex_count()) throw InputError("unknown vertex");
  const std::size_t nv = alg.vertex_count();
  std::vector<std::size_t> dims(nv);
  for (std::size_t w = 0; w < nv; ++w) dims[w] = alg.paths(w, v).size();
  Representation m(a, dims);
  for (std::size_t g = 0; g < alg.generators.size(); ++g) {
    const auto& gen = alg.generators[g];
    const auto& rows = alg.paths(gen.source, v);
    const auto& cols = alg.paths(gen.target, v);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (const auto& [k, coeff] : alg.mul(gen.basis, cols[c])) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r] == k) m.gens[g](r, c) += coeff;
        }
      }
    }
  }
  return m;
}

/// The map P -> N sending generator i to the row images[i] of N at tops[i].
inline ModuleMap map_from_generators(const ProjectiveModule& p, const Representation& n, const std::vector<Matrix>& images) {
  ModuleMap f = ModuleMap::zero(p.rep, n);
  for (std::size_t w = 0; w < p.index.size(); ++w) {
    for (std::size_t r = 0; r < p.index[w].size(); ++r) {
      auto [i, b] = p.index[w][r];
      if (images[i].is_zero()) continue;
      Matrix row = images[i] * n.act(b);
      f.mats[w].set_block(r, 0, row);
    }
  }
  return f;
}

/// Generator images of a map out of a projective module.
inline std::vector<Matrix> generator_images(const ProjectiveModule& p, const ModuleMap& f) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < p.tops.size(); ++i) out.push_back(f.mats[p.tops[i]].row(p.generator_row(i)));
  return out;
}

/// Concatenated generator coordinates of a map P -> N (length sum of dims N(tops[i])).
inline Matrix generator_coords(const ProjectiveModule& p, const ModuleMap& f) {
  std::size_t n = 0;
  for (auto t : p.tops) n += f.target.dims[t];
  Matrix out(1, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.tops.size(); ++i) {
    const std::size_t r = p.generator_row(i);
    for (std::size_t j = 0; j < f.target.dims[p.tops[i]]; ++j) out(0, k++) = f.mats[p.tops[i]](r, j);
  }
  return out;
}

inline std::size_t hom_from_projective_dim(const ProjectiveModule& p, const Representation& n) {
  std::size_t d = 0;
  for (auto t : p.tops) d += n.dims[t];
  return d;
}

inline ModuleMap map_from_coords(const ProjectiveModule& p, const Representation& n, const Matrix& coords, std::size_t row = 0) {
  std::vector<Matrix> images;
  std::size_t k = 0;
  for (auto t : p.tops) {
    images.push_back(coords.block(row, k, 1, n.dims[t]));
    k += n.dims[t];
  }
  return map_from_generators(p, n, images);
}

/// Matrix of f |-> f o d on generator coordinates, for d: P -> Q between
/// projective modules; maps coords of Hom(Q, N) to coords of Hom(P, N).
inline Matrix precompose_matrix(const ProjectiveModule& p, const ProjectiveModule& q, const ModuleMap& d,
                                const Representation& n) {
  const std::size_t rows = hom_from_projective_dim(q, n);
  const std::size_t cols = hom_from_projective_dim(p, n);
  Matrix out(rows, cols);
  std::vector<std::size_t> qoff(q.tops.size() + 1, 0);
  for (std::size_t i = 0; i < q.tops.size(); ++i) qoff[i + 1] = qoff[i] + n.dims[q.tops[i]];
  const auto acts = n.actions();
  std::size_t col = 0;
  for (std::size_t j = 0; j < p.tops.size(); ++j) {
    const std::size_t w = p.tops[j];
    const std::size_t r = p.generator_row(j);
    for (std::size_t c = 0; c < q.index[w].size(); ++c) {
      const Scalar& coeff = d.mats[w](r, c);
      if (coeff.is_zero()) continue;
      auto [i, b] = q.index[w][c];
      out.add_block(qoff[i], col, acts[b], coeff);
    }
    col += n.dims[w];
  }
  return out;
}

/// Matrix of f |-> g o f on generator coordinates, for g: N -> N'.
inline Matrix postcompose_matrix(const ProjectiveModule& p, const ModuleMap& g) {
  Matrix out(hom_from_projective_dim(p, g.source), hom_from_projective_dim(p, g.target));
  std::size_t r = 0;
  std::size_t c = 0;
  for (auto t : p.tops) {
    out.set_block(r, c, g.mats[t]);
    r += g.source.dims[t];
    c += g.target.dims[t];
  }
  return out;
}

}  // namespace tiltkit
