#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiltkit/derived.hpp"

namespace tiltkit {

/// A degree where a vanishing condition fails.
struct Violation {
  int degree;
  std::size_t dim;
};

/// Two exceptional complexes with Hom(t1, t2[k]) = 0 for all k and
/// Hom(t2, t1[k]) = 0 for k outside {0, 1}.
struct ExceptionalPair {
  PerfectComplex t1;
  PerfectComplex t2;
  bool t1_exceptional = false;
  bool t2_exceptional = false;
  std::vector<Violation> a1_violations;  ///< nonzero Hom(t1, t2[k])
  std::vector<Violation> a2_violations;  ///< nonzero Hom(t2, t1[k]), k not in {0, 1}
  DerivedHom ext;                        ///< Hom(t2, t1[1])

  bool a1() const { return a1_violations.empty(); }
  bool a2() const { return a2_violations.empty(); }
  bool valid() const { return t1_exceptional && t2_exceptional && a1() && a2(); }
};

inline ExceptionalPair check_A1_A2(const PerfectComplex& t1, const PerfectComplex& t2) {
  ExceptionalPair p;
  p.t1 = t1;
  p.t2 = t2;
  p.t1_exceptional = is_exceptional(t1);
  p.t2_exceptional = is_exceptional(t2);
  for (const auto& [k, d] : derived_hom_dims(t1, t2)) {
    if (d != 0) p.a1_violations.push_back({k, d});
  }
  for (const auto& [k, d] : derived_hom_dims(t2, t1)) {
    if (d != 0 && k != 0 && k != 1) p.a2_violations.push_back({k, d});
  }
  p.ext = derived_hom_space(t2, t1, 1);
  return p;
}

/// The complex T in the triangle t1 -> T -> t2 -> t1[1] given by alpha (a degree-1 map t2 -> t1).
inline PerfectComplex triangle_middle(const ChainMap& alpha) {
  if (alpha.degree != 1) throw PreconditionError("triangle_middle needs a degree-1 map");
  return shift(cone(as_degree_zero(alpha)).complex, -1);
}

struct ConeExceptionality {
  PerfectComplex complex;       ///< T with t1 -> T -> t2 -> t1[1]
  bool exceptional = false;     ///< direct verdict on T
  bool criterion_surjective = false;
  std::size_t criterion_rank = 0;
  std::size_t ext_dim = 0;
};

/// Checks exceptionality of T directly and through the surjectivity of
/// End(t2) + End(t1) -> Hom(t2, t1[1]), (f, g) |-> alpha f + g[1] alpha.
/// The two verdicts must agree; a disagreement raises InternalError.
inline ConeExceptionality cone_exceptionality(const ExceptionalPair& pair, const ChainMap& alpha) {
  if (!pair.valid()) throw PreconditionError("pair violates the exceptional-pair conditions");
  ConeExceptionality out;
  out.complex = triangle_middle(alpha);
  out.exceptional = is_exceptional(out.complex);
  out.ext_dim = pair.ext.dim();
  Matrix span(0, pair.ext.dim());
  DerivedHom end2 = derived_hom_space(pair.t2, pair.t2, 0);
  DerivedHom end1 = derived_hom_space(pair.t1, pair.t1, 0);
  for (std::size_t i = 0; i < end2.dim(); ++i) span = Matrix::vstack(span, pair.ext.class_of(compose(alpha, end2.basis_map(i))));
  for (std::size_t i = 0; i < end1.dim(); ++i) span = Matrix::vstack(span, pair.ext.class_of(compose(end1.basis_map(i), alpha)));
  out.criterion_rank = span.rows() ? rank(span) : 0;
  out.criterion_surjective = out.criterion_rank == pair.ext.dim();
  if (out.exceptional != out.criterion_surjective) {
    throw InternalError("cone exceptionality and the surjectivity criterion disagree");
  }
  return out;
}

/// A map out of a sum of copies of t2 (or into a sum of copies of t1[1]) built from a basis.
struct UniversalMap {
  ChainMap map;           ///< degree-1 map source -> target
  std::size_t multiplicity = 0;
  bool universal = false;  ///< verified left (resp. right) universality
};

namespace detail {

inline ChainMap with_degree(const ChainMap& f0, const PerfectComplex& target, int n) {
  return ChainMap{f0.source, target, n, f0.components};
}

}  // namespace detail

/// alpha: t2^m -> t1[1] given by a basis of Hom(t2, t1[1]).
inline UniversalMap left_universal_map(const PerfectComplex& t2, const PerfectComplex& t1) {
  DerivedHom ext = derived_hom_space(t2, t1, 1);
  const std::size_t m = ext.dim();
  AlgebraPtr a = t2.algebra;
  std::vector<PerfectComplex> src(m, t2);
  PerfectComplex t1s = shift(t1, 1);
  std::vector<std::vector<std::optional<ChainMap>>> blocks(m, std::vector<std::optional<ChainMap>>(1));
  for (std::size_t i = 0; i < m; ++i) blocks[i][0] = as_degree_zero(ext.basis_map(i));
  ChainMap f0 = block_chain_map(src, {t1s}, blocks, a);
  UniversalMap u;
  u.multiplicity = m;
  u.map = detail::with_degree(f0, t1, 1);
  DerivedHom h = derived_hom_space(u.map.source, t1, 1);
  DerivedHom end = derived_hom_space(u.map.source, u.map.source, 0);
  Matrix span(0, h.dim());
  for (std::size_t i = 0; i < end.dim(); ++i) span = Matrix::vstack(span, h.class_of(compose(u.map, end.basis_map(i))));
  u.universal = (span.rows() ? rank(span) : 0) == h.dim();
  return u;
}

/// beta: t2 -> t1[1]^m given by a basis of Hom(t2, t1[1]).
inline UniversalMap right_universal_map(const PerfectComplex& t2, const PerfectComplex& t1) {
  DerivedHom ext = derived_hom_space(t2, t1, 1);
  const std::size_t m = ext.dim();
  AlgebraPtr a = t2.algebra;
  PerfectComplex t1s = shift(t1, 1);
  std::vector<PerfectComplex> tgt(m, t1s);
  std::vector<std::vector<std::optional<ChainMap>>> blocks(1, std::vector<std::optional<ChainMap>>(m));
  for (std::size_t i = 0; i < m; ++i) blocks[0][i] = as_degree_zero(ext.basis_map(i));
  ChainMap f0 = block_chain_map({t2}, tgt, blocks, a);
  PerfectComplex t1m = m ? complex_power(t1, m) : PerfectComplex(a);
  UniversalMap u;
  u.multiplicity = m;
  u.map = detail::with_degree(f0, t1m, 1);
  DerivedHom h = derived_hom_space(t2, t1m, 1);
  DerivedHom end = derived_hom_space(t1m, t1m, 0);
  Matrix span(0, h.dim());
  for (std::size_t i = 0; i < end.dim(); ++i) span = Matrix::vstack(span, h.class_of(compose(end.basis_map(i), u.map)));
  u.universal = (span.rows() ? rank(span) : 0) == h.dim();
  return u;
}

/// Structural evidence that x generates: every simple is seen by some Hom(x, S_v[n]).
inline std::vector<std::size_t> unseen_simples(const PerfectComplex& x, std::size_t max_len = default_resolution_bound) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < x.algebra->vertex_count(); ++v) {
    bool seen = false;
    for (const auto& [n, d] : derived_hom_dims(x, resolve_to_complex(simple(x.algebra, v), max_len))) {
      if (d != 0) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(v);
  }
  return out;
}

struct TiltingObject {
  PerfectComplex complex;
  PerfectComplex new_part;  ///< C_1 or C_2
  bool exceptional = false;
  std::vector<std::size_t> unseen_simples;

  bool certified() const { return exceptional && unseen_simples.empty(); }
};

struct ConstructedTilting {
  std::size_t multiplicity = 0;  ///< dim Hom(t2, t1[1])
  UniversalMap alpha;
  UniversalMap beta;
  TiltingObject c1_t2;  ///< C_1 + t2 with t1 -> C_1 -> t2^m -> t1[1]
  TiltingObject t1_c2;  ///< t1 + C_2 with t1^m -> C_2 -> t2 -> t1^m[1]
};

inline ConstructedTilting construct_tilting(const ExceptionalPair& pair, std::size_t max_len = default_resolution_bound) {
  if (!pair.valid()) throw PreconditionError("pair violates the exceptional-pair conditions");
  ConstructedTilting out;
  out.alpha = left_universal_map(pair.t2, pair.t1);
  out.beta = right_universal_map(pair.t2, pair.t1);
  out.multiplicity = out.alpha.multiplicity;
  AlgebraPtr a = pair.t1.algebra;

  PerfectComplex c1 = out.multiplicity ? triangle_middle(out.alpha.map) : pair.t1;
  PerfectComplex c2 = out.multiplicity ? triangle_middle(out.beta.map) : pair.t2;
  auto finish = [&](PerfectComplex part, const std::vector<PerfectComplex>& summands) {
    TiltingObject t;
    t.new_part = std::move(part);
    t.complex = complex_sum(summands, a);
    t.exceptional = is_exceptional(t.complex);
    t.unseen_simples = unseen_simples(t.complex, max_len);
    return t;
  };
  if (out.multiplicity == 0) {
    out.c1_t2 = finish(c1, {pair.t1, pair.t2});
    out.t1_c2 = finish(c2, {pair.t1, pair.t2});
  } else {
    out.c1_t2 = finish(c1, {c1, pair.t2});
    out.t1_c2 = finish(c2, {pair.t1, c2});
  }
  return out;
}

/// Witnesses for pd T <= 1, Ext^1(T, T) = 0 and a sequence 0 -> A -> T_0 -> T_1 -> 0 with T_i in add T.
struct TiltingCertificate {
  Representation module;
  std::optional<std::size_t> proj_dim;
  std::size_t ext1_self = 0;
  AddApproximation approximation;
  ShortExactSequence sequence;  ///< 0 -> A -> T_0 -> T_1 -> 0
  bool approximation_injective = false;
  bool cokernel_in_add = false;

  bool pd_ok() const { return proj_dim && *proj_dim <= 1; }
  bool ext_ok() const { return ext1_self == 0; }
  bool sequence_ok() const { return approximation_injective && cokernel_in_add; }
  bool passed() const { return pd_ok() && ext_ok() && sequence_ok(); }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    if (!proj_dim) {
      out.push_back("projective dimension exceeds the bound");
    } else if (*proj_dim > 1) {
      out.push_back("projective dimension " + std::to_string(*proj_dim) + " > 1");
    }
    if (!ext_ok()) out.push_back("dim Ext^1(T, T) = " + std::to_string(ext1_self));
    if (!approximation_injective) out.push_back("approximation of the regular module is not injective");
    if (approximation_injective && !cokernel_in_add) out.push_back("cokernel of the approximation is not in add T");
    return out;
  }
};

inline TiltingCertificate tilting_module_check(const Representation& t, std::size_t max_len = default_resolution_bound,
                                               std::uint64_t seed = default_seed) {
  TiltingCertificate c;
  c.module = t;
  c.proj_dim = proj_dim(t, max_len);
  c.ext1_self = ext_dim(1, t, t, max_len);
  Representation r = regular_module(t.algebra).rep;
  c.approximation = left_add_approximation(r, t, seed);
  const ModuleMap& f = c.approximation.map;
  c.approximation_injective = f.is_injective();
  Quotient q = cokernel(f);
  c.sequence = {r, f.target, q.module, f, q.projection};
  if (c.approximation_injective) c.cokernel_in_add = in_add(q.module, c.approximation.t_decomposition, seed);
  return c;
}

struct BongartzComplement {
  Representation complement;  ///< N
  UniversalExtension extension;  ///< 0 -> A -> N -> M^k -> 0
  TiltingCertificate certificate;  ///< for N + M
};

inline BongartzComplement bongartz_complement(const Representation& m, std::size_t max_len = default_resolution_bound,
                                              std::uint64_t seed = default_seed) {
  auto pd = proj_dim(m, max_len);
  if (!pd) throw PreconditionError("bongartz: projective dimension exceeds the bound");
  if (*pd > 1) throw PreconditionError("bongartz: projective dimension " + std::to_string(*pd) + " > 1");
  const std::size_t e = ext_dim(1, m, m, max_len);
  if (e != 0) throw PreconditionError("bongartz: dim Ext^1(M, M) = " + std::to_string(e));
  BongartzComplement b;
  b.extension = universal_extension(m, regular_module(m.algebra).rep, max_len);
  b.complement = b.extension.sequence.middle;
  b.certificate = tilting_module_check(direct_sum_module({b.complement, m}), max_len, seed);
  return b;
}

/// Heuristic comparison of two tilting modules: Ext^1(-, X) vanishes for the
/// same X among simples, indecomposable projectives and injectives. Never a proof.
inline bool same_perp_heuristic(const Representation& t, const Representation& u, std::size_t max_len = default_resolution_bound) {
  const AlgebraPtr& a = t.algebra;
  for (std::size_t v = 0; v < a->vertex_count(); ++v) {
    for (const auto& x : {simple(a, v), projective(a, v), injective(a, v)}) {
      if ((ext_dim(1, t, x, max_len) == 0) != (ext_dim(1, u, x, max_len) == 0)) return false;
    }
  }
  return true;
}

}  // namespace tiltkit
