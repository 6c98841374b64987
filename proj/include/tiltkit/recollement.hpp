#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiltkit/tilting.hpp"

namespace tiltkit {

inline constexpr std::size_t default_max_steps = 16;

struct PerpFailure {
  std::size_t index;  ///< position in the list U
  std::size_t hom_dim;
  std::size_t ext1_dim;
};

struct PerpVerdict {
  bool member = true;
  std::vector<PerpFailure> failures;
};

/// x is in the perpendicular category of U: Hom(u, x) = Ext^1(u, x) = 0 for all u.
inline PerpVerdict perp_membership(const std::vector<Representation>& us, const Representation& x,
                                   std::size_t max_len = default_resolution_bound) {
  PerpVerdict v;
  for (std::size_t i = 0; i < us.size(); ++i) {
    auto pd = proj_dim(us[i], max_len);
    if (!pd || *pd > 1) throw PreconditionError("perp_membership: a module of U has projective dimension > 1");
    const std::size_t h = hom_space(us[i], x).dim();
    const std::size_t e = ext_dim(1, us[i], x, max_len);
    if (h != 0 || e != 0) {
      v.member = false;
      v.failures.push_back({i, h, e});
    }
  }
  return v;
}

struct PerpComplexVerdict {
  bool member = true;
  std::vector<Violation> hom_violations;   ///< nonzero Hom_D(m, y[n])
  std::vector<int> cohomology_violations;  ///< degrees n with H^n(y) outside the perpendicular category
};

/// y lies in the perpendicular category of m, checked through Hom_D(m, y[n]) and
/// through each cohomology module; the two verdicts must agree.
inline PerpComplexVerdict perp_complex_membership(const Representation& m, const PerfectComplex& y,
                                                  std::size_t max_len = default_resolution_bound) {
  auto pd = proj_dim(m, max_len);
  if (!pd || *pd > 1) throw PreconditionError("perp_complex_membership: projective dimension > 1");
  PerpComplexVerdict v;
  for (const auto& [n, d] : derived_hom_dims(resolve_to_complex(m, max_len), y)) {
    if (d != 0) v.hom_violations.push_back({n, d});
  }
  if (!y.is_zero()) {
    for (int n = y.lo; n <= y.hi(); ++n) {
      if (!perp_membership({m}, cohomology(y, n), max_len).member) v.cohomology_violations.push_back(n);
    }
  }
  const bool via_hom = v.hom_violations.empty();
  const bool via_cohomology = v.cohomology_violations.empty();
  if (via_hom != via_cohomology) throw InternalError("perpendicular verdicts via Hom and via cohomology disagree");
  v.member = via_hom;
  return v;
}

/// b: x -> y[n] seen as a degree-0 map x[-n] -> y.
inline ChainMap unshift_source(const ChainMap& b) {
  ChainMap g{shift(b.source, -b.degree), b.target, 0, {}};
  for (const auto& [p, c] : b.components) g.components[p + b.degree] = c;
  return g;
}

/// The map sum_j t[-i]^{n_i} -> m induced by bases of Hom_D(t, m[i]) over the given degrees.
struct BasisMap {
  ChainMap map;
  std::map<int, std::size_t> multiplicities;
};

inline BasisMap basis_induced_map(const PerfectComplex& t, const PerfectComplex& m, const std::vector<int>& degrees) {
  AlgebraPtr a = m.algebra;
  std::vector<PerfectComplex> parts;
  std::vector<std::vector<std::optional<ChainMap>>> blocks;
  BasisMap out;
  HomComplex h(t, m);
  for (int i : degrees) {
    Subquotient s = h.cohomology(i);
    out.multiplicities[i] = s.dim();
    for (std::size_t j = 0; j < s.dim(); ++j) {
      ChainMap g = unshift_source(h.map(i, s.basis.row(j)));
      parts.push_back(g.source);
      blocks.push_back({g});
    }
  }
  out.map = block_chain_map(parts, {m}, blocks, a);
  if (parts.empty()) out.map = zero_chain_map(PerfectComplex(a), m);
  return out;
}

struct Reflection {
  PerfectComplex object;  ///< q(m)
  ChainMap map;           ///< m -> q(m)
  std::map<int, std::size_t> multiplicities;  ///< n_i of the last (or only) step
  std::size_t steps = 0;
};

namespace detail {

inline bool hom_vanishes(const PerfectComplex& t, const PerfectComplex& y) {
  for (const auto& [n, d] : derived_hom_dims(t, y)) {
    if (d != 0) return false;
  }
  return true;
}

}  // namespace detail

/// One cone of sum_i t1[-i]^{n_i} -> m with n_i = dim Hom_D(t1, m[i]); needs End_D(t1) = K.
inline Reflection reflection_brick(const PerfectComplex& t1, const PerfectComplex& m) {
  if (derived_hom(t1, t1, 0) != 1) throw PreconditionError("reflection_brick: End(t1) is not the base field; use reflection_iterative");
  std::vector<int> degrees;
  for (const auto& [n, d] : derived_hom_dims(t1, m)) {
    if (d != 0) degrees.push_back(n);
  }
  Reflection r;
  if (degrees.empty()) {
    r.object = m;
    r.map = identity_chain_map(m);
    return r;
  }
  BasisMap b = basis_induced_map(t1, m, degrees);
  Cone c = cone(b.map);
  r.object = c.complex;
  r.map = c.inclusion;
  r.multiplicities = b.multiplicities;
  r.steps = 1;
  if (!detail::hom_vanishes(t1, r.object)) throw InternalError("reflection_brick: result is not in the perpendicular category");
  return r;
}

/// Kills the top nonzero degree of Hom_D(t1, M_n[i]) by one cone per step until all vanish.
inline Reflection reflection_iterative(const PerfectComplex& t1, const PerfectComplex& m,
                                       std::size_t max_steps = default_max_steps) {
  if (!is_exceptional(t1)) throw PreconditionError("reflection_iterative: t1 is not exceptional");
  Reflection r;
  r.object = m;
  r.map = identity_chain_map(m);
  while (true) {
    auto dims = derived_hom_dims(t1, r.object);
    std::optional<int> top;
    for (const auto& [n, d] : dims) {
      if (d != 0) top = n;
    }
    if (!top) return r;
    if (r.steps == max_steps) {
      throw BoundExceeded("reflection did not stabilize within " + std::to_string(max_steps) + " steps");
    }
    const int i = *top;
    BasisMap b = basis_induced_map(t1, r.object, {i});
    Cone c = cone(b.map);
    auto after = derived_hom_dims(t1, c.complex);
    for (const auto& [n, d] : after) {
      if (n >= i && d != 0) throw InternalError("reflection step left Hom(t1, M[n]) nonzero at or above the killed degree");
      if (n < i - 1) {
        auto it = dims.find(n);
        if (d != (it == dims.end() ? 0 : it->second)) throw InternalError("reflection step changed a lower degree");
      }
    }
    r.map = compose(c.inclusion, r.map);
    r.object = c.complex;
    r.multiplicities = b.multiplicities;
    ++r.steps;
  }
}

/// Left multiplication by the basis element b on the regular module, as an endomorphism.
inline ModuleMap left_multiplication(const ProjectiveModule& reg, std::size_t b) {
  const Algebra& a = *reg.rep.algebra;
  const auto& e = a.basis[b];
  std::vector<Matrix> images;
  for (std::size_t i = 0; i < reg.tops.size(); ++i) {
    Matrix row(1, reg.rep.dims[reg.tops[i]]);
    if (reg.tops[i] == e.target) row(0, reg.row_of(e.source, b)) = Scalar(1);
    images.push_back(row);
  }
  return map_from_generators(reg, reg.rep, images);
}

struct LocalizationReport {
  Representation t0;
  Representation t1;
  ShortExactSequence sequence;  ///< 0 -> A -> T_0 -> T_1 -> 0
  Submodule trace;              ///< trace of T_1 in T_0
  Representation module;        ///< R_U = T_0 / trace
  ModuleMap eta;                ///< A -> R_U
  HomSpace endomorphisms;       ///< basis of End(R_U); ring element i is basis map i
  RingPresentation ring;        ///< x * y = x o y
  std::vector<Matrix> lambda;   ///< image of each algebra basis element
  bool lambda_multiplicative = false;
  bool lambda_unital = false;
  Decomposition decomposition;
  std::optional<bool> reflection_agrees;  ///< set when the reflection of A is a module

  /// The ring as a left module over the algebra through lambda (a representation of the opposite algebra).
  Representation left_module() const {
    const Algebra& a = *sequence.left.algebra;
    AlgebraPtr op = opposite(a);
    std::vector<Matrix> bases;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
      Matrix l = ring.left_mult(lambda[a.idempotents[v]]);
      bases.push_back(l.rows() ? row_basis(l) : Matrix(0, ring.dim()));
      dims.push_back(bases.back().rows());
    }
    Representation y(op, dims);
    for (std::size_t g = 0; g < op->generators.size(); ++g) {
      const auto& gen = op->generators[g];
      Matrix& mat = y.gens[g];
      for (std::size_t r = 0; r < dims[gen.source]; ++r) {
        Matrix img = ring.mul(lambda[gen.basis], bases[gen.source].row(r));
        auto c = coordinates(bases[gen.target], img);
        if (!c) throw InternalError("left action leaves the vertex space");
        mat.set_block(r, 0, *c);
      }
    }
    return y;
  }
};

/// R_U = T_0 / trace_{T_1}(T_0), its endomorphism ring, and lambda with f o eta = eta o (left multiplication).
inline LocalizationReport universal_localization(const ShortExactSequence& seq, std::size_t max_len = default_resolution_bound,
                                                 std::size_t max_steps = default_max_steps, std::uint64_t seed = default_seed) {
  if (!seq.is_exact()) throw InputError("localization: the sequence is not exact");
  const AlgebraPtr& alg = seq.left.algebra;
  ProjectiveModule reg = regular_module(alg);
  if (seq.left.dims != reg.rep.dims || !(seq.left.gens == reg.rep.gens)) {
    throw InputError("localization: the sequence does not start at the regular module");
  }
  LocalizationReport rep;
  rep.t0 = seq.middle;
  rep.t1 = seq.right;
  rep.sequence = seq;
  rep.trace = trace_submodule(seq.right, seq.middle);
  Quotient q = quotient(seq.middle, rep.trace.inclusion);
  rep.module = q.module;
  rep.eta = compose(q.projection, seq.inclusion);
  rep.endomorphisms = hom_space(rep.module, rep.module);
  std::vector<Matrix> mats;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rep.endomorphisms.dim(); ++i) {
    mats.push_back(rep.endomorphisms.basis[i].total());
    labels.push_back("f" + std::to_string(i));
  }
  rep.ring = ring_from_matrices(alg->field, mats, labels, true);

  // lambda(a): the unique f with f o eta = eta o m_a.
  Matrix eq(0, rep.eta.flatten().cols());
  for (const auto& f : rep.endomorphisms.basis) eq = Matrix::vstack(eq, compose(f, rep.eta).flatten());
  if (eq.rows() && rank(eq) != eq.rows()) throw InternalError("localization: f o eta does not determine f");
  for (std::size_t b = 0; b < alg->dim(); ++b) {
    Matrix target = compose(rep.eta, left_multiplication(reg, b)).flatten();
    auto c = eq.rows() ? coordinates(eq, target) : (target.is_zero() ? std::optional<Matrix>(Matrix(1, 0)) : std::nullopt);
    if (!c) throw InternalError("localization: eta o m_a does not factor through eta");
    rep.lambda.push_back(*c);
  }
  rep.lambda_multiplicative = true;
  for (std::size_t i = 0; i < alg->dim() && rep.lambda_multiplicative; ++i) {
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      Matrix lhs(1, rep.ring.dim());
      for (const auto& [k, c] : alg->mul(i, j)) lhs.add_block(0, 0, rep.lambda[k], c);
      if (!(lhs == rep.ring.mul(rep.lambda[i], rep.lambda[j]))) {
        rep.lambda_multiplicative = false;
        break;
      }
    }
  }
  Matrix one(1, rep.ring.dim());
  for (auto e : alg->idempotents) one = one + rep.lambda[e];
  rep.lambda_unital = rep.ring.dim() == 0 || one == rep.ring.unit;
  rep.decomposition = decompose(rep.module, seed);

  try {
    PerfectComplex t1c = resolve_to_complex(seq.right, max_len);
    Reflection r = reflection_iterative(t1c, resolve_to_complex(seq.left, max_len), max_steps);
    auto support = cohomology_support(r.object);
    if (support.empty() || support == std::vector<int>{0}) {
      Representation h0 = cohomology(r.object, 0);
      rep.reflection_agrees = is_isomorphic(h0, rep.module, seed);
      if (!*rep.reflection_agrees) throw InternalError("localization: trace quotient and reflection of A disagree");
    }
  } catch (const BoundExceeded&) {
    rep.reflection_agrees.reset();
  }
  return rep;
}

/// Evidence that the ring is a full matrix ring over K: orthogonal primitive
/// idempotents summing to 1, and every basis element generating the whole ring.
struct MatrixRingEvidence {
  std::size_t dim = 0;
  std::vector<Matrix> idempotents;
  bool orthogonal = false;
  bool primitive = false;
  bool simple_scan = false;
};

inline MatrixRingEvidence matrix_ring_evidence(const LocalizationReport& rep) {
  MatrixRingEvidence ev;
  const RingPresentation& ring = rep.ring;
  ev.dim = ring.dim();
  // Idempotents from the projections onto the indecomposable summands of R_U.
  for (const auto& c : rep.decomposition.classes) {
    for (const auto& s : c.copies) {
      ModuleMap e = compose(s.inclusion, s.projection);
      Matrix basis(0, e.flatten().cols());
      for (const auto& f : rep.endomorphisms.basis) basis = Matrix::vstack(basis, f.flatten());
      auto coords = coordinates(basis, e.flatten());
      if (!coords) throw InternalError("summand idempotent outside End(R_U)");
      ev.idempotents.push_back(*coords);
    }
  }
  ev.orthogonal = true;
  Matrix sum(1, ring.dim());
  for (std::size_t i = 0; i < ev.idempotents.size(); ++i) {
    if (!ring.is_idempotent(ev.idempotents[i])) ev.orthogonal = false;
    sum = sum + ev.idempotents[i];
    for (std::size_t j = 0; j < ev.idempotents.size(); ++j) {
      if (i != j && !ring.mul(ev.idempotents[i], ev.idempotents[j]).is_zero()) ev.orthogonal = false;
    }
  }
  if (!(sum == ring.unit)) ev.orthogonal = false;
  ev.primitive = true;
  for (const auto& e : ev.idempotents) {
    // e S e is one-dimensional.
    Matrix span(0, ring.dim());
    for (std::size_t k = 0; k < ring.dim(); ++k) span = Matrix::vstack(span, ring.mul(ring.mul(e, ring.basis_element(k)), e));
    if (rank(span) != 1) ev.primitive = false;
  }
  ev.simple_scan = ring.dim() > 0;
  for (std::size_t k = 0; k < ring.dim(); ++k) {
    if (ring.two_sided_ideal(ring.basis_element(k)).rows() != ring.dim()) ev.simple_scan = false;
  }
  return ev;
}

struct HomologicalEpiVerdict {
  std::vector<std::size_t> ext_dims;  ///< dim Ext^i(R_U, R_U), i = 1..
  std::vector<std::size_t> tor_dims;  ///< dim Tor_i(S, S), i = 1..
  bool ext_vanishes = false;
  bool tor_vanishes = false;

  bool homological() const { return ext_vanishes; }
  bool agree() const { return ext_vanishes == tor_vanishes; }
};

inline HomologicalEpiVerdict homological_epi_check(const LocalizationReport& rep, std::size_t max_degree = 6,
                                                   std::size_t max_len = default_resolution_bound) {
  HomologicalEpiVerdict v;
  Representation left = rep.left_module();
  try {
    left.validate();
  } catch (const InputError& e) {
    throw InternalError(std::string("lambda does not define a left module: ") + e.what());
  }
  for (std::size_t i = 1; i <= max_degree; ++i) {
    v.ext_dims.push_back(ext_dim(i, rep.module, rep.module, max_len));
    v.tor_dims.push_back(tor_dim(i, rep.module, left, max_len));
  }
  v.ext_vanishes = std::all_of(v.ext_dims.begin(), v.ext_dims.end(), [](std::size_t d) { return d == 0; });
  v.tor_vanishes = std::all_of(v.tor_dims.begin(), v.tor_dims.end(), [](std::size_t d) { return d == 0; });
  return v;
}

/// Ae as a right eAe-module and eA as a left eAe-module.
struct CornerModules {
  CornerAlgebra corner;
  Representation ae;
  Representation ea;  ///< over the opposite of the corner ring
};

inline CornerModules corner_modules(const AlgebraPtr& a, const std::vector<std::size_t>& verts) {
  CornerModules out;
  out.corner = corner_algebra(*a, verts);
  const CornerAlgebra& c = out.corner;
  const Algebra& alg = *a;
  const std::size_t n = c.vertices.size();
  std::vector<std::vector<std::size_t>> ends(n);
  std::vector<std::vector<std::size_t>> starts(n);
  for (std::size_t b = 0; b < alg.dim(); ++b) {
    for (std::size_t k = 0; k < n; ++k) {
      if (alg.basis[b].target == c.vertices[k]) ends[k].push_back(b);
      if (alg.basis[b].source == c.vertices[k]) starts[k].push_back(b);
    }
  }
  auto position = [](const std::vector<std::size_t>& list, std::size_t b) {
    auto it = std::find(list.begin(), list.end(), b);
    if (it == list.end()) throw InternalError("corner module basis missing");
    return static_cast<std::size_t>(it - list.begin());
  };
  std::vector<std::size_t> dims_ae;
  std::vector<std::size_t> dims_ea;
  for (std::size_t k = 0; k < n; ++k) {
    dims_ae.push_back(ends[k].size());
    dims_ea.push_back(starts[k].size());
  }
  out.ae = Representation(c.algebra, dims_ae);
  for (std::size_t g = 0; g < c.algebra->generators.size(); ++g) {
    const auto& gen = c.algebra->generators[g];
    const std::size_t pb = c.basis_in_parent[gen.basis];
    for (std::size_t r = 0; r < ends[gen.source].size(); ++r) {
      for (const auto& [k, coeff] : alg.mul(ends[gen.source][r], pb)) out.ae.gens[g](r, position(ends[gen.target], k)) += coeff;
    }
  }
  AlgebraPtr op = opposite(*c.algebra);
  out.ea = Representation(op, dims_ea);
  for (std::size_t g = 0; g < op->generators.size(); ++g) {
    const auto& gen = op->generators[g];
    const std::size_t pb = c.basis_in_parent[gen.basis];
    for (std::size_t r = 0; r < starts[gen.source].size(); ++r) {
      for (const auto& [k, coeff] : alg.mul(pb, starts[gen.source][r])) out.ea.gens[g](r, position(starts[gen.target], k)) += coeff;
    }
  }
  return out;
}

struct StratifyingVerdict {
  std::vector<std::size_t> vertices;
  std::size_t tensor_dim = 0;  ///< dim Ae (x)_{eAe} eA
  std::size_t ideal_dim = 0;   ///< dim AeA
  std::vector<std::size_t> tor_dims;  ///< Tor_i^{eAe}(Ae, eA), i = 1..
  bool resolution_complete = true;    ///< false when Ae has no resolution within the bound

  bool multiplication_bijective() const { return tensor_dim == ideal_dim; }
  bool stratifying() const {
    return multiplication_bijective() && std::all_of(tor_dims.begin(), tor_dims.end(), [](std::size_t d) { return d == 0; });
  }
};

inline std::size_t idempotent_ideal_dim(const Algebra& a, const std::vector<std::size_t>& verts) {
  Matrix span(0, a.dim());
  for (std::size_t x = 0; x < a.dim(); ++x) {
    if (std::find(verts.begin(), verts.end(), a.basis[x].target) == verts.end()) continue;
    for (std::size_t y = 0; y < a.dim(); ++y) {
      if (a.basis[y].source != a.basis[x].target) continue;
      Matrix row(1, a.dim());
      for (const auto& [k, c] : a.mul(x, y)) row(0, k) += c;
      span = Matrix::vstack(span, row);
    }
  }
  return span.rows() ? rank(span) : 0;
}

inline StratifyingVerdict stratifying_ideal_check(const AlgebraPtr& a, const std::vector<std::size_t>& verts,
                                                  std::size_t max_len = default_resolution_bound) {
  StratifyingVerdict v;
  CornerModules cm = corner_modules(a, verts);
  v.vertices = cm.corner.vertices;
  v.ideal_dim = idempotent_ideal_dim(*a, cm.corner.vertices);
  v.tensor_dim = tor_dim(0, cm.ae, cm.ea, max_len);
  Resolution r = partial_resolution(cm.ae, max_len);
  v.resolution_complete = r.complete;
  const std::size_t top = r.complete ? r.length() : max_len - 1;
  for (std::size_t i = 1; i <= top; ++i) {
    v.tor_dims.push_back(tor_dim(i, cm.ae, cm.ea, max_len));
    if (!r.complete && v.tor_dims.back() != 0) break;
  }
  if (!r.complete && v.stratifying()) {
    throw BoundExceeded("stratify: resolution of Ae over eAe exceeds length " + std::to_string(max_len));
  }
  return v;
}

struct RecollementReport {
  TiltingCertificate certificate;
  PerfectComplex x_generator;  ///< T_1
  Reflection y_object;         ///< T_2, the reflection of A
  std::vector<Violation> orthogonality_violations;  ///< nonzero Hom_D(T_1[n], T_2)
  bool hom_t1_t0_vanishes = false;  ///< the case Hom(T_1, T_0) = 0
  std::optional<bool> equivalent_to_localization_sum;  ///< T ~ R_U + R_U/A (heuristic)
  bool t2_exceptional = false;
  std::optional<bool> t2_matches_localization;
  LocalizationReport localization;
  HomologicalEpiVerdict homological_epi;

  bool orthogonal() const { return orthogonality_violations.empty(); }
};

inline RecollementReport recollement_report(const Representation& t, std::size_t max_len = default_resolution_bound,
                                            std::size_t max_steps = default_max_steps, std::uint64_t seed = default_seed) {
  RecollementReport r;
  r.certificate = tilting_module_check(t, max_len, seed);
  if (!r.certificate.passed()) {
    std::string why;
    for (const auto& f : r.certificate.failures()) why += (why.empty() ? "" : "; ") + f;
    throw PreconditionError("recollement: not a tilting module: " + why);
  }
  const ShortExactSequence& seq = r.certificate.sequence;
  r.x_generator = resolve_to_complex(seq.right, max_len);
  PerfectComplex reg = resolve_to_complex(seq.left, max_len);
  r.y_object = reflection_iterative(r.x_generator, reg, max_steps);
  for (const auto& [n, d] : derived_hom_dims(r.x_generator, r.y_object.object)) {
    if (d != 0) r.orthogonality_violations.push_back({n, d});
  }
  r.hom_t1_t0_vanishes = hom_space(seq.right, seq.middle).dim() == 0;
  r.localization = universal_localization(seq, max_len, max_steps, seed);
  r.homological_epi = homological_epi_check(r.localization, 6, max_len);
  if (r.hom_t1_t0_vanishes && r.localization.eta.is_injective()) {
    Representation rest = cokernel(r.localization.eta).module;
    r.equivalent_to_localization_sum = same_perp_heuristic(t, direct_sum_module({r.localization.module, rest}), max_len);
  }
  r.t2_exceptional = is_exceptional(r.y_object.object);
  if (r.t2_exceptional) {
    auto support = cohomology_support(r.y_object.object);
    r.t2_matches_localization = (support.empty() || support == std::vector<int>{0}) &&
                                is_isomorphic(cohomology(r.y_object.object, 0), r.localization.module, seed);
    if (!*r.t2_matches_localization) throw InternalError("recollement: exceptional T_2 differs from R_U");
  }
  return r;
}

}  // namespace tiltkit
