#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "tiltkit/polynomial.hpp"
#include "tiltkit/representation.hpp"
#include "tiltkit/ring.hpp"

namespace tiltkit {

inline constexpr std::uint64_t default_seed = 0x5eed;

namespace detail {

inline Scalar random_scalar(std::mt19937_64& rng, const FieldSpec& f) {
  if (f.is_rational()) {
    std::uniform_int_distribution<long> d(-64, 64);
    return Scalar(d(rng));
  }
  return Scalar::residue(rng() % f.characteristic, f.characteristic);
}

inline std::vector<Scalar> random_coeffs(std::mt19937_64& rng, const FieldSpec& f, std::size_t n) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(random_scalar(rng, f));
  return c;
}

inline bool all_invertible(const ModuleMap& f) {
  for (std::size_t v = 0; v < f.mats.size(); ++v) {
    if (!is_invertible(f.mats[v])) return false;
  }
  return true;
}

}  // namespace detail

/// An invertible morphism m -> n if one is found. Invertible elements form a
/// Zariski-open subset of Hom(m, n): random combinations find one with high
/// probability when it exists, and a 0/1 grid over small bases follows.
inline std::optional<ModuleMap> find_isomorphism(const Representation& m, const Representation& n,
                                                 std::uint64_t seed = default_seed) {
  require_same_algebra(m, n);
  if (m.dims != n.dims) return std::nullopt;
  if (m.is_zero()) return ModuleMap::zero(m, n);
  HomSpace h = hom_space(m, n);
  if (h.dim() == 0) return std::nullopt;
  const FieldSpec& f = m.algebra->field;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    ModuleMap g = combine(h, m, n, detail::random_coeffs(rng, f, h.dim()));
    if (detail::all_invertible(g)) return g;
  }
  if (h.dim() <= 12) {
    for (std::uint32_t mask = 1; mask < (1u << h.dim()); ++mask) {
      std::vector<Scalar> c;
      for (std::size_t i = 0; i < h.dim(); ++i) c.push_back(Scalar(static_cast<int>((mask >> i) & 1u)));
      ModuleMap g = combine(h, m, n, c);
      if (detail::all_invertible(g)) return g;
    }
  }
  return std::nullopt;
}

inline bool is_isomorphic(const Representation& m, const Representation& n, std::uint64_t seed = default_seed) {
  return find_isomorphism(m, n, seed).has_value();
}

/// End(m) as a matrix algebra on the total space of m.
struct EndomorphismAlgebra {
  HomSpace hom;
  std::vector<Matrix> mats;  ///< total matrices of the basis
  Matrix radical;            ///< coefficient rows spanning J(End m)
};

inline EndomorphismAlgebra endomorphism_algebra(const Representation& m) {
  EndomorphismAlgebra e;
  e.hom = hom_space(m, m);
  for (const auto& f : e.hom.basis) e.mats.push_back(f.total());
  Matrix j = trace_radical(m.algebra->field, e.mats);
  e.radical = j.rows() ? row_basis(j) : Matrix(0, e.hom.dim());
  return e;
}

/// An indecomposable summand with its structure maps relative to the input.
struct Summand {
  Representation module;
  ModuleMap inclusion;   ///< summand -> input
  ModuleMap projection;  ///< input -> summand
};

struct IsoClass {
  Representation module;  ///< representative
  std::size_t multiplicity = 0;
  std::vector<Summand> copies;
};

struct Decomposition {
  std::vector<IsoClass> classes;
  /// True when every summand was shown indecomposable by End/J being one-dimensional.
  bool certified = true;

  std::size_t summand_count() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.multiplicity;
    return n;
  }
};

namespace detail {

inline bool is_nilpotent(const ModuleMap& f) {
  for (std::size_t v = 0; v < f.mats.size(); ++v) {
    Matrix p = f.mats[v];
    for (std::size_t k = 1; k < f.source.dims[v]; ++k) p = p * f.mats[v];
    if (!p.is_zero()) return false;
  }
  return true;
}

/// Fitting splitting M = ker psi^N + im psi^N; both parts nonzero when psi
/// is neither nilpotent nor invertible.
inline std::pair<Summand, Summand> fitting_split(const Representation& m, const ModuleMap& psi) {
  std::vector<Matrix> ker_rows;
  std::vector<Matrix> im_rows;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Matrix p = Matrix::identity(m.dims[v]);
    for (std::size_t k = 0; k < m.dims[v]; ++k) p = p * psi.mats[v];
    ker_rows.push_back(solve_right_kernel(p));
    im_rows.push_back(m.dims[v] ? row_basis(p) : Matrix(0, 0));
  }
  Submodule k = submodule(m, ker_rows);
  Submodule i = submodule(m, im_rows);
  ModuleMap pk = ModuleMap::zero(m, k.module);
  ModuleMap pi = ModuleMap::zero(m, i.module);
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    if (m.dims[v] == 0) continue;
    Matrix c = Matrix::vstack(k.inclusion.mats[v], i.inclusion.mats[v]);
    auto inv = inverse(c);
    if (!inv) throw InternalError("Fitting parts do not span");
    pk.mats[v] = inv->block(0, 0, m.dims[v], k.module.dims[v]);
    pi.mats[v] = inv->block(0, k.module.dims[v], m.dims[v], i.module.dims[v]);
  }
  return {Summand{k.module, k.inclusion, pk}, Summand{i.module, i.inclusion, pi}};
}

inline std::optional<ModuleMap> try_split_endomorphism(const Representation& m, const EndomorphismAlgebra& e,
                                                       std::mt19937_64& rng) {
  const FieldSpec& f = m.algebra->field;
  const std::size_t d = e.hom.dim();
  auto element = [&](const Matrix& coeff_row) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(coeff_row(0, i));
    return combine(e.hom, m, m, c);
  };
  auto random_in = [&](const Matrix& rows) {
    Matrix c(1, rows.cols());
    for (std::size_t r = 0; r < rows.rows(); ++r) c.add_block(0, 0, rows.row(r), random_scalar(rng, f));
    return c;
  };
  auto good = [&](const ModuleMap& psi) { return !is_nilpotent(psi) && !all_invertible(psi); };

  auto shifted_by_roots = [&](const ModuleMap& phi) -> std::optional<ModuleMap> {
    Poly mu = minimal_polynomial(phi.total());
    for (const auto& lambda : poly_roots(mu, f, rng())) {
      ModuleMap psi = phi + (Scalar(-1) * lambda) * ModuleMap::identity(m);
      if (good(psi)) return psi;
    }
    return std::nullopt;
  };

  // Central elements of End/J: their eigenvalues separate blocks.
  QuotientBasis qj = quotient_basis(d, e.radical);
  if (qj.section.rows() > 1) {
    RingPresentation ring = ring_from_matrices(f, e.mats);
    Matrix z = ring.center();
    Matrix zj = sum_subspaces(z, e.radical);
    if (zj.rows() > e.radical.rows()) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        if (auto psi = shifted_by_roots(element(random_in(z)))) return psi;
      }
    }
  }

  // Elements killing a vector m0: a right ideal, outside J iff it contains
  // a non-nilpotent element, which is then a non-invertible splitter.
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    std::vector<Matrix> probes;
    for (std::size_t i = 0; i < m.dims[v]; ++i) {
      Matrix b(1, m.dims[v]);
      b(0, i) = Scalar(1);
      probes.push_back(b);
    }
    for (int r = 0; r < 2 && m.dims[v] > 1; ++r) {
      Matrix b(1, m.dims[v]);
      for (std::size_t i = 0; i < m.dims[v]; ++i) b(0, i) = random_scalar(rng, f);
      probes.push_back(b);
    }
    for (const auto& m0 : probes) {
      if (m0.is_zero()) continue;
      Matrix eq(d, m.dims[v]);
      for (std::size_t i = 0; i < d; ++i) eq.set_block(i, 0, m0 * e.hom.basis[i].mats[v]);
      Matrix ann = solve_right_kernel(eq);
      if (ann.rows() == 0) continue;
      if (sum_subspaces(ann, e.radical).rows() == e.radical.rows()) continue;
      for (int attempt = 0; attempt < 8; ++attempt) {
        ModuleMap psi = element(random_in(ann));
        if (good(psi)) return psi;
      }
    }
  }

  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix c(1, d);
    for (std::size_t i = 0; i < d; ++i) c(0, i) = random_scalar(rng, f);
    if (auto psi = shifted_by_roots(element(c))) return psi;
  }
  return std::nullopt;
}

inline void split_into(const Representation& m, const ModuleMap& inc, const ModuleMap& proj, std::mt19937_64& rng,
                       std::vector<Summand>& out, bool& certified) {
  if (m.is_zero()) return;
  EndomorphismAlgebra e = endomorphism_algebra(m);
  if (e.hom.dim() - e.radical.rows() == 1) {
    out.push_back({m, inc, proj});
    return;
  }
  auto psi = try_split_endomorphism(m, e, rng);
  if (!psi) {
    certified = false;
    out.push_back({m, inc, proj});
    return;
  }
  auto [a, b] = fitting_split(m, *psi);
  split_into(a.module, compose(inc, a.inclusion), compose(a.projection, proj), rng, out, certified);
  split_into(b.module, compose(inc, b.inclusion), compose(b.projection, proj), rng, out, certified);
}

}  // namespace detail

/// Krull-Schmidt decomposition through idempotents of End(m), grouped into
/// isomorphism classes. Over GF(p) the radical of End(m) needs p > dim m.
inline Decomposition decompose(const Representation& m, std::uint64_t seed = default_seed) {
  std::mt19937_64 rng(seed);
  std::vector<Summand> parts;
  bool certified = true;
  detail::split_into(m, ModuleMap::identity(m), ModuleMap::identity(m), rng, parts, certified);
  Decomposition d;
  d.certified = certified;
  for (auto& p : parts) {
    bool placed = false;
    for (auto& c : d.classes) {
      if (is_isomorphic(c.module, p.module, seed)) {
        ++c.multiplicity;
        c.copies.push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed) d.classes.push_back({p.module, 1, {p}});
  }
  return d;
}

/// True if d has exactly the given classes (up to isomorphism) with the given multiplicities.
inline bool decomposition_matches(const Decomposition& d, const std::vector<std::pair<Representation, std::size_t>>& expected,
                                  std::uint64_t seed = default_seed) {
  if (d.classes.size() != expected.size()) return false;
  std::vector<bool> used(expected.size(), false);
  for (const auto& c : d.classes) {
    bool found = false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (used[i] || expected[i].second != c.multiplicity) continue;
      if (is_isomorphic(c.module, expected[i].first, seed)) {
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace tiltkit
