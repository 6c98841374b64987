#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "tiltkit/io.hpp"
#include "tiltkit/recollement.hpp"

namespace tiltkit::test {

inline std::string fixture(const std::string& name) { return std::string(TILTKIT_FIXTURE_DIR) + "/" + name; }

inline AlgebraPtr load(const std::string& name, const FieldSpec& f = FieldSpec::rationals()) {
  return load_algebra(fixture(name + ".alg"), f);
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"a2", "kron2", "cycle2", "triple3"};
  return names;
}

struct Named {
  std::string name;
  Representation module;
};

/// Simples, indecomposable projectives and indecomposable injectives.
inline std::vector<Named> standard_modules(const AlgebraPtr& a) {
  std::vector<Named> out;
  for (std::size_t v = 0; v < a->vertex_count(); ++v) {
    const std::string& n = a->vertices[v];
    out.push_back({"S" + n, simple(a, v)});
    out.push_back({"P" + n, projective(a, v)});
    out.push_back({"I" + n, injective(a, v)});
  }
  return out;
}

inline Matrix random_matrix(std::mt19937_64& rng, const FieldSpec& f, std::size_t r, std::size_t c, int spread = 3) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::from_int(d(rng), f);
  }
  return m;
}

inline Matrix row_vector(const std::vector<Scalar>& xs) {
  Matrix m(1, xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) m(0, i) = xs[i];
  return m;
}

/// Contractible complex P --id--> P in degrees n, n + 1.
inline PerfectComplex contractible(const ProjectiveModule& p, int n) {
  PerfectComplex x(p.rep.algebra);
  x.lo = n;
  x.terms = {p, p};
  x.diffs = {ModuleMap::identity(p.rep)};
  return x;
}

/// Euler form <dim M, dim N> = dim M . C^{-1} . dim N, C the Cartan matrix with rows dim P_v.
inline Scalar euler_form(const AlgebraPtr& a, const Representation& m, const Representation& n) {
  const std::size_t k = a->vertex_count();
  Matrix c(k, k);
  for (std::size_t v = 0; v < k; ++v) {
    Representation p = projective(a, v);
    for (std::size_t w = 0; w < k; ++w) c(v, w) = Scalar::from_int(static_cast<long>(p.dims[w]), a->field);
  }
  auto ci = inverse(c);
  if (!ci) throw InternalError("singular Cartan matrix");
  Matrix x(1, k);
  Matrix y(k, 1);
  for (std::size_t v = 0; v < k; ++v) {
    x(0, v) = Scalar::from_int(static_cast<long>(m.dims[v]), a->field);
    y(v, 0) = Scalar::from_int(static_cast<long>(n.dims[v]), a->field);
  }
  return (x * *ci * y)(0, 0);
}


/// Rank by plain Gaussian elimination on a copy.
inline std::size_t naive_rank(Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = m(r, c).inverse();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c) * inv;
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// dim Hom(m, n) from the linear equations m_g f_t = f_s n_g over all arrows.
inline std::size_t hom_dim_bruteforce(const Representation& m, const Representation& n) {
  const Algebra& a = *m.algebra;
  std::vector<std::size_t> off{0};
  for (std::size_t v = 0; v < a.vertex_count(); ++v) off.push_back(off.back() + m.dims[v] * n.dims[v]);
  std::vector<Matrix> rows;
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    const std::size_t s = a.generators[g].source;
    const std::size_t t = a.generators[g].target;
    for (std::size_t i = 0; i < m.dims[s]; ++i) {
      for (std::size_t j = 0; j < n.dims[t]; ++j) {
        Matrix eq(1, off.back());
        for (std::size_t k = 0; k < m.dims[t]; ++k) eq(0, off[t] + k * n.dims[t] + j) += m.gens[g](i, k);
        for (std::size_t k = 0; k < n.dims[s]; ++k) eq(0, off[s] + i * n.dims[s] + k) -= n.gens[g](k, j);
        rows.push_back(eq);
      }
    }
  }
  Matrix all(rows.size(), off.back());
  for (std::size_t r = 0; r < rows.size(); ++r) all.set_block(r, 0, rows[r]);
  return off.back() - naive_rank(all);
}

/// dim X (x)_A Y for X a right module and Y a left module (a representation of the opposite algebra),
/// as the quotient of the sum of X_v (x) Y_v by x.a (x) y - x (x) a.y.
inline std::size_t tensor_dim_bruteforce(const Representation& x, const Representation& y) {
  const Algebra& a = *x.algebra;
  std::vector<std::size_t> off{0};
  for (std::size_t v = 0; v < a.vertex_count(); ++v) off.push_back(off.back() + x.dims[v] * y.dims[v]);
  std::vector<Matrix> rels;
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    const std::size_t s = a.generators[g].source;
    const std::size_t t = a.generators[g].target;
    for (std::size_t i = 0; i < x.dims[s]; ++i) {
      for (std::size_t j = 0; j < y.dims[t]; ++j) {
        Matrix r(1, off.back());
        for (std::size_t p = 0; p < x.dims[t]; ++p) r(0, off[t] + p * y.dims[t] + j) += x.gens[g](i, p);
        for (std::size_t q = 0; q < y.dims[s]; ++q) r(0, off[s] + i * y.dims[s] + q) -= y.gens[g](j, q);
        rels.push_back(r);
      }
    }
  }
  Matrix all(rels.size(), off.back());
  for (std::size_t r = 0; r < rels.size(); ++r) all.set_block(r, 0, rels[r]);
  return off.back() - naive_rank(all);
}

/// dim Tor_k(X, Y) from a projective resolution of the second argument over the opposite algebra.
inline std::size_t tor_dim_via_second(std::size_t k, const Representation& x, const Representation& y) {
  Resolution res = partial_resolution(y, k + 1);
  if (!res.has_term(k)) return 0;
  auto chain_dim = [&](std::size_t j) {
    std::size_t d = 0;
    for (std::size_t w : res.terms[j].tops) d += x.dims[w];
    return d;
  };
  auto boundary = [&](std::size_t j) {
    const ProjectiveModule& qj = res.terms[j];
    const ProjectiveModule& qi = res.terms[j - 1];
    const ModuleMap& d = res.d(j);
    std::vector<std::size_t> off{0};
    for (std::size_t w : qi.tops) off.push_back(off.back() + x.dims[w]);
    Matrix out(chain_dim(j), off.back());
    std::size_t row = 0;
    for (std::size_t g = 0; g < qj.tops.size(); ++g) {
      const std::size_t w = qj.tops[g];
      for (std::size_t c = 0; c < qi.index[w].size(); ++c) {
        const Scalar& coeff = d.mats[w](qj.generator_row(g), c);
        if (coeff.is_zero()) continue;
        auto [h, b] = qi.index[w][c];
        out.add_block(row, off[h], x.act(b), coeff);
      }
      row += x.dims[w];
    }
    return out;
  };
  std::size_t ker = chain_dim(k);
  if (k >= 1) ker -= naive_rank(boundary(k));
  std::size_t im = res.has_term(k + 1) ? naive_rank(boundary(k + 1)) : 0;
  return ker - im;
}

/// Ae (x)_{eAe} eA and Tor_i^{eAe}(Ae, eA) computed from structure constants only:
/// eA is resolved by free eAe-modules with greedily chosen generators.
struct CornerTor {
  std::size_t tensor_dim = 0;
  std::size_t ideal_dim = 0;
  std::vector<std::size_t> tor_dims;  ///< i = 1..upto
};

inline CornerTor corner_tor_bruteforce(const Algebra& a, const std::vector<std::size_t>& verts, std::size_t upto) {
  const std::size_t d = a.dim();
  std::vector<bool> in_e(a.vertex_count(), false);
  for (std::size_t v : verts) in_e[v] = true;
  std::vector<std::size_t> ae;
  std::vector<std::size_t> ea;
  std::vector<std::size_t> b;
  std::vector<int> b_pos(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    const auto& e = a.basis[i];
    if (in_e[e.target]) ae.push_back(i);
    if (in_e[e.source]) ea.push_back(i);
    if (in_e[e.source] && in_e[e.target]) {
      b_pos[i] = static_cast<int>(b.size());
      b.push_back(i);
    }
  }
  const std::size_t nb = b.size();
  auto mul = [&](const Matrix& x, const Matrix& y) {
    Matrix z(1, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (x(0, i).is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (y(0, j).is_zero()) continue;
        for (const auto& [k, c] : a.mul(i, j)) z(0, k) += x(0, i) * y(0, j) * c;
      }
    }
    return z;
  };
  auto unit = [&](std::size_t i) {
    Matrix x(1, d);
    x(0, i) = Scalar::one(a.field);
    return x;
  };
  auto to_b = [&](const Matrix& z) {
    Matrix out(1, nb);
    for (std::size_t i = 0; i < d; ++i) {
      if (z(0, i).is_zero()) continue;
      if (b_pos[i] < 0) throw InternalError("product left the corner ring");
      out(0, static_cast<std::size_t>(b_pos[i])) = z(0, i);
    }
    return out;
  };
  auto from_b = [&](const Matrix& c, std::size_t slot) {
    Matrix z(1, d);
    for (std::size_t i = 0; i < nb; ++i) z(0, b[i]) = c(0, slot * nb + i);
    return z;
  };

  CornerTor out;
  Matrix prods(0, d);
  for (std::size_t i : ae) {
    for (std::size_t j : ea) prods = Matrix::vstack(prods, mul(unit(i), unit(j)));
  }
  out.ideal_dim = naive_rank(prods);

  // Generators of the current module (rows), their B-multiples (rows of phi), and the kernel.
  struct Step {
    std::vector<Matrix> gens;  ///< elements of B^{n_prev} (or of A for the first step)
  };
  std::vector<Step> steps;
  auto b_multiples = [&](const Matrix& g, bool in_a) {
    std::vector<Matrix> out_rows;
    for (std::size_t bi : b) {
      if (in_a) {
        out_rows.push_back(mul(unit(bi), g));
      } else {
        const std::size_t n = g.cols() / nb;
        Matrix r(1, g.cols());
        for (std::size_t s = 0; s < n; ++s) r.set_block(0, s * nb, to_b(mul(unit(bi), from_b(g, s))));
        out_rows.push_back(r);
      }
    }
    return out_rows;
  };
  auto choose = [&](const std::vector<Matrix>& cands, bool in_a) {
    std::vector<Matrix> gens;
    const std::size_t w = cands.empty() ? 0 : cands.front().cols();
    Matrix span(0, w);
    std::size_t span_rank = 0;
    for (const auto& c : cands) {
      if (naive_rank(Matrix::vstack(span, c)) == span_rank) continue;
      gens.push_back(c);
      for (const auto& m : b_multiples(c, in_a)) span = Matrix::vstack(span, m);
      span_rank = naive_rank(span);
    }
    return gens;
  };

  std::vector<Matrix> cands;
  for (std::size_t i : ea) cands.push_back(unit(i));
  bool in_a = true;
  for (std::size_t k = 0; k <= upto + 1; ++k) {
    Step st;
    st.gens = choose(cands, in_a);
    steps.push_back(st);
    if (st.gens.empty()) break;
    const std::size_t width = st.gens.front().cols();
    Matrix phi(st.gens.size() * nb, width);
    for (std::size_t j = 0; j < st.gens.size(); ++j) {
      auto ms = b_multiples(st.gens[j], in_a);
      for (std::size_t i = 0; i < nb; ++i) phi.set_block(j * nb + i, 0, ms[i]);
    }
    Matrix ker = solve_right_kernel(phi);
    cands.clear();
    for (std::size_t r = 0; r < ker.rows(); ++r) cands.push_back(ker.row(r));
    in_a = false;
  }

  // Ae (x) F_k = Ae^{n_k}; d_k sends x in slot j to sum_i x . (g_j)_i in slot i.
  const std::size_t nae = ae.size();
  auto n_at = [&](std::size_t k) { return k < steps.size() ? steps[k].gens.size() : 0; };
  auto boundary = [&](std::size_t k) {
    Matrix m(n_at(k) * nae, n_at(k - 1) * nae);
    if (k >= steps.size()) return m;
    for (std::size_t j = 0; j < n_at(k); ++j) {
      const Matrix& g = steps[k].gens[j];
      for (std::size_t xi = 0; xi < nae; ++xi) {
        for (std::size_t i = 0; i < n_at(k - 1); ++i) {
          Matrix y = mul(unit(ae[xi]), from_b(g, i));
          for (std::size_t t = 0; t < nae; ++t) m(j * nae + xi, i * nae + t) = y(0, ae[t]);
        }
      }
    }
    return m;
  };
  out.tensor_dim = n_at(0) * nae - naive_rank(boundary(1));
  for (std::size_t k = 1; k <= upto; ++k) {
    const std::size_t ker = n_at(k) * nae - naive_rank(boundary(k));
    out.tor_dims.push_back(ker - naive_rank(boundary(k + 1)));
  }
  return out;
}

/// One cone of a random degree-one map between the members of an exceptional pair.
struct ConeTrial {
  std::string algebra;
  std::string t1;
  std::string t2;
  std::size_t ext_dim = 0;
  bool exceptional = false;
  bool surjective = false;
  bool agree = false;
};

/// Seeded random (t1, t2, alpha) over small fixtures, t_i drawn from resolutions of
/// standard modules, their squares and their shifts by one, restricted to valid pairs.
inline std::vector<ConeTrial> cone_trials(const FieldSpec& f, std::size_t wanted, std::uint64_t seed) {
  struct Candidate {
    std::string name;
    PerfectComplex complex;
  };
  struct Pair {
    std::string algebra;
    std::size_t i;
    std::size_t j;
    ExceptionalPair data;
  };
  std::vector<std::vector<Candidate>> cands;
  std::vector<Pair> pairs;
  const std::vector<std::string> names{"a2", "kron2", "cycle2"};
  for (std::size_t ai = 0; ai < names.size(); ++ai) {
    AlgebraPtr a = load(names[ai], f);
    std::vector<Candidate> cs;
    for (const auto& m : standard_modules(a)) {
      PerfectComplex x = resolve_to_complex(m.module);
      if (!is_exceptional(x)) continue;
      for (int s = 0; s <= 1; ++s) {
        const std::string sh = s ? "[1]" : "";
        cs.push_back({m.name + sh, shift(x, s)});
        cs.push_back({m.name + "^2" + sh, shift(complex_power(x, 2), s)});
      }
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < cs.size(); ++j) {
        ExceptionalPair p = check_A1_A2(cs[i].complex, cs[j].complex);
        if (p.valid() && p.ext.dim() > 0) pairs.push_back({names[ai], i, j, p});
      }
    }
    cands.push_back(std::move(cs));
  }
  std::vector<ConeTrial> out;
  if (pairs.empty()) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::uniform_int_distribution<int> coeff(-1, 2);
  std::uniform_int_distribution<int> zero_one(0, 5);
  while (out.size() < wanted) {
    const Pair& p = pairs[pick(rng)];
    const std::size_t ai = static_cast<std::size_t>(std::find(names.begin(), names.end(), p.algebra) - names.begin());
    Matrix c(1, p.data.ext.dim());
    if (zero_one(rng) != 0) {
      for (std::size_t k = 0; k < c.cols(); ++k) c(0, k) = Scalar::from_int(coeff(rng), f);
    }
    ConeTrial t;
    t.algebra = p.algebra;
    t.t1 = cands[ai][p.i].name;
    t.t2 = cands[ai][p.j].name;
    t.ext_dim = p.data.ext.dim();
    try {
      ConeExceptionality ce = cone_exceptionality(p.data, p.data.ext.map(c));
      t.exceptional = ce.exceptional;
      t.surjective = ce.criterion_surjective;
      t.agree = ce.exceptional == ce.criterion_surjective;
    } catch (const InternalError&) {
      t.agree = false;
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace tiltkit::test
