#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiltkit/linalg.hpp"

namespace tiltkit {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::optional<std::size_t> find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i] == name) return i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> find_arrow(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (arrows[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::size_t vertex(const std::string& name) const {
    auto v = find_vertex(name);
    if (!v) throw InputError("unknown vertex '" + name + "'");
    return *v;
  }

  void validate() const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < vertices.size(); ++j) {
        if (vertices[i] == vertices[j]) throw InputError("duplicate vertex '" + vertices[i] + "'");
      }
    }
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (arrows[i].source >= vertices.size() || arrows[i].target >= vertices.size()) {
        throw InputError("arrow '" + arrows[i].name + "' has an undeclared endpoint");
      }
      for (std::size_t j = i + 1; j < arrows.size(); ++j) {
        if (arrows[i].name == arrows[j].name) throw InputError("duplicate arrow '" + arrows[i].name + "'");
      }
    }
  }
};

/// A path is a sequence of arrow indices read left to right: {a, b} is a then b.
using Path = std::vector<std::size_t>;

struct RelationTerm {
  Scalar coeff;
  Path path;
};

struct RelationPoly {
  std::vector<RelationTerm> terms;
};

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// A basis element of a basic algebra: a residue path from `source` to
/// `target`, written as a word in the generators.
struct BasisElement {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> word;
  std::string label;

  bool is_idempotent() const { return word.empty(); }
};

struct Generator {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t basis = 0;  ///< index of the basis element this generator equals
};

/// A finite-dimensional basic algebra with a basis of paths between vertices.
///
/// Path algebras with relations carry their presentation. Derived algebras
/// (opposites, corner rings eAe) use the same structure; for corner rings the
/// generators are all radical basis elements.
class Algebra {
 public:
  FieldSpec field;
  std::vector<std::string> vertices;
  std::vector<Generator> generators;
  std::vector<BasisElement> basis;
  std::vector<std::size_t> idempotents;      ///< basis index of e_v
  std::vector<std::vector<SparseVec>> table;  ///< table[i][j] = b_i * b_j
  std::optional<Quiver> quiver;
  std::vector<RelationPoly> relations;

  std::size_t dim() const { return basis.size(); }
  std::size_t vertex_count() const { return vertices.size(); }

  const SparseVec& mul(std::size_t i, std::size_t j) const { return table[i][j]; }

  /// Basis elements from v to w.
  const std::vector<std::size_t>& paths(std::size_t v, std::size_t w) const { return by_ends_[v][w]; }

  std::size_t vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i] == name) return i;
    }
    throw InputError("unknown vertex '" + name + "'");
  }

  std::optional<std::size_t> find_generator(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].name == name) return i;
    }
    return std::nullopt;
  }

  /// Must be called after the fields above are filled in.
  void finalize() {
    const std::size_t n = vertices.size();
    by_ends_.assign(n, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t i = 0; i < basis.size(); ++i) by_ends_[basis[i].source][basis[i].target].push_back(i);
  }

  /// Expands a product of sparse vectors.
  SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [i, a] : x) {
      for (const auto& [j, b] : y) {
        for (const auto& [k, c] : table[i][j]) acc[k] += a * b * c;
      }
    }
    SparseVec out;
    for (auto& [k, v] : acc) {
      if (!v.is_zero()) out.emplace_back(k, v);
    }
    return out;
  }

  /// Checks associativity on all basis triples and the idempotent laws.
  bool check_structure() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) {
        for (std::size_t k = 0; k < dim(); ++k) {
          SparseVec l = multiply(table[i][j], {{k, Scalar(1)}});
          SparseVec r = multiply({{i, Scalar(1)}}, table[j][k]);
          if (l.size() != r.size()) return false;
          for (std::size_t t = 0; t < l.size(); ++t) {
            if (l[t].first != r[t].first || !(l[t].second == r[t].second)) return false;
          }
        }
      }
    }
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t v = 0; v < vertex_count(); ++v) {
        const auto& left = table[idempotents[v]][i];
        const auto& right = table[i][idempotents[v]];
        bool want_left = basis[i].source == v;
        bool want_right = basis[i].target == v;
        if (want_left != (left.size() == 1 && left[0].first == i && left[0].second.is_one())) return false;
        if (!want_left && !left.empty()) return false;
        if (want_right != (right.size() == 1 && right[0].first == i && right[0].second.is_one())) return false;
        if (!want_right && !right.empty()) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::vector<std::vector<std::size_t>>> by_ends_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

namespace detail {

inline std::string path_label(const Quiver& q, const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '*';
    s += q.arrows[p[i]].name;
  }
  return s;
}

/// All paths of length exactly n, grouped by nothing; each with its source.
inline std::vector<std::pair<std::size_t, Path>> paths_of_length(const Quiver& q, std::size_t n) {
  std::vector<std::pair<std::size_t, Path>> out;
  if (n == 0) return out;
  std::vector<std::pair<std::size_t, Path>> cur;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) cur.push_back({q.arrows[a].source, {a}});
  for (std::size_t len = 1; len < n; ++len) {
    std::vector<std::pair<std::size_t, Path>> next;
    for (const auto& [s, p] : cur) {
      std::size_t t = q.arrows[p.back()].target;
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].source != t) continue;
        Path np = p;
        np.push_back(a);
        next.push_back({s, std::move(np)});
      }
    }
    cur = std::move(next);
  }
  return cur;
}

inline std::size_t path_end(const Quiver& q, std::size_t source, const Path& p) {
  return p.empty() ? source : q.arrows[p.back()].target;
}

}  // namespace detail

/// Builds K Q / I. Paths are eliminated length by length: at truncation
/// length N the span W of all p*r*q (cut at length N) is reduced, and the
/// loop stops once every path of length N lies in W. Columns are ordered
/// longest-first so residue paths are the shortest representatives.
inline AlgebraPtr build_algebra(const Quiver& q, const std::vector<RelationPoly>& rels, const FieldSpec& f,
                                std::size_t max_path_len = 64) {
  q.validate();
  if (q.vertices.empty()) throw InputError("quiver has no vertices");

  struct Rel {
    std::size_t source, target, min_len;
    std::vector<RelationTerm> terms;
  };
  std::vector<Rel> rs;
  for (const auto& r : rels) {
    std::map<Path, Scalar> merged;
    for (const auto& t : r.terms) {
      if (t.path.size() < 2) throw InputError("relation term of length < 2 is not admissible");
      for (std::size_t i = 0; i + 1 < t.path.size(); ++i) {
        if (t.path[i] >= q.arrows.size() || q.arrows[t.path[i]].target != q.arrows[t.path[i + 1]].source) {
          throw InputError("relation term '" + detail::path_label(q, t.path) + "' is not a composable path");
        }
      }
      merged[t.path] += t.coeff.in_field(f);
    }
    Rel rel{0, 0, 0, {}};
    bool first = true;
    for (auto& [p, c] : merged) {
      if (c.is_zero()) continue;
      std::size_t s = q.arrows[p.front()].source;
      std::size_t t = q.arrows[p.back()].target;
      if (first) {
        rel.source = s;
        rel.target = t;
        rel.min_len = p.size();
        first = false;
      } else if (s != rel.source || t != rel.target) {
        throw InputError("relation terms are not parallel");
      }
      rel.min_len = std::min(rel.min_len, p.size());
      rel.terms.push_back({c, p});
    }
    if (!first) rs.push_back(std::move(rel));
  }

  // Per-vertex incoming / outgoing path lists by length, grown on demand.
  std::vector<std::vector<std::pair<std::size_t, Path>>> by_len{{}};
  for (std::size_t n = 1; n <= max_path_len; ++n) {
    by_len.push_back(detail::paths_of_length(q, n));

    // Column index: all paths of length 1..N, longest first. Length-0 paths
    // never occur in relations.
    std::map<Path, std::size_t> col;
    std::vector<Path> cols;
    for (std::size_t len = n; len >= 1; --len) {
      for (const auto& sp : by_len[len]) {
        col[sp.second] = cols.size();
        cols.push_back(sp.second);
      }
    }

    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
    for (const auto& r : rs) {
      if (r.min_len > n) continue;
      for (std::size_t lp = 0; lp + r.min_len <= n; ++lp) {
        std::vector<Path> prefixes;
        if (lp == 0) {
          prefixes.push_back({});
        } else {
          for (const auto& [s, p] : by_len[lp]) {
            if (q.arrows[p.back()].target == r.source) prefixes.push_back(p);
          }
        }
        for (std::size_t lq = 0; lp + lq + r.min_len <= n; ++lq) {
          std::vector<Path> suffixes;
          if (lq == 0) {
            suffixes.push_back({});
          } else {
            for (const auto& [s, p] : by_len[lq]) {
              if (s == r.target) suffixes.push_back(p);
            }
          }
          for (const auto& pre : prefixes) {
            for (const auto& suf : suffixes) {
              std::vector<std::pair<std::size_t, Scalar>> row;
              for (const auto& t : r.terms) {
                if (pre.size() + t.path.size() + suf.size() > n) continue;
                Path full = pre;
                full.insert(full.end(), t.path.begin(), t.path.end());
                full.insert(full.end(), suf.begin(), suf.end());
                row.push_back({col.at(full), t.coeff});
              }
              if (!row.empty()) rows.push_back(std::move(row));
            }
          }
        }
      }
    }

    Matrix w(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& [c, v] : rows[i]) w(i, c) += v;
    }
    RowReduction rr = row_reduce(w);

    std::vector<int> pivot_row(cols.size(), -1);
    for (std::size_t i = 0; i < rr.rank(); ++i) pivot_row[rr.pivots[i]] = static_cast<int>(i);

    // Does every path of length n vanish modulo W?
    bool layer_dies = true;
    for (std::size_t c = 0; c < by_len[n].size() && layer_dies; ++c) {
      if (pivot_row[c] < 0) {
        layer_dies = false;
        break;
      }
      const auto r = static_cast<std::size_t>(pivot_row[c]);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j != c && !rr.reduced(r, j).is_zero()) {
          layer_dies = false;
          break;
        }
      }
    }
    if (!layer_dies) continue;

    auto alg = std::make_shared<Algebra>();
    alg->field = f;
    alg->vertices = q.vertices;
    alg->quiver = q;
    alg->relations = rels;
    for (auto& r : alg->relations) {
      for (auto& t : r.terms) t.coeff = t.coeff.in_field(f);
    }

    std::map<Path, std::size_t> basis_of_path;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      alg->idempotents.push_back(alg->basis.size());
      alg->basis.push_back({v, v, {}, "e" + q.vertices[v]});
    }
    for (std::size_t len = 1; len < n; ++len) {
      for (const auto& [s, p] : by_len[len]) {
        if (pivot_row[col.at(p)] >= 0) continue;
        basis_of_path[p] = alg->basis.size();
        alg->basis.push_back({s, detail::path_end(q, s, p), p, detail::path_label(q, p)});
      }
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const auto it = basis_of_path.find(Path{a});
      if (it == basis_of_path.end()) throw InternalError("arrow eliminated by admissible relations");
      alg->generators.push_back({q.arrows[a].name, q.arrows[a].source, q.arrows[a].target, it->second});
    }

    // Normal form of a path of length 1..n.
    auto normal_form = [&](const Path& p) -> SparseVec {
      if (p.size() > n) return {};
      const std::size_t c = col.at(p);
      if (pivot_row[c] < 0) return {{basis_of_path.at(p), Scalar(1)}};
      const auto r = static_cast<std::size_t>(pivot_row[c]);
      SparseVec out;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j == c || rr.reduced(r, j).is_zero()) continue;
        out.emplace_back(basis_of_path.at(cols[j]), -rr.reduced(r, j));
      }
      std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      return out;
    };

    const std::size_t d = alg->basis.size();
    alg->table.assign(d, std::vector<SparseVec>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const auto& bi = alg->basis[i];
        const auto& bj = alg->basis[j];
        if (bi.target != bj.source) continue;
        if (bi.is_idempotent()) {
          alg->table[i][j] = {{j, Scalar(1)}};
        } else if (bj.is_idempotent()) {
          alg->table[i][j] = {{i, Scalar(1)}};
        } else {
          Path p = bi.word;
          p.insert(p.end(), bj.word.begin(), bj.word.end());
          alg->table[i][j] = normal_form(p);
        }
      }
    }
    for (auto& row : alg->table) {
      for (auto& e : row) {
        for (auto& [k, v] : e) v = v.in_field(f);
      }
    }
    alg->finalize();
    return alg;
  }
  throw BoundExceeded("algebra is not finite-dimensional within path length " + std::to_string(max_path_len));
}

/// The opposite algebra: same basis, arrows reversed, words and relation
/// paths reversed, products transposed.
inline AlgebraPtr opposite(const Algebra& a) {
  auto op = std::make_shared<Algebra>();
  op->field = a.field;
  op->vertices = a.vertices;
  op->idempotents = a.idempotents;
  for (const auto& g : a.generators) op->generators.push_back({g.name, g.target, g.source, g.basis});
  for (const auto& b : a.basis) {
    BasisElement e{b.target, b.source, b.word, b.label};
    std::reverse(e.word.begin(), e.word.end());
    if (!e.word.empty()) {
      e.label.clear();
      for (std::size_t i = 0; i < e.word.size(); ++i) {
        if (i) e.label += '*';
        e.label += a.generators[e.word[i]].name;
      }
    }
    op->basis.push_back(std::move(e));
  }
  const std::size_t d = a.dim();
  op->table.assign(d, std::vector<SparseVec>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) op->table[i][j] = a.table[j][i];
  }
  if (a.quiver) {
    Quiver q = *a.quiver;
    for (auto& arr : q.arrows) std::swap(arr.source, arr.target);
    op->quiver = q;
    op->relations = a.relations;
    for (auto& r : op->relations) {
      for (auto& t : r.terms) std::reverse(t.path.begin(), t.path.end());
    }
  }
  op->finalize();
  return op;
}

/// The corner ring eAe for e the sum of the idempotents of `verts`, together
/// with the index in A of each basis element of eAe.
struct CornerAlgebra {
  AlgebraPtr algebra;
  std::vector<std::size_t> vertices;        ///< vertex of A for each vertex of eAe
  std::vector<std::size_t> basis_in_parent;  ///< A-index of each eAe basis element
};

inline CornerAlgebra corner_algebra(const Algebra& a, std::vector<std::size_t> verts) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.empty()) throw InputError("corner ring needs at least one vertex");
  std::vector<int> local(a.vertex_count(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] >= a.vertex_count()) throw InputError("corner ring vertex out of range");
    local[verts[i]] = static_cast<int>(i);
  }
  CornerAlgebra out;
  out.vertices = verts;
  auto c = std::make_shared<Algebra>();
  c->field = a.field;
  for (auto v : verts) c->vertices.push_back(a.vertices[v]);
  std::vector<int> to_local(a.dim(), -1);
  for (auto v : verts) {
    to_local[a.idempotents[v]] = static_cast<int>(c->basis.size());
    c->idempotents.push_back(c->basis.size());
    c->basis.push_back({static_cast<std::size_t>(local[v]), static_cast<std::size_t>(local[v]), {}, a.basis[a.idempotents[v]].label});
    out.basis_in_parent.push_back(a.idempotents[v]);
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const auto& b = a.basis[i];
    if (b.is_idempotent() || local[b.source] < 0 || local[b.target] < 0) continue;
    const std::size_t gi = c->generators.size();
    const auto s = static_cast<std::size_t>(local[b.source]);
    const auto t = static_cast<std::size_t>(local[b.target]);
    to_local[i] = static_cast<int>(c->basis.size());
    c->generators.push_back({b.label, s, t, c->basis.size()});
    c->basis.push_back({s, t, {gi}, b.label});
    out.basis_in_parent.push_back(i);
  }
  const std::size_t d = c->basis.size();
  c->table.assign(d, std::vector<SparseVec>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& [k, v] : a.table[out.basis_in_parent[i]][out.basis_in_parent[j]]) {
        if (to_local[k] < 0) throw InternalError("corner ring not closed under products");
        c->table[i][j].emplace_back(static_cast<std::size_t>(to_local[k]), v);
      }
      std::sort(c->table[i][j].begin(), c->table[i][j].end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    }
  }
  c->finalize();
  out.algebra = c;
  return out;
}

}  // namespace tiltkit
