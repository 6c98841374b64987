#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tiltkit/matrix.hpp"

namespace tiltkit {

/// Result of Gauss-Jordan elimination on the rows of a matrix.
struct RowReduction {
  Matrix reduced;                    ///< reduced row echelon form
  Matrix transform;                  ///< invertible E with E * input == reduced (empty if not tracked)
  std::vector<std::size_t> pivots;   ///< pivot column of row i, for i < rank

  std::size_t rank() const { return pivots.size(); }
};

inline RowReduction row_reduce(const Matrix& m, bool track_transform = false) {
  RowReduction out;
  out.reduced = m;
  Matrix& a = out.reduced;
  const std::size_t nr = a.rows();
  const std::size_t nc = a.cols();
  if (track_transform) out.transform = Matrix::identity(nr);
  Matrix& e = out.transform;

  auto swap_rows = [](Matrix& x, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(i, c), x(j, c));
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = r;
    while (piv < nr && a(piv, c).is_zero()) ++piv;
    if (piv == nr) continue;
    swap_rows(a, r, piv);
    if (track_transform) swap_rows(e, r, piv);

    const Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < nc; ++j) {
      if (!a(r, j).is_zero()) a(r, j) *= inv;
    }
    if (track_transform) {
      for (std::size_t j = 0; j < nr; ++j) {
        if (!e(r, j).is_zero()) e(r, j) *= inv;
      }
    }

    std::vector<std::size_t> support;
    for (std::size_t j = c; j < nc; ++j) {
      if (!a(r, j).is_zero()) support.push_back(j);
    }
    std::vector<std::size_t> esupport;
    if (track_transform) {
      for (std::size_t j = 0; j < nr; ++j) {
        if (!e(r, j).is_zero()) esupport.push_back(j);
      }
    }
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j : support) a(i, j) -= f * a(r, j);
      if (track_transform) {
        for (std::size_t j : esupport) e(i, j) -= f * e(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

/// Basis (as rows) of the left null space {v : v * m == 0}.
inline Matrix solve_right_kernel(const Matrix& m) {
  RowReduction rr = row_reduce(m, true);
  std::vector<std::size_t> idx;
  for (std::size_t i = rr.rank(); i < m.rows(); ++i) idx.push_back(i);
  return rr.transform.select_rows(idx);
}

/// Linearly independent rows spanning the row space of `m`.
inline Matrix row_basis(const Matrix& m) {
  RowReduction rr = row_reduce(m);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < rr.rank(); ++i) idx.push_back(i);
  return rr.reduced.select_rows(idx);
}

struct LinearSolution {
  std::optional<Matrix> particular;  ///< x with x * a == b, if one exists
  Matrix kernel;                     ///< rows spanning {y : y * a == 0}
};

/// Solves x * a == b for x (rows(x) == rows(b), cols(x) == rows(a)).
inline LinearSolution solve_linear_system(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw InputError("solve_linear_system: cols(a) != cols(b): " + a.shape() + " vs " + b.shape());
  }
  RowReduction rr = row_reduce(a, true);
  LinearSolution sol;
  std::vector<std::size_t> kidx;
  for (std::size_t i = rr.rank(); i < a.rows(); ++i) kidx.push_back(i);
  sol.kernel = rr.transform.select_rows(kidx);

  Matrix x(b.rows(), a.rows());
  for (std::size_t row = 0; row < b.rows(); ++row) {
    std::vector<Scalar> rem(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) rem[j] = b(row, j);
    for (std::size_t i = 0; i < rr.rank(); ++i) {
      const Scalar c = rem[rr.pivots[i]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!rr.reduced(i, j).is_zero()) rem[j] -= c * rr.reduced(i, j);
      }
      for (std::size_t j = 0; j < a.rows(); ++j) {
        if (!rr.transform(i, j).is_zero()) x(row, j) += c * rr.transform(i, j);
      }
    }
    for (const auto& v : rem) {
      if (!v.is_zero()) return sol;
    }
  }
  sol.particular = std::move(x);
  return sol;
}

/// Coordinates c with c * basis == v. `basis` rows must be independent.
inline std::optional<Matrix> coordinates(const Matrix& basis, const Matrix& v) {
  return solve_linear_system(basis, v).particular;
}

inline bool in_row_space(const Matrix& rows, const Matrix& v) {
  if (rows.rows() == 0) return v.is_zero();
  return solve_linear_system(rows, v).particular.has_value();
}

/// A complement of a subspace S of K^n, with the projection K^n -> K^n / S.
struct QuotientBasis {
  Matrix section;     ///< q x n, rows map to a basis of K^n / S
  Matrix projection;  ///< n x q, v * projection = coordinates of [v]
};

inline QuotientBasis quotient_basis(std::size_t n, const Matrix& sub) {
  if (sub.rows() > 0 && sub.cols() != n) throw InputError("quotient_basis: subspace not in K^n");
  RowReduction rr = sub.rows() ? row_reduce(sub) : RowReduction{Matrix(0, n), {}, {}};
  std::vector<int> pivot_row(n, -1);
  for (std::size_t i = 0; i < rr.rank(); ++i) pivot_row[rr.pivots[i]] = static_cast<int>(i);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row[j] < 0) free_cols.push_back(j);
  }
  QuotientBasis q;
  q.section = Matrix(free_cols.size(), n);
  q.projection = Matrix(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    q.section(k, free_cols[k]) = Scalar(1);
    q.projection(free_cols[k], k) = Scalar(1);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row[j] < 0) continue;
    const auto r = static_cast<std::size_t>(pivot_row[j]);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      const Scalar& v = rr.reduced(r, free_cols[k]);
      if (!v.is_zero()) q.projection(j, k) = -v;
    }
  }
  return q;
}

inline Matrix sum_subspaces(const Matrix& u, const Matrix& w) {
  if (u.rows() == 0) return row_basis(w);
  if (w.rows() == 0) return row_basis(u);
  return row_basis(Matrix::vstack(u, w));
}

inline Matrix intersect_subspaces(const Matrix& u, const Matrix& w) {
  const std::size_t n = u.rows() ? u.cols() : w.cols();
  if (u.rows() == 0 || w.rows() == 0) return Matrix(0, n);
  Matrix ub = row_basis(u);
  Matrix wb = row_basis(w);
  Matrix k = solve_right_kernel(Matrix::vstack(ub, wb));
  if (k.rows() == 0) return Matrix(0, n);
  Matrix coeffs = k.block(0, 0, k.rows(), ub.rows());
  return row_basis(coeffs * ub);
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  RowReduction rr = row_reduce(m, true);
  if (rr.rank() != m.rows()) return std::nullopt;
  return rr.transform;
}

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

/// Z / B for subspaces B <= Z <= K^n, with representatives of a basis.
struct Subquotient {
  std::size_t ambient = 0;
  Matrix cycles;      ///< basis rows of Z
  Matrix basis;       ///< representatives in K^n of a basis of Z / B
  Matrix projection;  ///< Z-coordinates -> Z / B coordinates

  std::size_t dim() const { return basis.rows(); }

  /// Coordinates of the class of v, or nullopt when v is not in Z.
  std::optional<Matrix> class_of(const Matrix& v) const {
    if (cycles.rows() == 0) {
      if (!v.is_zero()) return std::nullopt;
      return Matrix(1, 0);
    }
    auto z = coordinates(cycles, v);
    if (!z) return std::nullopt;
    return *z * projection;
  }
};

/// `cycles` and `boundaries` are rows in K^n; the boundaries must lie in the span of the cycles.
inline Subquotient subquotient(std::size_t n, const Matrix& cycles, const Matrix& boundaries) {
  Subquotient s;
  s.ambient = n;
  s.cycles = cycles.rows() ? row_basis(cycles) : Matrix(0, n);
  if (s.cycles.rows() == 0) {
    s.basis = Matrix(0, n);
    s.projection = Matrix(0, 0);
    return s;
  }
  Matrix b_in_z(0, s.cycles.rows());
  for (std::size_t r = 0; r < boundaries.rows(); ++r) {
    auto c = coordinates(s.cycles, boundaries.row(r));
    if (!c) throw InternalError("boundary outside the cycle space");
    b_in_z = Matrix::vstack(b_in_z, *c);
  }
  QuotientBasis q = quotient_basis(s.cycles.rows(), b_in_z);
  s.basis = q.section * s.cycles;
  s.projection = q.projection;
  return s;
}

}  // namespace tiltkit
