#pragma once

#include <string>
#include <vector>

#include "tiltkit/linalg.hpp"

namespace tiltkit {

/// Radical of the algebra spanned by `mats` (closed under products, acting
/// faithfully on K^n): the kernel of the trace form (x, y) -> tr(xy).
/// Exact in characteristic 0 and in characteristic p > n; other primes raise.
/// Rows of the result are coefficient vectors in the given basis.
inline Matrix trace_radical(const FieldSpec& f, const std::vector<Matrix>& mats) {
  const std::size_t d = mats.size();
  if (d == 0) return Matrix(0, 0);
  const std::size_t n = mats[0].rows();
  if (!f.is_rational() && f.characteristic <= n) {
    throw PreconditionError("trace-form radical needs characteristic 0 or p > " + std::to_string(n) + " over " +
                            f.name());
  }
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Scalar t(0);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!mats[i](r, k).is_zero() && !mats[j](k, r).is_zero()) t += mats[i](r, k) * mats[j](k, r);
        }
      }
      g(i, j) = t;
      g(j, i) = t;
    }
  }
  return solve_right_kernel(g);
}

/// A finite-dimensional algebra by structure constants:
/// b_i * b_j = sum_k table[i][j](0, k) b_k. Elements are 1 x dim rows.
struct RingPresentation {
  FieldSpec field;
  std::vector<std::string> labels;
  std::vector<std::vector<Matrix>> table;
  Matrix unit;

  std::size_t dim() const { return labels.size(); }

  Matrix basis_element(std::size_t i) const {
    Matrix e(1, dim());
    e(0, i) = Scalar(1);
    return e;
  }

  Matrix mul(const Matrix& x, const Matrix& y) const {
    Matrix out(1, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x(0, i).is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y(0, j).is_zero()) continue;
        out.add_block(0, 0, table[i][j], x(0, i) * y(0, j));
      }
    }
    return out;
  }

  /// Matrix of y |-> y * x.
  Matrix right_mult(const Matrix& x) const {
    Matrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) m.set_block(i, 0, mul(basis_element(i), x));
    return m;
  }

  /// Matrix of y |-> x * y.
  Matrix left_mult(const Matrix& x) const {
    Matrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) m.set_block(i, 0, mul(x, basis_element(i)));
    return m;
  }

  bool is_associative() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) {
        for (std::size_t k = 0; k < dim(); ++k) {
          if (!(mul(table[i][j], basis_element(k)) == mul(basis_element(i), table[j][k]))) return false;
        }
      }
    }
    return true;
  }

  bool has_unit() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      Matrix e = basis_element(i);
      if (!(mul(unit, e) == e) || !(mul(e, unit) == e)) return false;
    }
    return true;
  }

  /// Jacobson radical by the trace form of the right regular representation.
  Matrix radical() const {
    std::vector<Matrix> reg;
    for (std::size_t i = 0; i < dim(); ++i) reg.push_back(right_mult(basis_element(i)));
    Matrix j = trace_radical(field, reg);
    return j.rows() ? row_basis(j) : Matrix(0, dim());
  }

  /// Rows spanning the center.
  Matrix center() const {
    // x central iff x*b_j - b_j*x = 0 for all j; linear in x.
    Matrix eq(dim(), dim() * dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) {
        Matrix c = table[i][j] - table[j][i];
        eq.set_block(i, j * dim(), c);
      }
    }
    return solve_right_kernel(eq);
  }

  /// Smallest two-sided ideal containing the given rows.
  Matrix two_sided_ideal(const Matrix& gens) const {
    Matrix span = gens.rows() ? row_basis(gens) : Matrix(0, dim());
    while (true) {
      Matrix grown = span;
      for (std::size_t r = 0; r < span.rows(); ++r) {
        Matrix x = span.row(r);
        for (std::size_t i = 0; i < dim(); ++i) {
          Matrix b = basis_element(i);
          grown = Matrix::vstack(grown, mul(b, x));
          grown = Matrix::vstack(grown, mul(x, b));
        }
      }
      grown = row_basis(grown);
      if (grown.rows() == span.rows()) return span;
      span = grown;
    }
  }

  bool is_idempotent(const Matrix& e) const { return mul(e, e) == e; }
};

/// Structure constants of a matrix algebra given by a basis closed under
/// products. With `composition` set, x * y is "y first, then x" (the matrix
/// product y * x under the row-vector convention), as for endomorphism rings
/// multiplied by composition; otherwise it is the matrix product x * y.
inline RingPresentation ring_from_matrices(const FieldSpec& f, const std::vector<Matrix>& basis,
                                           std::vector<std::string> labels = {}, bool composition = false) {
  RingPresentation r;
  r.field = f;
  const std::size_t d = basis.size();
  if (labels.empty()) {
    for (std::size_t i = 0; i < d; ++i) labels.push_back("s" + std::to_string(i));
  }
  r.labels = labels;
  const std::size_t n = d ? basis[0].rows() : 0;
  auto flat = [n](const Matrix& x) {
    Matrix row(1, n * x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) row(0, i * x.cols() + j) = x(i, j);
    }
    return row;
  };
  Matrix flat_basis(0, d ? n * basis[0].cols() : 0);
  for (const auto& b : basis) flat_basis = Matrix::vstack(flat_basis, flat(b));
  auto coords_of = [&](const Matrix& x) {
    auto c = coordinates(flat_basis, flat(x));
    if (!c) throw PreconditionError("matrix basis is not closed under products");
    return *c;
  };
  r.table.assign(d, std::vector<Matrix>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) r.table[i][j] = coords_of(composition ? basis[j] * basis[i] : basis[i] * basis[j]);
  }
  r.unit = d ? coords_of(Matrix::identity(n)) : Matrix(1, 0);
  return r;
}

}  // namespace tiltkit
