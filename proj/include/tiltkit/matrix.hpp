#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "tiltkit/error.hpp"
#include "tiltkit/scalar.hpp"

namespace tiltkit {

/// Dense row-major matrix over a field. Vectors are rows; a matrix acts on
/// the right, v -> v * M. Zero-row and zero-column matrices are valid.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw InputError("ragged matrix literal");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  Matrix row(std::size_t r) const { return block(r, 0, 1, cols_); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    }
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
  }

  /// Adds `b` into the block at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b, const Scalar& factor = Scalar(1)) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(i, j).is_zero()) (*this)(r0 + i, c0 + j) += factor * b(i, j);
      }
    }
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix out(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
    }
    return out;
  }

  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
    }
    return out;
  }

  Matrix in_field(const FieldSpec& f) const {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].in_field(f);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw InputError("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& y = b(k, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) {
      if (!b.data_[k].is_zero()) c.data_[k] += b.data_[k];
    }
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) {
      if (!b.data_[k].is_zero()) c.data_[k] -= b.data_[k];
    }
    return c;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) {
      if (!x.is_zero()) x *= s;
    }
    return c;
  }

  Matrix operator-() const { return Scalar(-1) * *this; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      if (!(a.data_[k] == b.data_[k])) return false;
    }
    return true;
  }

  /// [a | b]
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw InputError("hstack row mismatch: " + a.shape() + " | " + b.shape());
    Matrix c(a.rows_, a.cols_ + b.cols_);
    c.set_block(0, 0, a);
    c.set_block(0, a.cols_, b);
    return c;
  }

  /// [a ; b]
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw InputError("vstack column mismatch: " + a.shape() + " ; " + b.shape());
    Matrix c(a.rows_ + b.rows_, a.cols_);
    c.set_block(0, 0, a);
    c.set_block(a.rows_, 0, b);
    return c;
  }

  static Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_ + b.rows_, a.cols_ + b.cols_);
    c.set_block(0, 0, a);
    c.set_block(a.rows_, a.cols_, b);
    return c;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << ',';
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ',';
        os << (*this)(i, j);
      }
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw InputError("matrix shape mismatch: " + shape() + " vs " + b.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace tiltkit
