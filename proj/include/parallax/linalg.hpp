#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parallax/algnum.hpp"
#include "parallax/errors.hpp"
#include "parallax/ratexpr.hpp"

namespace parallax {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const RatExpr& f) { return f.is_zero(); }

/// Dense matrix over an exact field T.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c;
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!parallax::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product of incompatible shapes");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (parallax::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!parallax::is_zero(b(k, j))) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix scaled(const T& c) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= c;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector product of incompatible shapes");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!parallax::is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  /// Fraction-free (Bareiss) determinant.
  T determinant() const {
    if (!square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return T(1);
    Matrix m = *this;
    T prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (parallax::is_zero(m(k, k))) {
        std::size_t p = k + 1;
        while (p < n && parallax::is_zero(m(p, k))) ++p;
        if (p == n) return T(0);
        m.swap_rows(k, p);
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      prev = m(k, k);
    }
    T d = m(n - 1, n - 1);
    return negate ? -d : d;
  }

  /// Reduced row echelon form together with the pivot columns.
  std::pair<Matrix, std::vector<std::size_t>> rref() const {
    Matrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && parallax::is_zero(m(p, c))) ++p;
      if (p == rows_) continue;
      m.swap_rows(r, p);
      T inv = T(1) / m(r, c);
      for (std::size_t j = c; j < cols_; ++j) m(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || parallax::is_zero(m(i, c))) continue;
        T f = m(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          if (!parallax::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return {m, pivots};
  }

  std::size_t rank() const { return rref().second.size(); }

  /// Basis of {v : M v = 0}.
  std::vector<std::vector<T>> nullspace() const {
    auto [m, pivots] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> v(cols_, T(0));
      v[f] = T(1);
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Matrix inverse() const {
    if (!square()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = T(1);
    }
    auto [m, pivots] = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
    return inv;
  }

  /// Some solution of M x = b, or nullopt when inconsistent.
  std::optional<std::vector<T>> solve(const std::vector<T>& b) const {
    if (b.size() != rows_) throw DimensionMismatch("right-hand side has wrong length");
    Matrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto [m, pivots] = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<T> x(cols_, T(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m(r, cols_);
    return x;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ExprMatrix = Matrix<RatExpr>;

inline std::vector<std::vector<std::string>> to_strings(const ExprMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

}  // namespace parallax
