#pragma once

// Dense row-major matrices over scalars or polynomials, with exact
// determinant and rank routines.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectpencil/errors.hpp"
#include "rectpencil/multipoly.hpp"
#include "rectpencil/scalar.hpp"

namespace rectpencil {

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw UsageError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return data_[i * cols_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    check(i, 0);
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }
  const std::vector<T>& data() const { return data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  /// Submatrix on the given row and column indices (0-based).
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = at(rows[i], cols[j]);
    return out;
  }
  Matrix select_cols(const std::vector<std::size_t>& cols) const {
    std::vector<std::size_t> all(rows_);
    for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
    return select(all, cols);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw UsageError("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class C>
using PolyMatrix = Matrix<MultiPoly<C>>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix product dimension mismatch");
  Matrix<T> out(a.rows(), b.cols(), zero_like(a(0, 0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc = zero_like(a(0, 0));
      for (std::size_t k = 0; k < a.cols(); ++k) acc = T(acc + a(i, k) * b(k, j));
      out(i, j) = acc;
    }
  return out;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("matrix sum dimension mismatch");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = T(a(i, j) + b(i, j));
  return out;
}

template <class T, class S>
Matrix<T> scale(const Matrix<T>& a, const S& s) {
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = T(a(i, j) * s);
  return out;
}

/// Entry-wise lift between scalar domains.
template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& a) {
  Matrix<To> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = scalar_cast<To>(a(i, j));
  return out;
}

/// Constant polynomials over `vars`.
template <class C>
PolyMatrix<C> to_poly_matrix(const Matrix<C>& a, const VarList& vars) {
  PolyMatrix<C> out(a.rows(), a.cols(), MultiPoly<C>(vars));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = MultiPoly<C>(vars, a(i, j));
  return out;
}

// ---------------------------------------------------------------------------
// Combinatorics

std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// All r-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t r);

// ---------------------------------------------------------------------------
// Exact elimination

namespace detail {

inline Rational exact_quotient(const Rational& a, const Rational& b) { return Rational(a / b); }
inline Gaussian exact_quotient(const Gaussian& a, const Gaussian& b) { return a / b; }
template <class C>
MultiPoly<C> exact_quotient(const MultiPoly<C>& a, const MultiPoly<C>& b) {
  return exact_divide(a, b);
}

inline std::size_t weight(const Rational&) { return 1; }
inline std::size_t weight(const Gaussian&) { return 1; }
template <class C>
std::size_t weight(const MultiPoly<C>& p) {
  return p.size();
}

}  // namespace detail

/// Fraction-free (Bareiss) determinant. Every division is exact, so exact
/// domains and polynomial rings never leave their ring.
template <class T>
T det_bareiss(Matrix<T> m) {
  if (!m.is_square()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) throw UsageError("determinant of an empty matrix");
  T prev = one_like(m(0, 0));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // lightest nonzero pivot keeps intermediate polynomials small
    std::optional<std::size_t> piv;
    for (std::size_t i = k; i < n; ++i) {
      if (is_zero_value(m(i, k))) continue;
      if (!piv || detail::weight(m(i, k)) < detail::weight(m(*piv, k))) piv = i;
    }
    if (!piv) return zero_like(m(0, 0));
    if (*piv != k) {
      m.swap_rows(*piv, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = T(m(i, j) * m(k, k) - m(i, k) * m(k, j));
        m(i, j) = detail::exact_quotient(num, prev);
      }
      m(i, k) = zero_like(m(0, 0));
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return negate ? T(-d) : d;
}

/// Division-free Laplace expansion along rows, memoised on column subsets.
template <class T>
T det_cofactor(const Matrix<T>& m) {
  if (!m.is_square()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) throw UsageError("determinant of an empty matrix");
  if (n > 20) throw UsageError("cofactor determinant limited to 20x20");
  // minor[mask] = det of the bottom popcount(mask) rows on columns `mask`
  std::vector<std::optional<T>> minor(std::size_t{1} << n);
  minor[0] = one_like(m(0, 0));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    unsigned size = static_cast<unsigned>(__builtin_popcount(mask));
    std::size_t row = n - size;
    T acc = zero_like(m(0, 0));
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const T& entry = m(row, j);
      const T& sub = *minor[mask & ~(1u << j)];
      if (!is_zero_value(entry) && !is_zero_value(sub)) {
        T prod = T(entry * sub);
        if (sign > 0) acc = T(acc + prod);
        else acc = T(acc - prod);
      }
      sign = -sign;
    }
    minor[mask] = std::move(acc);
  }
  return *minor[(1u << n) - 1];
}

/// Rank over an exact field by fraction-free elimination.
template <class T>
std::size_t rank_exact(Matrix<T> m) {
  static_assert(ScalarTraits<T>::exact, "rank_exact needs an exact field");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  T prev = ScalarTraits<T>::one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero_value(m(i, c))) {
        piv = i;
        break;
      }
    if (!piv) continue;
    m.swap_rows(*piv, r);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m(i, j) = detail::exact_quotient(T(m(i, j) * m(r, c) - m(i, c) * m(r, j)), prev);
      m(i, c) = ScalarTraits<T>::zero();
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

/// Solves a x = b over an exact field; nullopt when inconsistent. Free
/// variables are set to zero.
template <class T>
std::optional<std::vector<T>> solve_exact(Matrix<T> a, std::vector<T> b) {
  static_assert(ScalarTraits<T>::exact, "solve_exact needs an exact field");
  if (b.size() != a.rows()) throw UsageError("right-hand side has wrong length");
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero_value(a(i, c))) {
        piv = i;
        break;
      }
    if (!piv) continue;
    a.swap_rows(*piv, r);
    std::swap(b[*piv], b[r]);
    T inv = detail::exact_quotient(ScalarTraits<T>::one(), a(r, c));
    for (std::size_t j = c; j < cols; ++j) a(r, j) = T(a(r, j) * inv);
    b[r] = T(b[r] * inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero_value(a(i, c))) continue;
      T f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) = T(a(i, j) - f * a(r, j));
      b[i] = T(b[i] - f * b[r]);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!is_zero_value(b[i])) return std::nullopt;
  std::vector<T> x(cols, ScalarTraits<T>::zero());
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace rectpencil
