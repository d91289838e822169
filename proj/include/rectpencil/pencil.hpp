#pragma once

// Rectangular pencils A + l_1 L_1 + ... + l_k L_k with k = n - m + 1.

#include <vector>

#include "rectpencil/matrix.hpp"
#include "rectpencil/numeric.hpp"
#include "rectpencil/polycore.hpp"

namespace rectpencil {

/// m x n matrix with ones where (column - row) == s - 1.
template <class T>
Matrix<T> unit_diagonal_matrix(std::size_t m, std::size_t n, std::size_t s) {
  if (m == 0 || m > n) throw UsageError("unit_diagonal_matrix: need 1 <= m <= n");
  if (s < 1 || s > n - m + 1) throw UsageError("unit_diagonal_matrix: s out of range 1.." + std::to_string(n - m + 1));
  Matrix<T> out(m, n, ScalarTraits<T>::zero());
  for (std::size_t i = 0; i < m; ++i) out(i, i + s - 1) = ScalarTraits<T>::one();
  return out;
}

template <class T>
std::vector<Matrix<T>> standard_diagonal_basis(std::size_t m, std::size_t n) {
  if (m == 0 || m > n) throw UsageError("standard_diagonal_basis: need 1 <= m <= n");
  std::vector<Matrix<T>> out;
  for (std::size_t s = 1; s <= n - m + 1; ++s) out.push_back(unit_diagonal_matrix<T>(m, n, s));
  return out;
}

/// m - rank. Exact domains eliminate fraction-free; complex floats use the
/// SVD with threshold 1e-8 * sigma_max.
template <class T>
std::size_t corank(const Matrix<T>& a) {
  std::size_t r = 0;
  if constexpr (ScalarTraits<T>::exact) {
    r = rank_exact(a);
  } else {
    r = numeric_rank(to_eigen_any(a), 1e-8);
  }
  return a.rows() - r;
}

/// Determinant for any supported entry type (scalar or polynomial).
template <class T>
T determinant(const Matrix<T>& a) {
  if constexpr (std::is_same_v<T, Complex>) {
    return det_numeric(to_eigen(a));
  } else if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, Gaussian>) {
    return det_bareiss(a);
  } else {
    return sym_det(a);
  }
}

/// All m x m minors in lexicographic column-subset order.
template <class T>
std::vector<T> maximal_minors(const Matrix<T>& a) {
  if (a.rows() == 0 || a.rows() > a.cols()) throw UsageError("maximal_minors: need 1 <= rows <= cols");
  std::vector<T> out;
  for (const auto& cols : lex_subsets(a.cols(), a.rows())) out.push_back(determinant(a.select_cols(cols)));
  return out;
}

/// A point of the chart M(m-1,n) x C^{m-1}.
template <class T>
struct ResolutionPoint {
  Matrix<T> ahat;
  std::vector<T> kernel_coeffs;
};

/// Appends the row -sum_j k_j * ahat_j, so (k_1, ..., k_{m-1}, 1) is a left
/// kernel vector of the result.
template <class T>
Matrix<T> resolution_nu(const ResolutionPoint<T>& p) {
  const std::size_t r = p.ahat.rows();
  const std::size_t n = p.ahat.cols();
  if (p.kernel_coeffs.size() != r) throw UsageError("resolution_nu: need one kernel coefficient per row of ahat");
  Matrix<T> out(r + 1, n, ScalarTraits<T>::zero());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = p.ahat(i, j);
  for (std::size_t j = 0; j < n; ++j) {
    T acc = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i < r; ++i) acc = T(acc + p.kernel_coeffs[i] * p.ahat(i, j));
    out(r, j) = T(-acc);
  }
  return out;
}

/// Rank of the basis matrices flattened into row vectors.
template <class T>
std::size_t basis_rank(const std::vector<Matrix<T>>& basis) {
  if (basis.empty()) return 0;
  const std::size_t len = basis[0].rows() * basis[0].cols();
  Matrix<T> flat(basis.size(), len, ScalarTraits<T>::zero());
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t t = 0; t < len; ++t) flat(b, t) = basis[b].data()[t];
  if constexpr (ScalarTraits<T>::exact) {
    return rank_exact(flat);
  } else {
    return numeric_rank(to_eigen(flat), 1e-8);
  }
}

/// P = A + span(L_1, ..., L_{n-m+1}).
template <class T>
class PencilSpec {
 public:
  PencilSpec(Matrix<T> base, std::vector<Matrix<T>> basis) : base_(std::move(base)), basis_(std::move(basis)) {
    const std::size_t m = base_.rows();
    const std::size_t n = base_.cols();
    if (m == 0 || m > n) throw UsageError("pencil: base matrix must be m x n with 1 <= m <= n");
    if (basis_.size() != n - m + 1)
      throw UsageError("pencil: need n-m+1 = " + std::to_string(n - m + 1) + " basis matrices, got " +
                       std::to_string(basis_.size()));
    for (const auto& l : basis_)
      if (l.rows() != m || l.cols() != n) throw UsageError("pencil: basis matrix dimensions differ from the base");
    if (basis_rank(basis_) != basis_.size()) throw UsageError("pencil: basis matrices are linearly dependent");
  }

  static PencilSpec diagonal(Matrix<T> base) {
    auto basis = standard_diagonal_basis<T>(base.rows(), base.cols());
    return PencilSpec(std::move(base), std::move(basis));
  }

  std::size_t m() const { return base_.rows(); }
  std::size_t n() const { return base_.cols(); }
  std::size_t k() const { return basis_.size(); }
  const Matrix<T>& base() const { return base_; }
  const std::vector<Matrix<T>>& basis() const { return basis_; }

  bool is_standard_diagonal() const { return basis_ == standard_diagonal_basis<T>(m(), n()); }

  /// A + sum lambda_i L_i in the complex domain.
  Matrix<Complex> at(std::span<const Complex> lambda) const {
    if (lambda.size() != k()) throw UsageError("pencil: parameter vector has wrong length");
    Matrix<Complex> out = matrix_cast<Complex>(base_);
    for (std::size_t s = 0; s < k(); ++s)
      for (std::size_t i = 0; i < m(); ++i)
        for (std::size_t j = 0; j < n(); ++j) out(i, j) += lambda[s] * scalar_cast<Complex>(basis_[s](i, j));
    return out;
  }

  /// Symbolic member A + sum (shift_i + t_i) L_i over the variables `vars`.
  template <class C>
  PolyMatrix<C> symbolic(const VarList& vars, std::span<const C> shift) const {
    if (vars.size() != k() || shift.size() != k()) throw UsageError("pencil: symbolic member needs k variables");
    PolyMatrix<C> out(m(), n(), MultiPoly<C>(vars));
    for (std::size_t i = 0; i < m(); ++i)
      for (std::size_t j = 0; j < n(); ++j) {
        C entry = scalar_cast<C>(base_(i, j));
        MultiPoly<C> p(vars);
        for (std::size_t s = 0; s < k(); ++s) {
          C l = scalar_cast<C>(basis_[s](i, j));
          if (is_zero_value(l)) continue;
          entry += C(l * shift[s]);
          p += MultiPoly<C>::variable(vars, vars[s]) * l;
        }
        p += MultiPoly<C>(vars, entry);
        out(i, j) = std::move(p);
      }
    return out;
  }

  /// Same pencil in the complex domain.
  PencilSpec<Complex> to_complex() const {
    std::vector<Matrix<Complex>> b;
    for (const auto& l : basis_) b.push_back(matrix_cast<Complex>(l));
    return PencilSpec<Complex>(matrix_cast<Complex>(base_), std::move(b));
  }

 private:
  Matrix<T> base_;
  std::vector<Matrix<T>> basis_;
};

}  // namespace rectpencil
