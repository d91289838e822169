#pragma once

// Defining polynomial of the critical value set C_L in the resolution chart:
// the stacked determinant det[Ahat; kappa*L_1; ...; kappa*L_{n-m+1}] and its
// Pluecker expansion for the standard diagonal subspace.

#include <vector>

#include "rectpencil/matrix.hpp"
#include "rectpencil/pencil.hpp"
#include "rectpencil/polycore.hpp"

namespace rectpencil {

/// k1..km
inline VarList kernel_vars(std::size_t m) { return indexed_vars("k", m); }

/// a{i}_{j} for i = 1..rows, j = 1..cols, row-major.
VarList ahat_vars(std::size_t rows, std::size_t cols);

/// Fully symbolic (rows x cols) matrix with entries a{i}_{j}.
PolyMatrix<Rational> symbolic_ahat(std::size_t rows, std::size_t cols);

/// T_{i,d} = k_1 J_1 + ... + k_i J_i as a d x (i+d-1) matrix: entry (p,q)
/// (1-based) is k_{q-p+1} when 1 <= q-p+1 <= i.
template <class C = Rational>
PolyMatrix<C> build_T(std::size_t i, std::size_t d, const VarList& kvars) {
  if (i < 1 || d < 1) throw UsageError("build_T: need i >= 1 and d >= 1");
  if (kvars.size() < i) throw UsageError("build_T: not enough kernel variables");
  PolyMatrix<C> t(d, i + d - 1, MultiPoly<C>(kvars));
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t s = 0; s < i; ++s) t(p, p + s) = MultiPoly<C>::variable(kvars, kvars[s]);
  return t;
}

inline PolyMatrix<Rational> build_T(std::size_t i, std::size_t d) { return build_T<Rational>(i, d, kernel_vars(i)); }

template <class C>
struct CriticalPolynomial {
  std::size_t m = 0;
  std::size_t n = 0;
  VarList kernel;  // k1..km, a prefix of poly.variables()
  MultiPoly<C> poly;
};

namespace detail {

template <class C>
PolyMatrix<C> lift_matrix(const PolyMatrix<C>& a, const VarList& vars) {
  PolyMatrix<C> out(a.rows(), a.cols(), MultiPoly<C>(vars));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = with_variables(a(i, j), vars);
  return out;
}

template <class C>
VarList entry_vars(const PolyMatrix<C>& a) {
  return a.rows() == 0 ? VarList() : shared_vars(a);
}

template <class C>
MultiPoly<C> det_or_one(const PolyMatrix<C>& a, const VarList& vars) {
  if (a.rows() == 0) return MultiPoly<C>(vars, ScalarTraits<C>::one());
  return with_variables(sym_det(a), vars);
}

}  // namespace detail

/// det of the n x n stack [ahat; V_1; ...; V_{n-m+1}], V_j = kappa * L_j
/// with kappa = (k1, ..., km) symbolic. Variables: k1..km then ahat's.
template <class C>
CriticalPolynomial<C> critical_det_poly(const PolyMatrix<C>& ahat, const std::vector<Matrix<C>>& basis) {
  const std::size_t m = ahat.rows() + 1;
  const std::size_t n = ahat.cols();
  if (m > n) throw UsageError("critical_det_poly: ahat must be (m-1) x n with m <= n");
  if (basis.size() != n - m + 1) throw UsageError("critical_det_poly: need n-m+1 basis matrices");
  for (const auto& l : basis)
    if (l.rows() != m || l.cols() != n) throw UsageError("critical_det_poly: basis matrix must be m x n");
  VarList kv = kernel_vars(m);
  VarList vars = concat_vars(kv, detail::entry_vars(ahat));
  PolyMatrix<C> stack(n, n, MultiPoly<C>(vars));
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = 0; j < n; ++j) stack(i, j) = with_variables(ahat(i, j), vars);
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t q = 0; q < n; ++q) {
      MultiPoly<C> v(vars);
      for (std::size_t p = 0; p < m; ++p)
        if (!is_zero_value(basis[b](p, q))) v += MultiPoly<C>::variable(vars, kv[p]) * basis[b](p, q);
      stack(m - 1 + b, q) = std::move(v);
    }
  return {m, n, kv, sym_det(stack)};
}

template <class C>
CriticalPolynomial<C> critical_det_poly(const Matrix<C>& ahat, const std::vector<Matrix<C>>& basis) {
  return critical_det_poly(to_poly_matrix(ahat, VarList()), basis);
}

/// Pluecker expansion for the standard diagonal subspace:
/// (-1)^{m(m-1)/2} sum_beta (-1)^{rho(beta)} |ahat[:, beta]| |T_{m,n-m+1}[:, beta^c]|.
template <class C>
CriticalPolynomial<C> sds_poly(const PolyMatrix<C>& ahat, std::size_t m, std::size_t n) {
  if (ahat.rows() + 1 != m || ahat.cols() != n || m > n) throw UsageError("sds_poly: ahat must be (m-1) x n");
  VarList kv = kernel_vars(m);
  VarList vars = concat_vars(kv, detail::entry_vars(ahat));
  PolyMatrix<C> a = detail::lift_matrix(ahat, vars);
  PolyMatrix<C> t = detail::lift_matrix(build_T<C>(m, n - m + 1, kv), vars);
  MultiPoly<C> sum(vars);
  for (const auto& beta : lex_subsets(n, m - 1)) {
    std::vector<std::size_t> rest;
    std::size_t rho = 0;
    for (std::size_t q = 0, b = 0; q < n; ++q) {
      if (b < beta.size() && beta[b] == q) {
        rho += q + 1;
        ++b;
      } else {
        rest.push_back(q);
      }
    }
    MultiPoly<C> upper = detail::det_or_one(a.select_cols(beta), vars);
    if (upper.is_zero()) continue;
    MultiPoly<C> term = upper * detail::det_or_one(t.select_cols(rest), vars);
    if (rho % 2 == 1) sum -= term;
    else sum += term;
  }
  if ((m * (m - 1) / 2) % 2 == 1) sum = -sum;
  return {m, n, kv, std::move(sum)};
}

template <class C>
CriticalPolynomial<C> sds_poly(const Matrix<C>& ahat, std::size_t m, std::size_t n) {
  return sds_poly(to_poly_matrix(ahat, VarList()), m, n);
}

struct MinorBasis {
  std::size_t i = 0;
  std::size_t d = 0;
  std::vector<std::vector<std::size_t>> column_sets;  // beta, 0-based
  std::vector<QPoly> polys;
};

/// The maximal minors of T_{i,d}, in lexicographic column-subset order.
/// Throws IdentityViolation if they fail to be linearly independent.
MinorBasis minor_basis(std::size_t i, std::size_t d);

/// Columns: the minor basis written in the monomial basis of HP(i,d).
/// Throws IdentityViolation if the matrix is singular.
Matrix<Rational> basis_change_matrix(std::size_t i, std::size_t d);

/// Coefficient matrix of `polys` (columns) against `monomials` (rows).
Matrix<Rational> coefficient_matrix(const std::vector<QPoly>& polys, const std::vector<Exponent>& monomials);

}  // namespace rectpencil
