#pragma once

#include "rectpencil/matrix.hpp"
#include "rectpencil/multipoly.hpp"

namespace rectpencil {

enum class DetMethod {
  automatic,  // Bareiss for exact coefficients, cofactor for floats
  bareiss,
  cofactor,
};

namespace detail {

template <class C>
VarList shared_vars(const PolyMatrix<C>& m) {
  VarList vars;
  for (const auto& p : m.data()) {
    if (p.variables().empty()) continue;
    if (vars.empty()) vars = p.variables();
    else if (vars != p.variables()) throw UsageError("matrix entries have mismatched variable lists");
  }
  return vars;
}

}  // namespace detail

/// Symbolic determinant of a square polynomial matrix.
template <class C>
MultiPoly<C> sym_det(const PolyMatrix<C>& m, DetMethod method = DetMethod::automatic) {
  if (!m.is_square()) throw UsageError("sym_det: matrix is " + std::to_string(m.rows()) + "x" +
                                       std::to_string(m.cols()) + ", not square");
  VarList vars = detail::shared_vars(m);
  PolyMatrix<C> lifted(m.rows(), m.cols(), MultiPoly<C>(vars));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) lifted(i, j) = with_variables(m(i, j), vars);
  if (method == DetMethod::automatic)
    method = ScalarTraits<C>::exact ? DetMethod::bareiss : DetMethod::cofactor;
  if (method == DetMethod::bareiss) {
    if constexpr (ScalarTraits<C>::exact) {
      return det_bareiss(std::move(lifted));
    } else {
      throw UsageError("Bareiss elimination needs an exact coefficient domain");
    }
  }
  return det_cofactor(lifted);
}

/// Drops a variable that no longer occurs in p.
template <class C>
MultiPoly<C> drop_variable(const MultiPoly<C>& p, std::size_t var) {
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < p.variables().size(); ++i)
    if (i != var) rest.push_back(p.variables()[i]);
  return with_variables(p, VarList(rest));
}

/// Sylvester resultant eliminating `var`. Rows of p's coefficients come
/// first, each row listing coefficients from the highest power down.
template <class C>
MultiPoly<C> resultant_univariate(const MultiPoly<C>& p, const MultiPoly<C>& q, std::string_view var) {
  if (p.variables() != q.variables()) throw UsageError("resultant: mismatched variable lists");
  std::size_t v = p.variables().index_of(var);
  int dp = p.degree_in(v);
  int dq = q.degree_in(v);
  if (dp < 1 || dq < 1) throw UsageError("resultant: both polynomials need positive degree in " + std::string(var));
  auto cp = coefficients_in(p, v);
  auto cq = coefficients_in(q, v);
  const auto size = static_cast<std::size_t>(dp + dq);
  PolyMatrix<C> syl(size, size, MultiPoly<C>(p.variables()));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) syl(static_cast<std::size_t>(r), static_cast<std::size_t>(r + k)) = cp[static_cast<std::size_t>(dp - k)];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k)
      syl(static_cast<std::size_t>(dq + r), static_cast<std::size_t>(r + k)) = cq[static_cast<std::size_t>(dq - k)];
  return drop_variable(sym_det(syl), v);
}

/// disc(p) = (-1)^(d(d-1)/2) * res(p, p') / lc(p) with respect to `var`.
template <class C>
MultiPoly<C> discriminant(const MultiPoly<C>& p, std::string_view var) {
  std::size_t v = p.variables().index_of(var);
  int d = p.degree_in(v);
  if (d < 1) throw UsageError("discriminant: polynomial is constant in " + std::string(var));
  if (d == 1) return drop_variable(MultiPoly<C>(p.variables(), ScalarTraits<C>::one()), v);
  MultiPoly<C> res = resultant_univariate(p, partial_derivative(p, v), var);
  MultiPoly<C> lc = drop_variable(coefficients_in(p, v).back(), v);
  MultiPoly<C> out = exact_divide(res, lc);
  if ((d * (d - 1) / 2) % 2 == 1) out = -out;
  return out;
}

}  // namespace rectpencil
