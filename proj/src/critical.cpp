#include "rectpencil/critical.hpp"

namespace rectpencil {

VarList ahat_vars(std::size_t rows, std::size_t cols) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= rows; ++i)
    for (std::size_t j = 1; j <= cols; ++j) names.push_back("a" + std::to_string(i) + "_" + std::to_string(j));
  return VarList(std::move(names));
}

PolyMatrix<Rational> symbolic_ahat(std::size_t rows, std::size_t cols) {
  VarList vars = ahat_vars(rows, cols);
  PolyMatrix<Rational> out(rows, cols, QPoly(vars));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = QPoly::variable(vars, vars[i * cols + j]);
  return out;
}

Matrix<Rational> coefficient_matrix(const std::vector<QPoly>& polys, const std::vector<Exponent>& monomials) {
  Matrix<Rational> out(monomials.size(), polys.size(), Rational(0));
  for (std::size_t c = 0; c < polys.size(); ++c)
    for (std::size_t r = 0; r < monomials.size(); ++r) out(r, c) = polys[c].coefficient(monomials[r]);
  return out;
}

MinorBasis minor_basis(std::size_t i, std::size_t d) {
  PolyMatrix<Rational> t = build_T(i, d);
  MinorBasis out{i, d, lex_subsets(i + d - 1, d), {}};
  for (const auto& beta : out.column_sets) out.polys.push_back(sym_det(t.select_cols(beta)));
  auto mons = homogeneous_monomials(i, static_cast<unsigned>(d));
  if (rank_exact(coefficient_matrix(out.polys, mons)) != out.polys.size())
    throw IdentityViolation("minor basis of T_{" + std::to_string(i) + "," + std::to_string(d) +
                            "} is linearly dependent");
  return out;
}

Matrix<Rational> basis_change_matrix(std::size_t i, std::size_t d) {
  if (i < 1 || d < 1) throw UsageError("basis_change_matrix: need i >= 1 and d >= 1");
  PolyMatrix<Rational> t = build_T(i, d);
  std::vector<QPoly> polys;
  for (const auto& beta : lex_subsets(i + d - 1, d)) polys.push_back(sym_det(t.select_cols(beta)));
  auto mons = homogeneous_monomials(i, static_cast<unsigned>(d));
  Matrix<Rational> b = coefficient_matrix(polys, mons);
  if (!b.is_square() || sgn(det_bareiss(b)) == 0)
    throw IdentityViolation("basis change matrix for (" + std::to_string(i) + "," + std::to_string(d) +
                            ") is singular");
  return b;
}

}  // namespace rectpencil
