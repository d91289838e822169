#include "rectpencil/disc23.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "rectpencil/critical.hpp"

namespace rectpencil {

namespace {

const VarList& lambda_vars() {
  static const VarList v({"lambda1", "lambda2"});
  return v;
}

void check_shape(const Disc23Input& a) {
  if (a.rows() != 2 || a.cols() != 3)
    throw UsageError("discriminant23: matrix must be 2x3, got " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
}

VarList entry_vars_of(const Disc23Input& a) { return detail::shared_vars(a); }

/// Entries of a and the two lambdas over (lambda1, lambda2, entry vars).
struct Lifted {
  VarList vars;
  std::array<std::array<QPoly, 4>, 3> a;  // 1-based: a[i][j]
  QPoly l1, l2;
};

Lifted lift(const Disc23Input& in) {
  check_shape(in);
  Lifted out;
  out.vars = concat_vars(lambda_vars(), entry_vars_of(in));
  for (std::size_t i = 1; i <= 2; ++i)
    for (std::size_t j = 1; j <= 3; ++j) out.a[i][j] = with_variables(in(i - 1, j - 1), out.vars);
  out.l1 = QPoly::variable(out.vars, "lambda1");
  out.l2 = QPoly::variable(out.vars, "lambda2");
  return out;
}

QPoly c(const VarList& vars, long v) { return QPoly(vars, Rational(v)); }

/// Some r with p == r * ref, if any.
std::optional<Rational> proportionality(const QPoly& p, const QPoly& ref) {
  if (ref.is_zero() || p.is_zero()) return std::nullopt;
  const auto& [ep, cp] = p.leading_term();
  const auto& [er, cr] = ref.leading_term();
  if (ep != er) return std::nullopt;
  Rational r = cp / cr;
  if (p != ref * r) return std::nullopt;
  return r;
}

}  // namespace

VarList disc23_entry_vars() { return ahat_vars(2, 3); }

Disc23Input symbolic_disc23() { return symbolic_ahat(2, 3); }

Disc23Input disc23_input(const Matrix<Rational>& a) {
  Disc23Input out = to_poly_matrix(a, VarList());
  check_shape(out);
  return out;
}

EigenEquations eigen_equations(const Disc23Input& in) {
  Lifted s = lift(in);
  const auto& a = s.a;
  return {(a[1][2] - s.l2) * (a[2][3] - s.l2) - a[1][3] * (a[2][2] - s.l1),
          (a[1][1] - s.l1) * (a[2][3] - s.l2) - a[1][3] * a[2][1]};
}

QPoly critical_equation(const Disc23Input& in) {
  Lifted s = lift(in);
  const auto& a = s.a;
  const VarList& v = s.vars;
  return a[1][3] * a[1][3] * a[1][1] - a[1][3] * a[1][3] * s.l1 + a[2][3] * a[1][3] * a[1][2] -
         c(v, 3) * a[2][3] * a[1][3] * s.l2 + a[1][3] * a[2][3] * a[2][3] - s.l2 * a[1][3] * a[1][2] +
         c(v, 2) * a[1][3] * s.l2 * s.l2;
}

KappaChart kappa_chart(const Disc23Input& in) {
  Lifted s = lift(in);
  return {s.l2 - s.a[2][3], s.a[1][3]};
}

const std::array<Exponent, 8>& elimination_columns() {
  static const std::array<Exponent, 8> cols = {Exponent{0, 0}, Exponent{1, 0}, Exponent{0, 1}, Exponent{1, 1},
                                               Exponent{0, 2}, Exponent{1, 2}, Exponent{0, 3}, Exponent{0, 4}};
  return cols;
}

PolyMatrix<Rational> elimination_matrix(const Disc23Input& in) {
  check_shape(in);
  const VarList v = entry_vars_of(in);
  auto a = [&](std::size_t i, std::size_t j) { return with_variables(in(i - 1, j - 1), v); };
  const QPoly zero(v);
  const QPoly one = c(v, 1);
  const QPoly delta = a(1, 3) * a(1, 3) * a(1, 1) + a(2, 3) * a(1, 3) * a(1, 2) + a(1, 3) * a(2, 3) * a(2, 3);
  const QPoly d23 = a(1, 2) * a(2, 3) - a(1, 3) * a(2, 2);
  const QPoly d13 = a(1, 1) * a(2, 3) - a(2, 1) * a(1, 3);
  const QPoly sigma = -(a(1, 3) * a(1, 2)) - c(v, 3) * a(1, 3) * a(2, 3);
  const QPoly s23 = -a(1, 2) - a(2, 3);
  const QPoly a13sq = -(a(1, 3) * a(1, 3));
  const QPoly two13 = c(v, 2) * a(1, 3);
  const std::vector<std::vector<QPoly>> rows = {
      {d23, a(1, 3), s23, zero, one, zero, zero, zero},
      {zero, zero, d23, a(1, 3), s23, zero, one, zero},
      {zero, zero, zero, zero, d23, a(1, 3), s23, one},
      {d13, -a(2, 3), -a(1, 1), one, zero, zero, zero, zero},
      {zero, zero, d13, -a(2, 3), -a(1, 1), one, zero, zero},
      {delta, a13sq, sigma, zero, two13, zero, zero, zero},
      {zero, zero, delta, a13sq, sigma, zero, two13, zero},
      {zero, zero, zero, zero, delta, a13sq, sigma, two13},
  };
  PolyMatrix<Rational> out(8, 8, zero);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) out(i, j) = rows[i][j];
  return out;
}

PolyMatrix<Rational> elimination_matrix_from_equations(const Disc23Input& in) {
  auto eqs = eigen_equations(in);
  QPoly crit = critical_equation(in);
  const VarList& full = crit.variables();
  const VarList v = entry_vars_of(in);
  const QPoly l2 = QPoly::variable(full, "lambda2");
  const std::vector<QPoly> products = {eqs.minor23,      eqs.minor23 * l2, eqs.minor23 * l2 * l2,
                                       eqs.minor13,      eqs.minor13 * l2, crit,
                                       crit * l2,        crit * l2 * l2};
  const auto& cols = elimination_columns();
  PolyMatrix<Rational> out(8, 8, QPoly(v));
  for (std::size_t r = 0; r < 8; ++r)
    for (const auto& [e, coeff] : products[r].terms()) {
      Exponent lam = {e[0], e[1]};
      auto it = std::find(cols.begin(), cols.end(), lam);
      if (it == cols.end()) throw IdentityViolation("elimination matrix: monomial outside the column set");
      Exponent rest(e.begin() + 2, e.end());
      out(r, static_cast<std::size_t>(it - cols.begin())) += QPoly::monomial(v, rest, coeff);
    }
  return out;
}

QPoly elimination_determinant(const Disc23Input& a) {
  QPoly d = sym_det(elimination_matrix(a));
  return with_variables(d, entry_vars_of(a));
}

const QPoly& symbolic_elimination_determinant() {
  static const QPoly d = elimination_determinant(symbolic_disc23());
  return d;
}

const QPoly& printed_D0() {
  static const QPoly d0 = parse_poly<Rational>(
      "-12*a1_3*a2_2^2*a1_1 + a2_2^2*a1_2^2 + 12*a1_3*a2_2*a1_1^2 + a1_1^2*a2_3^2 + 4*a2_1*a1_2^3"
      " - 4*a2_1*a2_3^3 + a1_1^2*a1_2^2 + 12*a1_2*a2_3^2*a2_1 - 12*a1_2^2*a2_3*a2_1 - 2*a1_2*a2_3*a2_2^2"
      " - 2*a1_2*a2_3*a1_1^2 - 2*a2_2*a1_1*a2_3^2 - 18*a1_3*a2_2*a2_3*a2_1 - 2*a2_2*a1_1*a1_2^2"
      " + 18*a1_3*a2_2*a2_1*a1_2 + 18*a1_1*a2_3*a1_3*a2_1 - 18*a2_1*a1_3*a1_2*a1_1"
      " + 4*a1_3*a2_2^3 - 27*a2_1^2*a1_3^2 - 4*a1_3*a1_1^3 + 4*a1_2*a2_3*a2_2*a1_1 + a2_2^2*a2_3^2",
      disc23_entry_vars());
  return d0;
}

const QPoly& printed_W() {
  static const QPoly w =
      parse_poly<Rational>("16*(3*a1_2*a2_1 - 3*a2_1*a2_3 - 2*a1_1*a2_2 + a1_1^2 + a2_2^2)^3", disc23_entry_vars());
  return w;
}

DFactorization factor_elimination_determinant(const QPoly& d, std::string_view variable) {
  auto f = extract_monomial_factor(d, variable);
  DFactorization out;
  out.variable = std::string(variable);
  out.exponent = f.exponent;
  out.constant = proportionality(f.quotient, with_variables(printed_D0(), f.quotient.variables()));
  out.quotient = std::move(f.quotient);
  return out;
}

const QPoly& discriminant_D0() {
  static const QPoly& d0 = [] () -> const QPoly& {
    auto f = factor_elimination_determinant(symbolic_elimination_determinant(), "a1_3");
    if (f.exponent != 6) throw IdentityViolation("discriminant23: D is not divisible by exactly a1_3^6");
    if (!f.constant || *f.constant != Rational(-1))
      throw IdentityViolation("discriminant23: D / a1_3^6 is not -1 times the printed D0");
    return printed_D0();
  }();
  return d0;
}

WComparison compare_discriminant_with_W() {
  WComparison out;
  out.discriminant = discriminant(printed_D0(), "a1_3");
  out.constant = proportionality(out.discriminant, with_variables(printed_W(), out.discriminant.variables()));
  return out;
}

PencilSpec<Complex> disc23_pencil(const Matrix<Complex>& a) {
  if (a.rows() != 2 || a.cols() != 3) throw UsageError("discriminant23: matrix must be 2x3");
  std::vector<Matrix<Complex>> basis;
  for (const auto& j : standard_diagonal_basis<Complex>(2, 3)) {
    Matrix<Complex> neg(2, 3, Complex(0));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c) neg(r, c) = -j(r, c);
    basis.push_back(std::move(neg));
  }
  return PencilSpec<Complex>(a, std::move(basis));
}

std::pair<Complex, double> evaluate_D0(const Matrix<Complex>& a) {
  if (a.rows() != 2 || a.cols() != 3) throw UsageError("discriminant23: matrix must be 2x3");
  const QPoly& d0 = printed_D0();
  std::span<const Complex> x(a.data().data(), a.data().size());
  double scale = 0.0;
  for (const auto& [e, coeff] : d0.terms()) {
    double t = std::abs(scalar_cast<Complex>(coeff));
    for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(std::abs(x[i]), e[i]);
    scale += t;
  }
  return {evaluate_at<Complex>(d0, x), std::max(1.0, scale)};
}

Disc23Evaluation evaluate_disc23(const Matrix<Complex>& a, double tol, const SolverConfig& config) {
  Disc23Evaluation out;
  std::tie(out.d0, out.d0_scale) = evaluate_D0(a);
  out.eigenvalues = solve_eigenvalue_locus(disc23_pencil(a), config);
  for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
    if (out.eigenvalues[i].multiplicity.value_or(2) >= 2) out.multiple = true;
    for (std::size_t j = 0; j < i; ++j) {
      double dist = 0.0;
      for (std::size_t t = 0; t < 2; ++t)
        dist = std::max(dist, std::abs(out.eigenvalues[i].lambda[t] - out.eigenvalues[j].lambda[t]));
      if (dist < tol) out.multiple = true;
    }
  }
  return out;
}

bool multiple_eigenvalue_oracle(const Matrix<Complex>& a, double tol, const SolverConfig& config) {
  return evaluate_disc23(a, tol, config).multiple;
}

}  // namespace rectpencil
