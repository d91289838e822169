#pragma once

// The 2 x 3 discriminant for the standard diagonal subspace. Members of the
// pencil are written A - lambda1 J1 - lambda2 J2. An input is a 2 x 3 matrix
// of polynomials over some entry variables, either the generic entries
// a1_1..a2_3 or constants. Every lambda polynomial lives over
// (lambda1, lambda2, entry variables...).

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectpencil/locus.hpp"

namespace rectpencil {

using Disc23Input = PolyMatrix<Rational>;

/// a1_1, a1_2, a1_3, a2_1, a2_2, a2_3.
VarList disc23_entry_vars();

/// The generic matrix whose entries are the variables a1_1..a2_3.
Disc23Input symbolic_disc23();

/// A numeric matrix as constant polynomials.
Disc23Input disc23_input(const Matrix<Rational>& a);

struct EigenEquations {
  QPoly minor23;  // (a12 - l2)(a23 - l2) - a13 (a22 - l1)
  QPoly minor13;  // (a11 - l1)(a23 - l2) - a13 a21
};

EigenEquations eigen_equations(const Disc23Input& a);

/// The critical equation, transcribed term by term:
/// a13^2 a11 - a13^2 l1 + a23 a13 a12 - 3 a23 a13 l2 + a13 a23^2
///   - l2 a13 a12 + 2 a13 l2^2.
QPoly critical_equation(const Disc23Input& a);

/// Kernel chart k1 / k2 = numerator / denominator along the eigenvalue
/// equations: k1 a13 + k2 (a23 - l2) = 0 from the third column.
struct KappaChart {
  QPoly numerator;    // l2 - a23
  QPoly denominator;  // a13
};

KappaChart kappa_chart(const Disc23Input& a);

/// Column monomials of the elimination matrix in (lambda1, lambda2):
/// 1, l1, l2, l1 l2, l2^2, l1 l2^2, l2^3, l2^4.
const std::array<Exponent, 8>& elimination_columns();

/// The 8 x 8 matrix as printed, over the entry variables of `a`. Rows:
/// minor23 * {1, l2, l2^2}, minor13 * {1, l2}, critical * {1, l2, l2^2}.
/// delta = a13^2 a11 + a23 a13 a12 + a13 a23^2, D23 = a12 a23 - a13 a22,
/// D13 = a11 a23 - a21 a13, sigma = -a13 a12 - 3 a13 a23.
PolyMatrix<Rational> elimination_matrix(const Disc23Input& a);

/// The same rows rebuilt by multiplying the equations out and reading
/// coefficients in elimination_columns().
PolyMatrix<Rational> elimination_matrix_from_equations(const Disc23Input& a);

/// D = det of the elimination matrix.
QPoly elimination_determinant(const Disc23Input& a);

/// D for the generic matrix, computed once.
const QPoly& symbolic_elimination_determinant();

/// The irreducible quartic D0 as printed (22 terms, over disc23_entry_vars()).
const QPoly& printed_D0();

/// W = 16 (3 a12 a21 - 3 a21 a23 - 2 a11 a22 + a11^2 + a22^2)^3.
const QPoly& printed_W();

/// D = constant * variable^exponent * quotient.
struct DFactorization {
  std::string variable;
  unsigned exponent = 0;
  QPoly quotient;
  std::optional<Rational> constant;  // quotient = constant * printed_D0(), if proportional
};

DFactorization factor_elimination_determinant(const QPoly& d, std::string_view variable);

/// Verifies D = -a1_3^6 * printed D0 on the generic matrix and returns D0.
/// Any other exponent, constant or quotient raises IdentityViolation.
const QPoly& discriminant_D0();

struct WComparison {
  QPoly discriminant;                // disc_{a1_3}(D0)
  std::optional<Rational> constant;  // discriminant = constant * W
};

/// disc(p) = (-1)^(d(d-1)/2) res(p, p') / lc(p) in a1_3 against W.
WComparison compare_discriminant_with_W();

/// A - lambda1 J1 - lambda2 J2.
PencilSpec<Complex> disc23_pencil(const Matrix<Complex>& a);

struct Disc23Evaluation {
  Complex d0;
  double d0_scale = 0.0;  // max(1, sum of |terms| of D0 at a)
  std::vector<Eigenvalue> eigenvalues;  // in the lambda of A - lambda J
  bool multiple = false;
};

/// D0 at a with its term-magnitude scale.
std::pair<Complex, double> evaluate_D0(const Matrix<Complex>& a);

/// Solves the locus of A - lambda J and reports whether two of the three
/// eigenvalues coincide: some point has multiplicity >= 2 or two points
/// lie within tol in max norm.
Disc23Evaluation evaluate_disc23(const Matrix<Complex>& a, double tol = 1e-6, const SolverConfig& config = {});

bool multiple_eigenvalue_oracle(const Matrix<Complex>& a, double tol = 1e-6, const SolverConfig& config = {});

}  // namespace rectpencil
