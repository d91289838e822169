#pragma once

// Floating-point linear algebra in the complex domain, backed by Eigen.

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "rectpencil/matrix.hpp"

namespace rectpencil {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

CMatrix to_eigen(const Matrix<Complex>& m);
Matrix<Complex> from_eigen(const CMatrix& m);

template <class T>
CMatrix to_eigen_any(const Matrix<T>& m) {
  return to_eigen(matrix_cast<Complex>(m));
}

/// Singular values, largest first.
Eigen::VectorXd singular_values(const CMatrix& m);

/// Numerical rank: singular values above rel_tol * sigma_max.
std::size_t numeric_rank(const CMatrix& m, double rel_tol = 1e-8);

Complex det_numeric(const CMatrix& m);

/// v with v^T * m = 0 (left null direction, no conjugation), unit 2-norm.
CVector left_null_vector(const CMatrix& m);

/// Roots of c[0] x^d + ... + c[d] by companion-matrix eigenvalues.
/// Leading zero coefficients are stripped.
std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs_high_first);

/// Haar-ish random unitary (QR of a complex Gaussian matrix).
CMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

Complex complex_gaussian(std::mt19937_64& rng, double scale = 1.0);

}  // namespace rectpencil
