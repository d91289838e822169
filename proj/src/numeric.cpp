#include "rectpencil/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace rectpencil {

CMatrix to_eigen(const Matrix<Complex>& m) {
  CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

Matrix<Complex> from_eigen(const CMatrix& m) {
  Matrix<Complex> out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

std::size_t numeric_rank(const CMatrix& m, double rel_tol) {
  Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

Complex det_numeric(const CMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
  if (m.rows() == 0) return {1.0, 0.0};
  return m.partialPivLu().determinant();
}

CVector left_null_vector(const CMatrix& m) {
  // v^T m = 0  <=>  m^T v = 0
  CMatrix mt = m.transpose();
  Eigen::JacobiSVD<CMatrix> svd(mt, Eigen::ComputeFullV);
  return svd.matrixV().col(svd.matrixV().cols() - 1);
}

std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
  std::size_t lead = 0;
  while (lead < c.size() && c[lead] == Complex(0.0, 0.0)) ++lead;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
  if (c.size() <= 1) return {};
  const auto d = static_cast<Eigen::Index>(c.size() - 1);
  CMatrix comp = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) comp(0, j) = -c[static_cast<std::size_t>(j + 1)] / c[0];
  for (Eigen::Index i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  std::vector<Complex> roots(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return roots;
}

Complex complex_gaussian(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  double re = nd(rng);
  double im = nd(rng);
  return {re, im};
}

CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  const auto k = static_cast<Eigen::Index>(n);
  CMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = complex_gaussian(rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(k, k);
}

}  // namespace rectpencil
