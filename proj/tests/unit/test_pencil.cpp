#include <gtest/gtest.h>

#include <random>

#include "rectpencil/critical.hpp"
#include "rectpencil/pencil.hpp"
#include "rectpencil/transversality.hpp"
#include "test_support.hpp"

using namespace rectpencil;
using rectpencil::testing::random_integer_matrix;
using rectpencil::testing::random_rational;
using rectpencil::testing::random_rational_matrix;

namespace {

Matrix<Rational> R(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix<Rational> out(rows.size(), rows.begin()->size(), Rational(0));
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (int v : r) out(i, j++) = v;
    ++i;
  }
  return out;
}

Matrix<Rational> unit(std::size_t m, std::size_t n, std::size_t i, std::size_t j) {
  Matrix<Rational> out(m, n, Rational(0));
  out(i, j) = 1;
  return out;
}

}  // namespace

TEST(UnitDiagonal, Examples) {
  EXPECT_EQ(unit_diagonal_matrix<Rational>(2, 3, 1), R({{1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(unit_diagonal_matrix<Rational>(2, 3, 2), R({{0, 1, 0}, {0, 0, 1}}));
  EXPECT_THROW(unit_diagonal_matrix<Rational>(2, 3, 3), UsageError);
  EXPECT_THROW(unit_diagonal_matrix<Rational>(2, 3, 0), UsageError);
}

TEST(UnitDiagonal, KappaStackReproducesThe3x4Rows) {
  // rows kappa*J_s for kappa = (k1,k2,k3), s = 1,2 give [[k1,k2,k3,0],[0,k1,k2,k3]]
  VarList kv = kernel_vars(3);
  auto basis = standard_diagonal_basis<Rational>(3, 4);
  ASSERT_EQ(basis.size(), 2u);
  PolyMatrix<Rational> expected = build_T(3, 2);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t q = 0; q < 4; ++q) {
      QPoly v(kv);
      for (std::size_t p = 0; p < 3; ++p) v += QPoly::variable(kv, kv[p]) * basis[s](p, q);
      EXPECT_EQ(v, expected(s, q));
    }
}

TEST(UnitDiagonal, EveryMemberHasFullRankAndMNonzeros) {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = m; n <= 6; ++n)
      for (std::size_t s = 1; s <= n - m + 1; ++s) {
        auto j = unit_diagonal_matrix<Rational>(m, n, s);
        std::size_t nonzero = 0;
        for (const auto& v : j.data()) nonzero += sgn(v) != 0;
        EXPECT_EQ(nonzero, m);
        EXPECT_EQ(rank_exact(j), m);
      }
}

TEST(StandardBasis, Examples) {
  auto b = standard_diagonal_basis<Rational>(2, 3);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], R({{1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(b[1], R({{0, 1, 0}, {0, 0, 1}}));
  auto one = standard_diagonal_basis<Rational>(1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], R({{1}}));
}

TEST(StandardBasis, NonzeroCombinationsHaveFullRank) {
  std::mt19937_64 rng(31);
  auto b = standard_diagonal_basis<Rational>(2, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Rational c1 = random_rational(rng);
    Rational c2 = trial == 0 ? Rational(0) : random_rational(rng);
    if (sgn(c1) == 0 && sgn(c2) == 0) c1 = 1;
    EXPECT_EQ(corank(scale(b[0], c1) + scale(b[1], c2)), 0u);
  }
}

TEST(Corank, Examples) {
  EXPECT_EQ(corank(unit_diagonal_matrix<Rational>(2, 3, 1)), 0u);
  EXPECT_EQ(corank(Matrix<Rational>(2, 3, Rational(0))), 2u);
  // [[l1,l2,0],[0,l1,l2]] at the common root of its minors l1^2, l1*l2, l2^2
  VarList v = {"l1", "l2"};
  QPoly res = resultant_univariate(parse_poly<Rational>("l1^2", v), parse_poly<Rational>("l1*l2", v), "l1");
  EXPECT_TRUE(res.is_zero());  // the minors share the factor l1; l1 = 0 forces l2^2 = 0
  Matrix<Rational> at = R({{0, 0, 0}, {0, 0, 0}});
  EXPECT_GE(corank(at), 1u);
}

TEST(Corank, AtAnEigenvalueFromTheResultant) {
  std::mt19937_64 rng(32);
  VarList v = {"lambda1", "lambda2"};
  auto a = random_rational_matrix(rng, 2, 3);
  auto pencil = PencilSpec<Rational>::diagonal(a);
  auto m = pencil.symbolic<Rational>(v, std::vector<Rational>(2, Rational(0)));
  QPoly d23 = sym_det(m.select_cols({1, 2}));
  QPoly d13 = sym_det(m.select_cols({0, 2}));
  QPoly res = resultant_univariate(d23, d13, "lambda1");
  std::vector<Complex> coeffs;
  for (int d = res.total_degree(); d >= 0; --d)
    coeffs.push_back(scalar_cast<Complex>(res.coefficient({static_cast<unsigned>(d)})));
  for (Complex l2 : polynomial_roots(coeffs)) {
    auto parts = coefficients_in(substitute(poly_cast<Complex>(d13), {{"lambda2", l2}}), 0);
    Complex l1 = -parts[0].constant_term() / parts[1].constant_term();
    std::vector<Complex> lambda = {l1, l2};
    EXPECT_EQ(corank(pencil.to_complex().at(lambda)), 1u);
  }
}

TEST(Corank, ExactAndFloatAgree) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t m = 1 + trial % 4;
    std::size_t n = m + trial % 3;
    Matrix<Rational> a = random_integer_matrix(rng, m, n, 4);
    if (trial % 2 == 0 && m >= 2) {
      // force rank <= m-1 through a thin product
      a = random_integer_matrix(rng, m, m - 1, 4) * random_integer_matrix(rng, m - 1, n, 4);
    }
    EXPECT_EQ(corank(a), corank(matrix_cast<Complex>(a))) << "trial " << trial;
  }
}

TEST(MaximalMinors, Examples) {
  EXPECT_EQ(maximal_minors(R({{1, 0, 0}, {0, 1, 0}})), (std::vector<Rational>{1, 0, 0}));

  // A - lambda1 J1 - lambda2 J2 with symbolic A
  VarList v = concat_vars(ahat_vars(2, 3), VarList{"lambda1", "lambda2"});
  PolyMatrix<Rational> a(2, 3, QPoly(v));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      a(i, j) = QPoly::variable(v, "a" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  auto basis = standard_diagonal_basis<Rational>(2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      a(i, j) -= QPoly::variable(v, "lambda1") * basis[0](i, j) + QPoly::variable(v, "lambda2") * basis[1](i, j);
  auto minors = maximal_minors(a);
  ASSERT_EQ(minors.size(), 3u);
  EXPECT_EQ(minors[2], parse_poly<Rational>("(a1_2 - lambda2)*(a2_3 - lambda2) - a1_3*(a2_2 - lambda1)", v));

  auto t = maximal_minors(build_T(3, 2));
  VarList kv = kernel_vars(3);
  std::vector<QPoly> expected;
  for (const char* s : {"k1^2", "k1*k2", "k1*k3", "k2^2 - k1*k3", "k2*k3", "k3^2"})
    expected.push_back(parse_poly<Rational>(s, kv));
  EXPECT_EQ(t, expected);
}

TEST(MaximalMinors, VanishExactlyOnCorankOne) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t m = 2 + trial % 3;
    std::size_t n = m + trial % 2;
    ResolutionPoint<Rational> p{random_rational_matrix(rng, m - 1, n), {}};
    for (std::size_t i = 0; i + 1 < m; ++i) p.kernel_coeffs.push_back(random_rational(rng));
    for (const auto& d : maximal_minors(resolution_nu(p))) EXPECT_EQ(sgn(d), 0);
    Matrix<Rational> generic = random_rational_matrix(rng, m, n);
    bool all_zero = true;
    for (const auto& d : maximal_minors(generic)) all_zero = all_zero && sgn(d) == 0;
    EXPECT_EQ(all_zero, corank(generic) >= 1);
  }
}

TEST(ResolutionNu, Examples) {
  ResolutionPoint<Rational> p{R({{1, 0, 0}}), {Rational(2)}};
  Matrix<Rational> nu = resolution_nu(p);
  EXPECT_EQ(nu, R({{1, 0, 0}, {-2, 0, 0}}));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(sgn(Rational(2 * nu(0, j) + nu(1, j))), 0);
  EXPECT_THROW(resolution_nu(ResolutionPoint<Rational>{R({{1, 0, 0}}), {}}), UsageError);
}

TEST(ResolutionNu, KernelPropertyAndGenericCorankOne) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    ResolutionPoint<Rational> p{random_rational_matrix(rng, 2, 4), {random_rational(rng), random_rational(rng)}};
    Matrix<Rational> nu = resolution_nu(p);
    for (std::size_t j = 0; j < 4; ++j) {
      Rational s = p.kernel_coeffs[0] * nu(0, j) + p.kernel_coeffs[1] * nu(1, j) + nu(2, j);
      EXPECT_EQ(sgn(s), 0);
    }
    EXPECT_EQ(corank(nu), 1u);
  }
}

TEST(ResolutionNu, RightInverseOfKernelRecovery) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    ResolutionPoint<Rational> p{random_rational_matrix(rng, 2, 5), {random_rational(rng), random_rational(rng)}};
    if (rank_exact(p.ahat) < 2) continue;
    Matrix<Rational> nu = resolution_nu(p);
    // drop the last row, solve k * ahat = -last
    Matrix<Rational> at(5, 2, Rational(0));
    std::vector<Rational> rhs(5);
    for (std::size_t j = 0; j < 5; ++j) {
      for (std::size_t i = 0; i < 2; ++i) at(j, i) = nu(i, j);
      rhs[j] = -nu(2, j);
    }
    auto k = solve_exact(at, rhs);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(*k, p.kernel_coeffs);
  }
}

TEST(PencilSpecTest, ValidatesConstruction) {
  auto a = R({{1, 2, 3}, {4, 5, 6}});
  EXPECT_NO_THROW(PencilSpec<Rational>::diagonal(a));
  EXPECT_TRUE(PencilSpec<Rational>::diagonal(a).is_standard_diagonal());
  auto j1 = unit_diagonal_matrix<Rational>(2, 3, 1);
  EXPECT_THROW(PencilSpec<Rational>(a, {j1}), UsageError);
  EXPECT_THROW(PencilSpec<Rational>(a, {j1, j1}), UsageError);
  EXPECT_THROW(PencilSpec<Rational>(a, {j1, R({{1, 0}, {0, 1}})}), UsageError);
  EXPECT_THROW(PencilSpec<Rational>::diagonal(R({{1}, {2}})), UsageError);
}

TEST(PencilSpecTest, NumericAndSymbolicMembersAgree) {
  std::mt19937_64 rng(37);
  auto pencil = PencilSpec<Rational>::diagonal(random_rational_matrix(rng, 2, 4));
  VarList v = indexed_vars("t", 3);
  std::vector<Rational> shift = {random_rational(rng), random_rational(rng), random_rational(rng)};
  auto sym = pencil.symbolic<Rational>(v, shift);
  std::vector<Complex> at;
  for (const auto& s : shift) at.push_back(scalar_cast<Complex>(s));
  auto num = pencil.to_complex().at(at);
  std::vector<Rational> zero(3, Rational(0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(std::abs(num(i, j) - scalar_cast<Complex>(evaluate_at<Rational>(sym(i, j), std::span<const Rational>(zero)))),
                  0.0, 1e-14);
}

TEST(Transversality, StandardDiagonal2x3IsTransversal) {
  auto cert = transversality_check(standard_diagonal_basis<Rational>(2, 3));
  EXPECT_EQ(cert.verdict, Transversality::transversal);
  EXPECT_EQ(cert.method, "exact-binary-gcd");
}

TEST(Transversality, StandardDiagonalIsTransversalForTwoParameters) {
  for (std::size_t m = 1; m <= 5; ++m)
    EXPECT_EQ(transversality_check(standard_diagonal_basis<Rational>(m, m + 1)).verdict, Transversality::transversal);
}

TEST(Transversality, DependentBasisIsUsageError) {
  auto j1 = unit_diagonal_matrix<Rational>(2, 3, 1);
  EXPECT_THROW(transversality_check(std::vector<Matrix<Rational>>{j1, j1}), UsageError);
}

TEST(Transversality, SingleRowSupportIsNonTransversal) {
  auto cert = transversality_check(std::vector<Matrix<Rational>>{unit(2, 3, 0, 0), unit(2, 3, 0, 1)});
  EXPECT_EQ(cert.verdict, Transversality::non_transversal);
  ASSERT_TRUE(cert.witness.has_value());
}

TEST(Transversality, CommonFactorIsNonTransversal) {
  // c1*L1 + c2*L2 = [[c1, c2, 0], [0, c1, c1]]: every minor vanishes at c1 = 0
  std::vector<Matrix<Rational>> basis = {R({{1, 0, 0}, {0, 1, 1}}), R({{0, 1, 0}, {0, 0, 0}})};
  auto cert = transversality_check(basis);
  EXPECT_EQ(cert.verdict, Transversality::non_transversal);
  ASSERT_TRUE(cert.witness.has_value());
  Matrix<Complex> member = scale(matrix_cast<Complex>(basis[0]), (*cert.witness)[0]) +
                           scale(matrix_cast<Complex>(basis[1]), (*cert.witness)[1]);
  EXPECT_EQ(corank(member), 1u);
}

TEST(Transversality, GaussianTwoParameterIsExact) {
  auto basis = standard_diagonal_basis<Gaussian>(2, 3);
  basis[1](0, 1) = Gaussian(Rational(0), Rational(1));
  EXPECT_EQ(transversality_check(basis).method, "exact-binary-gcd");
}

TEST(Transversality, OneParameterUsesTheDeterminant) {
  EXPECT_EQ(transversality_check(standard_diagonal_basis<Rational>(3, 3)).verdict, Transversality::transversal);
  auto cert = transversality_check(std::vector<Matrix<Rational>>{R({{1, 1}, {1, 1}})});
  EXPECT_EQ(cert.verdict, Transversality::non_transversal);
}

TEST(Transversality, ThreeParametersNeverClaimTransversal) {
  auto cert = transversality_check(standard_diagonal_basis<Rational>(2, 4), 5);
  EXPECT_EQ(cert.verdict, Transversality::inconclusive);
  EXPECT_EQ(cert.method, "probabilistic");
  EXPECT_EQ(cert.trials, kTransversalityTrials);

  std::vector<Matrix<Rational>> degenerate = {unit(2, 4, 0, 0), unit(2, 4, 0, 1), unit(2, 4, 0, 2)};
  EXPECT_EQ(transversality_check(degenerate, 5).verdict, Transversality::non_transversal);
}

TEST(Transversality, ProbabilisticFindsIsolatedDegenerateMember) {
  // span(J1, J2, E14) of 2x4: the member E14 has corank 1
  auto basis = standard_diagonal_basis<Rational>(2, 4);
  basis[2] = unit(2, 4, 0, 3);
  auto cert = transversality_check(basis, 9);
  EXPECT_EQ(cert.verdict, Transversality::non_transversal);
  ASSERT_TRUE(cert.witness.has_value());
}

TEST(Transversality, ComplexTwoParameterIsProbabilisticAndDeterministic) {
  auto basis = standard_diagonal_basis<Complex>(2, 3);
  auto a = transversality_check(basis, 3);
  auto b = transversality_check(basis, 3);
  EXPECT_EQ(a.method, "probabilistic");
  EXPECT_EQ(a.verdict, Transversality::inconclusive);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.trials, b.trials);
  std::vector<Matrix<Complex>> degenerate = {matrix_cast<Complex>(unit(2, 3, 0, 0)),
                                             matrix_cast<Complex>(unit(2, 3, 0, 1))};
  auto c = transversality_check(degenerate, 3);
  EXPECT_EQ(c.verdict, Transversality::non_transversal);
}
