#include <gtest/gtest.h>

#include <random>

#include "rectpencil/polycore.hpp"
#include "test_support.hpp"

using namespace rectpencil;
using rectpencil::testing::random_qpoly;
using rectpencil::testing::random_rational;

namespace {

QPoly P(const std::string& text, const VarList& vars) { return parse_poly<Rational>(text, vars); }

const VarList kK = {"k1", "k2", "k3"};

}  // namespace

TEST(PolyMul, MonomialProduct) {
  EXPECT_EQ(to_string(P("k1", kK) * P("k2", kK)), "k1*k2");
}

TEST(PolyMul, DifferenceOfSquares) {
  EXPECT_EQ(to_string(P("k1 + k2", kK) * P("k1 - k2", kK)), "k1^2 - k2^2");
}

TEST(PolyMul, Minor23CrossTerm) {
  VarList v = {"a1_2", "a2_3", "lambda2"};
  QPoly lhs = P("a1_2 + lambda2", v) * P("a2_3 + lambda2", v);
  EXPECT_EQ(lhs, P("a1_2*a2_3 + (a1_2 + a2_3)*lambda2 + lambda2^2", v));
  EXPECT_LE(lhs.size(), 4u);
}

TEST(PolyMul, MismatchedVariablesIsUsageError) {
  VarList other = {"x"};
  EXPECT_THROW(P("k1", kK) * P("x", other), UsageError);
}

TEST(PolyCore, ZeroDegreeSentinel) {
  QPoly z(kK);
  EXPECT_EQ(z.total_degree(), QPoly::kZeroDegree);
  EXPECT_NE(z.total_degree(), 0);
  EXPECT_EQ(QPoly(kK, Rational(5)).total_degree(), 0);
  EXPECT_EQ(to_string(z), "0");
}

TEST(PolyEval, Examples) {
  EXPECT_EQ(evaluate(P("k1^2", kK), {{"k1", 0}, {"k2", 3}, {"k3", 1}}), 0);
  EXPECT_EQ(evaluate(P("k2^2 - k1*k3", kK), {{"k1", 1}, {"k2", 1}, {"k3", 1}}), 0);
  QPoly partial = substitute(P("k1*k2 + k3", kK), {{"k2", Rational(2)}});
  EXPECT_EQ(partial.variables(), VarList({"k1", "k3"}));
  EXPECT_EQ(to_string(partial), "2*k1 + k3");
}

TEST(PolyEval, UnknownSymbolIsUsageError) {
  EXPECT_THROW(substitute(P("k1", kK), {{"zz", Rational(1)}}), UsageError);
  EXPECT_THROW(evaluate(P("k1", kK), {{"k1", Rational(1)}}), UsageError);  // incomplete assignment
}

TEST(SymDet, Examples) {
  for (DetMethod method : {DetMethod::bareiss, DetMethod::cofactor}) {
    PolyMatrix<Rational> upper = {{P("k1", kK), P("k2", kK)}, {QPoly(kK), P("k1", kK)}};
    EXPECT_EQ(sym_det(upper, method), P("k1^2", kK));

    VarList v = {"a1", "a2", "a3", "k1", "k2"};
    PolyMatrix<Rational> m = {{P("a1", v), P("a2", v), P("a3", v)},
                              {P("k1", v), P("k2", v), QPoly(v)},
                              {QPoly(v), P("k1", v), P("k2", v)}};
    EXPECT_EQ(sym_det(m, method), P("a1*k2^2 - a2*k1*k2 + a3*k1^2", v));

    PolyMatrix<Rational> t32cols23 = {{P("k2", kK), P("k3", kK)}, {P("k1", kK), P("k2", kK)}};
    EXPECT_EQ(sym_det(t32cols23, method), P("k2^2 - k1*k3", kK));
  }
}

TEST(SymDet, NonSquareIsUsageError) {
  PolyMatrix<Rational> m(2, 3, QPoly(kK));
  EXPECT_THROW(sym_det(m), UsageError);
}

TEST(SymDet, BareissMatchesCofactorOnRandomLinearEntries) {
  std::mt19937_64 rng(11);
  VarList v = {"x", "y", "z"};
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      PolyMatrix<Rational> m(n, n, QPoly(v));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_qpoly(rng, v, 1, 3);
      EXPECT_EQ(sym_det(m, DetMethod::bareiss), sym_det(m, DetMethod::cofactor)) << "n=" << n;
    }
  }
}

TEST(SymDet, MultiplicativeOnSpecializations) {
  std::mt19937_64 rng(12);
  VarList v = {"x", "y"};
  for (int trial = 0; trial < 5; ++trial) {
    PolyMatrix<Rational> a(3, 3, QPoly(v));
    PolyMatrix<Rational> b(3, 3, QPoly(v));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a(i, j) = random_qpoly(rng, v, 1, 2);
        b(i, j) = random_qpoly(rng, v, 1, 2);
      }
    std::map<std::string, Rational> pt = {{"x", random_rational(rng)}, {"y", random_rational(rng)}};
    Matrix<Rational> an(3, 3), bn(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        an(i, j) = evaluate(a(i, j), pt);
        bn(i, j) = evaluate(b(i, j), pt);
      }
    EXPECT_EQ(det_bareiss(an * bn), Rational(det_bareiss(an) * det_bareiss(bn)));
    EXPECT_EQ(evaluate(sym_det(a * b), pt), Rational(evaluate(sym_det(a), pt) * evaluate(sym_det(b), pt)));
  }
}

TEST(PartialDerivative, Examples) {
  EXPECT_EQ(partial_derivative(P("k1^2", kK), "k1"), P("2*k1", kK));
  VarList v = {"a1", "a2", "a3", "k1", "k2"};
  EXPECT_EQ(partial_derivative(P("a3*k1^2 - a2*k1*k2 + a1*k2^2", v), "k2"), P("-a2*k1 + 2*a1*k2", v));
  EXPECT_THROW(partial_derivative(P("k1", kK), "q"), UsageError);
}

TEST(Resultant, Examples) {
  VarList v = {"lambda", "c", "d"};
  EXPECT_EQ(resultant_univariate(P("lambda - c", v), P("lambda - d", v), "lambda"),
            parse_poly<Rational>("c - d", {"c", "d"}));
  VarList w = {"lambda"};
  QPoly r = resultant_univariate(P("lambda^2", w), P("lambda - 1", w), "lambda");
  EXPECT_TRUE(r.is_constant());
  EXPECT_EQ(r.constant_term(), 1);
  EXPECT_THROW(resultant_univariate(P("c", v), P("lambda", v), "lambda"), UsageError);
}

TEST(Resultant, VanishesExactlyOnCommonRoots) {
  // p = (lambda - x)(lambda - r1), q = (lambda - y)(lambda - r2)
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> small(-2, 2);
  VarList v = {"lambda", "x", "y"};
  for (int trial = 0; trial < 40; ++trial) {
    Rational r1 = small(rng);
    Rational r2 = small(rng);
    QPoly p = P("lambda - x", v) * (P("lambda", v) - QPoly(v, r1));
    QPoly q = P("lambda - y", v) * (P("lambda", v) - QPoly(v, r2));
    QPoly res = resultant_univariate(p, q, "lambda");
    Rational x = small(rng);
    Rational y = small(rng);
    bool common = x == y || x == r2 || r1 == y || r1 == r2;
    bool vanishes = sgn(evaluate(res, {{"x", x}, {"y", y}})) == 0;
    EXPECT_EQ(vanishes, common) << "x=" << x << " y=" << y << " r1=" << r1 << " r2=" << r2;
  }
}

TEST(Discriminant, Quadratic) {
  VarList v = {"x", "b", "c"};
  EXPECT_EQ(discriminant(P("x^2 + b*x + c", v), "x"), parse_poly<Rational>("b^2 - 4*c", {"b", "c"}));
}

TEST(MonomialFactor, Examples) {
  auto f = extract_monomial_factor(P("k1^3 + k1^2*k2", kK), "k1");
  EXPECT_EQ(f.exponent, 2u);
  EXPECT_EQ(f.quotient, P("k1 + k2", kK));
  auto g = extract_monomial_factor(P("k1 + k2", kK), "k1");
  EXPECT_EQ(g.exponent, 0u);
  EXPECT_EQ(g.quotient, P("k1 + k2", kK));
  EXPECT_THROW(extract_monomial_factor(QPoly(kK), "k1"), UsageError);
}

TEST(ExactDivide, RecoversFactorAndRejectsRemainder) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    QPoly a = random_qpoly(rng, kK, 3, 4);
    QPoly b = random_qpoly(rng, kK, 2, 3);
    if (b.is_zero()) continue;
    EXPECT_EQ(exact_divide(a * b, b), a);
  }
  EXPECT_FALSE(try_exact_divide(P("k1^2 + 1", kK), P("k1", kK)).has_value());
}

TEST(PolyProperties, RingAxioms) {
  std::mt19937_64 rng(15);
  VarList v = {"w", "x", "y", "z"};
  for (int trial = 0; trial < 25; ++trial) {
    QPoly p = random_qpoly(rng, v, 4, 5);
    QPoly q = random_qpoly(rng, v, 4, 5);
    QPoly r = random_qpoly(rng, v, 4, 5);
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST(PolyText, CanonicalFormatting) {
  VarList v = {"k1", "k2"};
  EXPECT_EQ(to_string(P("-1/2*k2^3 + 3*k1^2*k2", v)), "3*k1^2*k2 - 1/2*k2^3");
  EXPECT_EQ(to_string(P("-k1 + 2", v)), "-k1 + 2");
  GPoly g = parse_poly<Gaussian>("(1/2+3*i)*k1 - i*k2 + 2", v);
  EXPECT_EQ(to_string(g), "(1/2+3*i)*k1 - i*k2 + 2");
  EXPECT_THROW(parse_poly<Rational>("i*k1", v), UsageError);
  EXPECT_THROW(parse_poly<Rational>("k1 +", v), UsageError);
  EXPECT_THROW(parse_poly<Rational>("0.5*k1", v), UsageError);
}

TEST(PolyText, RoundTripIsIdentityOnCanonicalForms) {
  std::mt19937_64 rng(16);
  VarList v = {"a1_1", "k1", "k2"};
  for (int trial = 0; trial < 50; ++trial) {
    QPoly p = random_qpoly(rng, v, 4, 6);
    std::string text = to_string(p);
    QPoly back = parse_poly<Rational>(text, v);
    EXPECT_EQ(back, p);
    EXPECT_EQ(to_string(back), text);

    GPoly g = map_coefficients<Gaussian>(p, [&](const Rational& c) { return Gaussian(c, random_rational(rng)); });
    EXPECT_EQ(parse_poly<Gaussian>(to_string(g), v), g);

    CPoly c = map_coefficients<Complex>(p, [&](const Rational& q) { return Complex(q.get_d(), -0.25 * q.get_d()); });
    EXPECT_EQ(parse_poly<Complex>(to_string(c), v), c);
  }
}

TEST(PolyCompare, ComplexToleranceScalesWithMagnitude) {
  VarList v = {"x"};
  CPoly a = parse_poly<Complex>("1000*x + 1", v);
  CPoly b = parse_poly<Complex>("1000.0000000001*x + 1", v);
  EXPECT_TRUE(approx_equal(a, b));
  EXPECT_FALSE(approx_equal(a, parse_poly<Complex>("1000.001*x + 1", v)));
}
