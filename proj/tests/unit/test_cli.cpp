#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rectpencil/cli.hpp"
#include "rectpencil/critical.hpp"
#include "rectpencil/disc23.hpp"
#include "rectpencil/json_io.hpp"
#include "test_support.hpp"

using namespace rectpencil;
using rectpencil::testing::same_point_multiset;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Complex> complex_vector(const Json& j) {
  std::vector<Complex> out;
  for (const auto& v : j) out.push_back(scalar_from_json<Complex>(v));
  return out;
}

}  // namespace

TEST(JsonIo, RoundTripsEveryDomain) {
  Matrix<Rational> q(1, 2, Rational(0));
  q(0, 0) = Rational(-3, 4);
  q(0, 1) = 5;
  EXPECT_EQ(std::get<Matrix<Rational>>(matrix_from_json(matrix_to_json(q))), q);

  Matrix<Gaussian> g(1, 1, Gaussian());
  g(0, 0) = Gaussian(Rational(1, 2), Rational(-2));
  EXPECT_EQ(std::get<Matrix<Gaussian>>(matrix_from_json(matrix_to_json(g))), g);

  Matrix<Complex> c(1, 1, Complex(0));
  c(0, 0) = Complex(0.1, -1.0 / 3.0);
  auto parsed = Json::parse(canonical_json(matrix_to_json(c)));
  EXPECT_EQ(std::get<Matrix<Complex>>(matrix_from_json(parsed)), c);
}

TEST(JsonIo, RejectsMalformedMatrices) {
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 2, "domain": "rational", "entries": [["1"]]})")),
               UsageError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "domain": "real", "entries": [["1"]]})")),
               UsageError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "domain": "complex", "entries": [["1"]]})")),
               UsageError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "domain": "rational", "entries": [["1/0"]]})")),
               std::exception);
  EXPECT_THROW(basis_from_json(Json::parse("[]")), UsageError);
}

TEST(JsonIo, CanonicalFormIsSortedWithSeventeenDigits) {
  Json j = {{"b", 0.1}, {"a", Json::array({1, 2})}};
  EXPECT_EQ(canonical_json(j), "{\n  \"a\": [1, 2],\n  \"b\": 0.10000000000000001\n}\n");
}

TEST(Cli, EigenvaluesGolden) {
  auto r = run({"eigenvalues", "--matrix", data("a23.json"), "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(data("eigenvalues_a23.golden.json")));
}

TEST(Cli, EigenvaluesAgreeWithTheResultantRoots) {
  auto r = run({"eigenvalues", "--matrix", data("a23.json"), "--seed", "7"});
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  std::vector<std::vector<Complex>> got;
  for (const auto& e : j) got.push_back(complex_vector(e.at("lambda")));

  auto a = std::get<Matrix<Rational>>(matrix_from_json(read_json_file(data("a23.json"))));
  VarList v = {"lambda1", "lambda2"};
  auto m = PencilSpec<Rational>::diagonal(a).symbolic<Rational>(v, std::vector<Rational>(2, Rational(0)));
  QPoly d23 = sym_det(m.select_cols({1, 2}));
  QPoly res = resultant_univariate(d23, sym_det(m.select_cols({0, 2})), "lambda1");
  std::vector<Complex> coeffs;
  for (int d = res.total_degree(); d >= 0; --d)
    coeffs.push_back(scalar_cast<Complex>(res.coefficient({static_cast<unsigned>(d)})));
  std::vector<std::vector<Complex>> oracle;
  for (Complex l2 : polynomial_roots(coeffs)) {
    auto parts = coefficients_in(substitute(poly_cast<Complex>(d23), {{"lambda2", l2}}), 0);
    oracle.push_back({-parts[0].constant_term() / parts[1].constant_term(), l2});
  }
  EXPECT_TRUE(same_point_multiset(got, oracle, 1e-8));
}

TEST(Cli, ByteIdenticalAcrossRuns) {
  const std::vector<std::vector<std::string>> commands = {
      {"eigenvalues", "--matrix", data("a23.json"), "--seed", "3"},
      {"heine", "--matrix", data("heine24.json")},
      {"transversality", "--m", "2", "--n", "4", "--seed", "5"},
      {"discriminant23", "--matrix", data("a23.json")},
  };
  for (const auto& c : commands) {
    auto first = run(c);
    auto second = run(c);
    EXPECT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, second.out) << c[0];
  }
}

TEST(Cli, CriticalPolyThreeByFour) {
  auto r = run({"critical-poly", "--m", "3", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  VarList vars(j.at("variables").get<std::vector<std::string>>());
  QPoly p = parse_poly<Rational>(j.at("poly").get<std::string>(), vars);

  // D_ij = 2x2 minor of ahat on columns i, j
  auto delta = [&](int i, int k) {
    auto a = [&](int r, int c) { return QPoly::variable(vars, "a" + std::to_string(r) + "_" + std::to_string(c)); };
    return a(1, i) * a(2, k) - a(1, k) * a(2, i);
  };
  auto k = [&](int i) { return QPoly::variable(vars, "k" + std::to_string(i)); };
  QPoly expected = delta(3, 4) * k(1) * k(1) + delta(1, 4) * k(2) * k(2) + delta(1, 2) * k(3) * k(3) -
                   delta(2, 4) * k(1) * k(2) + (delta(2, 3) - delta(1, 4)) * k(1) * k(3) - delta(1, 3) * k(2) * k(3);
  EXPECT_EQ(p, expected);

  auto text = run({"critical-poly", "--m", "3", "--n", "4", "--format", "text"});
  EXPECT_EQ(text.out, j.at("poly").get<std::string>() + "\n");
}

TEST(Cli, SdsPolyMatchesCriticalPoly) {
  auto a = run({"critical-poly", "--m", "2", "--n", "4", "--ahat", data("ahat14.json")});
  auto b = run({"sds-poly", "--m", "2", "--n", "4", "--ahat", data("ahat14.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BasisCheck) {
  auto r = run({"basis-check", "--i", "3", "--d", "2"});
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("dimension"), 6);
  EXPECT_EQ(j.at("independent"), true);
}

TEST(Cli, HeineSolveAndSystems) {
  auto r = run({"heine", "--matrix", data("heine24.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("per_branch"), Json::array({3, 1}));
  std::size_t total = 0;
  for (const auto& e : j.at("eigenvalues")) {
    total += e.at("multiplicity").get<std::size_t>();
    if (e.at("branch") == 2) EXPECT_EQ(complex_vector(e.at("lambda")), (std::vector<Complex>{{2, 0}, {-5, 0}, {-0.5, 0}}));
  }
  EXPECT_EQ(total, 4u);

  auto s = run({"heine", "--matrix", data("heine24.json"), "--systems-only"});
  ASSERT_EQ(s.code, 0);
  Json sys = Json::parse(s.out);
  EXPECT_EQ(sys.at("branches")[1].at("equations"), Json::array({"lambda2 + 5", "lambda3 + 1/2"}));
}

TEST(Cli, Discriminant23) {
  auto sym = run({"discriminant23", "--symbolic", "--format", "text"});
  ASSERT_EQ(sym.code, 0) << sym.err;
  EXPECT_EQ(parse_poly<Rational>(sym.out, disc23_entry_vars()), printed_D0());

  auto unit = run({"discriminant23", "--matrix", data("d0_unit.json")});
  ASSERT_EQ(unit.code, 0);
  Json j = Json::parse(unit.out);
  EXPECT_EQ(scalar_from_json<Complex>(j.at("D0_value")), Complex(-27, 0));
  EXPECT_EQ(j.at("multiple"), false);

  auto exact = run({"discriminant23", "--matrix", data("a23.json")});
  ASSERT_EQ(exact.code, 0);
  EXPECT_TRUE(Json::parse(exact.out).contains("D0_exact"));

  EXPECT_EQ(run({"discriminant23"}).code, 2);
  EXPECT_EQ(run({"discriminant23", "--matrix", data("heine24.json")}).code, 2);
}

TEST(Cli, TransversalityAndMultiplicity) {
  auto t = run({"transversality", "--basis", data("e11_e12.json")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(Json::parse(t.out).at("verdict"), "non-transversal");

  auto m = run({"multiplicity", "--matrix", data("zero23.json"), "--at", R"(["0", "0"])"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(Json::parse(m.out).at("multiplicity"), 3);
  EXPECT_EQ(Json::parse(m.out).at("numerical"), false);

  auto f = run({"multiplicity", "--matrix", data("zero23.json"), "--at", "[[0, 0], [0, 0]]"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(Json::parse(f.out).at("multiplicity"), 3);
  EXPECT_EQ(Json::parse(f.out).at("numerical"), true);

  EXPECT_EQ(run({"multiplicity", "--matrix", data("zero23.json"), "--at", R"(["1", "0"])"}).code, 2);
}

TEST(Cli, ExitCodes) {
  auto unknown = run({"eigenvalues", "--matrix", data("a23.json"), "--bogus"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("Usage:"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"eigenvalues", "--matrix", data("missing.json")}).code, 2);
  EXPECT_EQ(run({"eigenvalues", "--matrix", data("a23.json"), "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"heine", "--matrix", data("a23.json")}).code, 2);
  EXPECT_EQ(run({"critical-poly", "--m", "4", "--n", "3"}).code, 2);
  // a degenerate pencil whose locus is a curve cannot be completed
  EXPECT_EQ(run({"eigenvalues", "--matrix", data("zero23.json"), "--basis", data("e11_e12.json")}).code, 3);
  auto help = run({"heine", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("Heine"), std::string::npos);
}
