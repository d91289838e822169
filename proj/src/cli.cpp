#include "rectpencil/cli.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "rectpencil/critical.hpp"
#include "rectpencil/disc23.hpp"
#include "rectpencil/heine.hpp"
#include "rectpencil/json_io.hpp"
#include "rectpencil/transversality.hpp"

namespace rectpencil {

namespace {

struct Common {
  std::string format = "json";
  std::uint64_t seed = 0;
  double tol = 1e-8;
};

/// A command's result: its JSON document and, for --format text, the text.
struct Output {
  Json json;
  std::string text;  // empty: render the JSON generically
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for randomized starts and trials")->capture_default_str();
  cmd->add_option("--tol", c.tol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
}

SolverConfig solver_config(const Common& c) {
  SolverConfig cfg;
  cfg.tol = c.tol;
  cfg.seed = c.seed;
  return cfg;
}

// Domains are ordered rational < gaussian < complex; a value can be lifted
// to any domain at or above its own.
template <class T>
struct Tag {
  using type = T;
};

template <class To, class From>
Matrix<To> lift_matrix(const Matrix<From>& a) {
  if constexpr (std::is_same_v<To, Rational> && !std::is_same_v<From, Rational>) {
    throw UsageError("cannot lower a matrix to the rational domain");
  } else if constexpr (std::is_same_v<To, Gaussian> && std::is_same_v<From, Complex>) {
    throw UsageError("cannot lower a complex matrix to the Gaussian domain");
  } else {
    return matrix_cast<To>(a);
  }
}

template <class To>
Matrix<To> lift(const AnyMatrix& a) {
  return std::visit([](const auto& m) { return lift_matrix<To>(m); }, a);
}

template <class To>
std::vector<Matrix<To>> lift(const AnyBasis& b) {
  return std::visit(
      [](const auto& list) {
        std::vector<Matrix<To>> out;
        for (const auto& m : list) out.push_back(lift_matrix<To>(m));
        return out;
      },
      b);
}

Domain domain_of(const AnyMatrix& a) { return static_cast<Domain>(a.index()); }
Domain domain_of(const AnyBasis& b) { return static_cast<Domain>(b.index()); }

template <class F>
auto with_domain(Domain d, F&& f) {
  switch (d) {
    case Domain::rational:
      return f(Tag<Rational>{});
    case Domain::gaussian:
      return f(Tag<Gaussian>{});
    case Domain::complex:
      break;
  }
  return f(Tag<Complex>{});
}

/// Reads `--basis`: "diagonal" or a basis file.
std::optional<AnyBasis> read_basis(const std::string& spec) {
  if (spec == "diagonal") return std::nullopt;
  return basis_from_json(read_json_file(spec));
}

template <class T>
std::vector<Matrix<T>> basis_or_diagonal(const std::optional<AnyBasis>& b, std::size_t m, std::size_t n) {
  if (!b) return standard_diagonal_basis<T>(m, n);
  return lift<T>(*b);
}

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

std::string complex_text(const std::vector<Complex>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + ScalarTraits<Complex>::to_string(v[i]);
  return out + ")";
}

Json multiplicity_json(const std::optional<std::size_t>& m) { return m ? Json(*m) : Json("unknown"); }

Json eigenvalue_json(const Eigenvalue& e) {
  return {{"lambda", complex_list(e.lambda)},
          {"kappa", complex_list(e.kappa)},
          {"residual", e.residual},
          {"multiplicity", multiplicity_json(e.multiplicity)},
          {"flags", e.flags}};
}

Json eigenvalue_list(const std::vector<Eigenvalue>& evs) {
  Json out = Json::array();
  for (const auto& e : evs) out.push_back(eigenvalue_json(e));
  return out;
}

template <class C>
Json poly_list(const std::vector<MultiPoly<C>>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

/// key: value lines in canonical key order; nested values as compact JSON.
std::string generic_text(const Json& j) {
  if (!j.is_object()) return canonical_json(j);
  std::string out;
  for (const auto& [key, value] : j.items())
    out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  return out;
}

// ---- subcommands -------------------------------------------------------

struct EigenvaluesArgs {
  std::string matrix;
  std::string basis = "diagonal";
};

Output cmd_eigenvalues(const EigenvaluesArgs& a, const Common& c) {
  AnyMatrix mat = matrix_from_json(read_json_file(a.matrix));
  auto basis = read_basis(a.basis);
  Matrix<Complex> base = lift<Complex>(mat);
  PencilSpec<Complex> pencil(base, basis_or_diagonal<Complex>(basis, base.rows(), base.cols()));
  auto evs = solve_eigenvalue_locus(pencil, solver_config(c));
  Output out{eigenvalue_list(evs), {}};
  for (const auto& e : evs) {
    out.text += "lambda = " + complex_text(e.lambda) + "  multiplicity = " +
                multiplicity_json(e.multiplicity).dump() + "  residual = " + format_double(e.residual) + "\n";
  }
  return out;
}

struct HeineArgs {
  std::string matrix;
  bool systems_only = false;
};

Output cmd_heine(const HeineArgs& a, const Common& c) {
  AnyMatrix mat = matrix_from_json(read_json_file(a.matrix));
  return std::visit(
      [&](const auto& m) -> Output {
        using T = typename std::decay_t<decltype(m)>::value_type;
        if (a.systems_only) {
          Json branches = Json::array();
          std::string text;
          for (const auto& s : build_branch_systems(m)) {
            Json kernel = Json::array();
            for (const auto& k : s.kernel)
              kernel.push_back({{"numerator", to_string(k.numerator)}, {"denominator", scalar_to_json(k.denominator)}});
            branches.push_back({{"branch", s.branch},
                                {"lambda1", scalar_to_json(s.lambda1)},
                                {"variables", s.variables.names()},
                                {"equations", poly_list<T>(s.equations)},
                                {"kernel", std::move(kernel)},
                                {"expected", s.expected}});
            text += "branch " + std::to_string(s.branch) + " (expected " + std::to_string(s.expected) + "):\n";
            for (const auto& e : s.equations) text += "  " + to_string(e) + " = 0\n";
          }
          return {Json{{"branches", std::move(branches)}}, text};
        }
        auto evs = heine_solve(m, solver_config(c));
        Json list = Json::array();
        std::string text;
        for (const auto& e : evs) {
          Json j = eigenvalue_json(e.value);
          j["branch"] = e.branch;
          list.push_back(std::move(j));
          text += "branch " + std::to_string(e.branch) + ": lambda = " + complex_text(e.value.lambda) +
                  "  multiplicity = " + multiplicity_json(e.value.multiplicity).dump() + "\n";
        }
        return {Json{{"eigenvalues", std::move(list)}, {"per_branch", heine_count(m.rows(), m.cols()).per_branch}},
                text};
      },
      mat);
}

struct PolyArgs {
  std::size_t m = 0;
  std::size_t n = 0;
  std::string ahat;
  std::string basis = "diagonal";
};

template <class C>
Output poly_output(const CriticalPolynomial<C>& cp) {
  std::string text = to_string(cp.poly);
  return {Json{{"m", cp.m},
               {"n", cp.n},
               {"variables", cp.poly.variables().names()},
               {"poly", text}},
          text + "\n"};
}

void check_shape(const PolyArgs& a) {
  if (a.m < 1 || a.m > a.n) throw UsageError("need 1 <= m <= n");
}

/// --ahat file (m-1) x n, or the symbolic matrix a{i}_{j} when absent.
template <class T>
PolyMatrix<T> ahat_matrix(const PolyArgs& a, const std::optional<AnyMatrix>& file) {
  if (!file) {
    PolyMatrix<Rational> s = symbolic_ahat(a.m - 1, a.n);
    PolyMatrix<T> out(s.rows(), s.cols(), MultiPoly<T>(ahat_vars(a.m - 1, a.n)));
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) out(i, j) = poly_cast<T>(s(i, j));
    return out;
  }
  Matrix<T> m = lift<T>(*file);
  if (m.rows() != a.m - 1 || m.cols() != a.n)
    throw UsageError("--ahat must be (m-1) x n = " + std::to_string(a.m - 1) + "x" + std::to_string(a.n));
  return to_poly_matrix(m, VarList());
}

std::optional<AnyMatrix> read_ahat(const PolyArgs& a) {
  if (a.ahat.empty()) return std::nullopt;
  return matrix_from_json(read_json_file(a.ahat));
}

Output cmd_critical_poly(const PolyArgs& a) {
  check_shape(a);
  auto file = read_ahat(a);
  auto basis = read_basis(a.basis);
  Domain d = std::max(file ? domain_of(*file) : Domain::rational, basis ? domain_of(*basis) : Domain::rational);
  return with_domain(d, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return poly_output(critical_det_poly(ahat_matrix<T>(a, file), basis_or_diagonal<T>(basis, a.m, a.n)));
  });
}

Output cmd_sds_poly(const PolyArgs& a) {
  check_shape(a);
  auto file = read_ahat(a);
  return with_domain(file ? domain_of(*file) : Domain::rational, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return poly_output(sds_poly(ahat_matrix<T>(a, file), a.m, a.n));
  });
}

struct BasisCheckArgs {
  std::size_t i = 1;
  std::size_t d = 1;
};

Output cmd_basis_check(const BasisCheckArgs& a) {
  if (a.i < 1 || a.d < 1) throw UsageError("basis-check: need i >= 1 and d >= 1");
  MinorBasis basis = minor_basis(a.i, a.d);
  Rational det = det_bareiss(basis_change_matrix(a.i, a.d));
  std::size_t dim = binomial(static_cast<std::int64_t>(a.i + a.d - 1), static_cast<std::int64_t>(a.d));
  bool independent = sgn(det) != 0 && basis.polys.size() == dim;
  Json j = {{"i", a.i}, {"d", a.d}, {"dimension", dim}, {"independent", independent},
            {"determinant", rational_to_string(det)}};
  return {j, {}};
}

struct DiscArgs {
  std::string matrix;
  bool symbolic = false;
};

Output cmd_discriminant23(const DiscArgs& a, const Common& c) {
  if (a.symbolic == !a.matrix.empty()) throw UsageError("discriminant23: give exactly one of --matrix or --symbolic");
  if (a.symbolic) {
    const QPoly& d0 = discriminant_D0();
    auto factor = factor_elimination_determinant(symbolic_elimination_determinant(), "a1_3");
    auto w = compare_discriminant_with_W();
    Json j = {{"D0", to_string(d0)},
              {"D_factor", {{"variable", factor.variable},
                            {"exponent", factor.exponent},
                            {"constant", rational_to_string(*factor.constant)}}},
              {"W", to_string(printed_W())},
              {"W_constant", w.constant ? Json(rational_to_string(*w.constant)) : Json(nullptr)}};
    return {j, to_string(d0) + "\n"};
  }
  AnyMatrix mat = matrix_from_json(read_json_file(a.matrix));
  Matrix<Complex> cm = lift<Complex>(mat);
  auto eval = evaluate_disc23(cm, 1e-6, solver_config(c));
  Json j = {{"D0_value", scalar_to_json(eval.d0)},
            {"D0_scale", eval.d0_scale},
            {"eigenvalues", eigenvalue_list(eval.eigenvalues)},
            {"multiple", eval.multiple}};
  if (const auto* q = std::get_if<Matrix<Rational>>(&mat)) {
    std::map<std::string, Rational> at;
    VarList v = disc23_entry_vars();
    for (std::size_t t = 0; t < 6; ++t) at[v[t]] = (*q)(t / 3, t % 3);
    j["D0_exact"] = rational_to_string(evaluate(printed_D0(), at));
  }
  return {j, {}};
}

struct TransArgs {
  std::string basis = "diagonal";
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t trials = kTransversalityTrials;
};

Output cmd_transversality(const TransArgs& a, const Common& c) {
  auto basis = read_basis(a.basis);
  if (!basis && (a.m < 1 || a.m > a.n)) throw UsageError("transversality: --basis diagonal needs 1 <= m <= n");
  auto cert = with_domain(basis ? domain_of(*basis) : Domain::rational, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return transversality_check(basis_or_diagonal<T>(basis, a.m, a.n), c.seed, a.trials);
  });
  Json j = {{"verdict", std::string(transversality_name(cert.verdict))},
            {"method", cert.method},
            {"witness", cert.witness ? complex_list(*cert.witness) : Json(nullptr)},
            {"trials", cert.trials}};
  return {j, {}};
}

struct MultArgs {
  std::string matrix;
  std::string basis = "diagonal";
  std::string at;
  std::size_t cap = 8;
};

Output cmd_multiplicity(const MultArgs& a, const Common& c) {
  AnyMatrix mat = matrix_from_json(read_json_file(a.matrix));
  auto basis = read_basis(a.basis);
  Json at;
  try {
    at = Json::parse(a.at);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("--at is not valid JSON: ") + e.what());
  }
  if (!at.is_array()) throw UsageError("--at must be a JSON array of parameter values");
  // exact arithmetic when the point is given as exact strings/objects
  bool exact_point = true;
  for (const auto& v : at) exact_point = exact_point && !v.is_array();
  Domain d = std::max(domain_of(mat), basis ? domain_of(*basis) : Domain::rational);
  if (!exact_point) d = Domain::complex;
  if (exact_point && d == Domain::rational)
    for (const auto& v : at) d = v.is_object() ? Domain::gaussian : d;
  Multiplicity mult = with_domain(d, [&](auto tag) {
    using T = typename decltype(tag)::type;
    Matrix<T> base = lift<T>(mat);
    PencilSpec<T> pencil(base, basis_or_diagonal<T>(basis, base.rows(), base.cols()));
    std::vector<T> point;
    for (const auto& v : at) {
      if constexpr (std::is_same_v<T, Gaussian>) {
        point.push_back(v.is_object() ? scalar_from_json<Gaussian>(v) : Gaussian(scalar_from_json<Rational>(v)));
      } else {
        point.push_back(scalar_from_json<T>(v));
      }
    }
    if constexpr (ScalarTraits<T>::exact) {
      return local_multiplicity(pencil, std::span<const T>(point), a.cap);
    } else {
      return local_multiplicity(pencil, std::span<const Complex>(point), a.cap, c.tol);
    }
  });
  Json j = {{"multiplicity", multiplicity_json(mult.value)}, {"numerical", mult.numerical}};
  return {j, {}};
}

int emit(const Output& o, const Common& c, std::ostream& out) {
  if (c.format == "text") out << (o.text.empty() ? generic_text(o.json) : o.text);
  else out << canonical_json(o.json);
  return static_cast<int>(ExitStatus::ok);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalue loci of rectangular matrix pencils", "rectpencil"};
  app.require_subcommand(1);

  Common common;

  EigenvaluesArgs ev;
  auto* c_ev = app.add_subcommand(
      "eigenvalues",
      "Eigenvalue locus of A + span(L_1..L_k), k = n-m+1: the parameters where the member drops rank. A transversal "
      "subspace meets the corank-one variety in binom(n, m-1) points counted with multiplicity.");
  c_ev->add_option("--matrix", ev.matrix, "Base matrix A (JSON)")->required();
  c_ev->add_option("--basis", ev.basis, "\"diagonal\" or a basis file (JSON)")->capture_default_str();

  HeineArgs he;
  auto* c_he = app.add_subcommand(
      "heine",
      "Heine splitting: for upper-triangular A with distinct diagonal entries and the standard diagonal subspace, "
      "the locus splits into branches lambda1 = -a_ii with binom(n-i, m-i) points each.");
  c_he->add_option("--matrix", he.matrix, "Upper-triangular matrix A (JSON)")->required();
  c_he->add_flag("--systems-only", he.systems_only, "Print the branch systems without solving");

  PolyArgs cp;
  auto* c_cp = app.add_subcommand(
      "critical-poly",
      "Determinantal critical-value equation det[Ahat; kappa L_1; ...; kappa L_k] of the projection from the kernel "
      "resolution onto the pencil parameters.");
  c_cp->add_option("--m", cp.m, "Rows")->required();
  c_cp->add_option("--n", cp.n, "Columns")->required();
  c_cp->add_option("--ahat", cp.ahat, "(m-1) x n matrix (JSON); symbolic entries when absent");
  c_cp->add_option("--basis", cp.basis, "\"diagonal\" or a basis file (JSON)")->capture_default_str();

  PolyArgs sp;
  auto* c_sp = app.add_subcommand(
      "sds-poly",
      "Explicit expansion of the critical-value equation for the standard diagonal subspace as a signed sum of "
      "products of maximal minors of Ahat and T_{m,n-m+1}.");
  c_sp->add_option("--m", sp.m, "Rows")->required();
  c_sp->add_option("--n", sp.n, "Columns")->required();
  c_sp->add_option("--ahat", sp.ahat, "(m-1) x n matrix (JSON); symbolic entries when absent");

  BasisCheckArgs bc;
  auto* c_bc = app.add_subcommand(
      "basis-check",
      "The maximal minors of T_{i,d} form a basis of the homogeneous polynomials of degree d in i variables.");
  c_bc->add_option("--i", bc.i, "Number of kernel variables")->required();
  c_bc->add_option("--d", bc.d, "Degree")->required();

  DiscArgs dc;
  auto* c_dc = app.add_subcommand(
      "discriminant23",
      "The 2x3 discriminant D0: the hypersurface of matrices A for which A - lambda1 J1 - lambda2 J2 has a multiple "
      "eigenvalue, obtained by eliminating lambda from the eigenvalue and critical equations.");
  c_dc->add_option("--matrix", dc.matrix, "2x3 matrix (JSON)");
  c_dc->add_flag("--symbolic", dc.symbolic, "Print D0 for generic entries");

  TransArgs tr;
  auto* c_tr = app.add_subcommand(
      "transversality",
      "Transversality of span(L_1..L_k) to the variety of matrices of positive corank: no nonzero member drops "
      "rank.");
  c_tr->add_option("--basis", tr.basis, "\"diagonal\" or a basis file (JSON)")->capture_default_str();
  c_tr->add_option("--m", tr.m, "Rows (with --basis diagonal)");
  c_tr->add_option("--n", tr.n, "Columns (with --basis diagonal)");
  c_tr->add_option("--trials", tr.trials, "Randomized trials when no exact certificate applies")->capture_default_str();

  MultArgs mu;
  auto* c_mu = app.add_subcommand(
      "multiplicity",
      "Local multiplicity of an eigenvalue: the dimension of the local algebra of the ideal of all maximal minors.");
  c_mu->add_option("--matrix", mu.matrix, "Base matrix A (JSON)")->required();
  c_mu->add_option("--basis", mu.basis, "\"diagonal\" or a basis file (JSON)")->capture_default_str();
  c_mu->add_option("--at", mu.at, "Parameter point as a JSON array in the matrix entry encoding")->required();
  c_mu->add_option("--cap", mu.cap, "Macaulay degree cap")->capture_default_str();

  for (auto* cmd : {c_ev, c_he, c_cp, c_sp, c_bc, c_dc, c_tr, c_mu}) add_common(cmd, common);

  std::vector<std::string> argv_store = {"rectpencil"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    const auto chosen = app.get_subcommands();
    err << (chosen.empty() ? app.help() : chosen.front()->help());
    return static_cast<int>(ExitStatus::usage_error);
  }

  try {
    if (c_ev->parsed()) return emit(cmd_eigenvalues(ev, common), common, out);
    if (c_he->parsed()) return emit(cmd_heine(he, common), common, out);
    if (c_cp->parsed()) return emit(cmd_critical_poly(cp), common, out);
    if (c_sp->parsed()) return emit(cmd_sds_poly(sp), common, out);
    if (c_bc->parsed()) return emit(cmd_basis_check(bc), common, out);
    if (c_dc->parsed()) return emit(cmd_discriminant23(dc, common), common, out);
    if (c_tr->parsed()) return emit(cmd_transversality(tr, common), common, out);
    if (c_mu->parsed()) return emit(cmd_multiplicity(mu, common), common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::usage_error);
  } catch (const Json::exception& e) {
    err << "usage error: malformed JSON input: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::usage_error);
  } catch (const LocusIncomplete& e) {
    err << "numeric failure: " << e.what() << "\n";
    out << canonical_json(Json{{"status", "numeric-failure"}, {"error", e.what()}, {"found", eigenvalue_list(e.found())}});
    return static_cast<int>(ExitStatus::numeric_failure);
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::numeric_failure);
  } catch (const IdentityViolation& e) {
    err << "identity violation: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::identity_violation);
  }
  err << app.help();
  return static_cast<int>(ExitStatus::usage_error);
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace rectpencil
