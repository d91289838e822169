#pragma once

// Numeric eigenvalue locus of a pencil A + span(L_1, ..., L_k), k = n - m + 1:
// the parameters lambda where A + sum lambda_i L_i drops rank. Solved by
// multi-start Newton on a square family of minors, filtered against all
// maximal minors, with multiplicities from the local algebra of the full
// minor ideal.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rectpencil/pencil.hpp"

namespace rectpencil {

struct SolverConfig {
  double tol = 1e-8;
  std::size_t starts = 0;  // 0 selects 40 * binom(n, m-1)
  std::size_t max_iter = 100;
  double cluster_radius = 1e-6;
  std::uint64_t seed = 0;
};

inline constexpr const char* kFlagPossiblyMultiple = "possibly multiple";
inline constexpr const char* kFlagNumerical = "numerical";
inline constexpr const char* kFlagColumnMixed = "column-mixed";

struct NewtonSolution {
  std::vector<Complex> x;
  double residual = 0.0;  // max_i |f_i(x)| / max(1, sum_j |c_ij x^a_ij|)
  bool possibly_multiple = false;
};

/// Square polynomial system solved from config.starts complex Gaussian
/// starts of scale 1 + start_scale. Solutions are clustered by
/// cluster_radius and returned in lexicographic order of coordinates.
/// Singular points are polished by deflation and flagged.
std::vector<NewtonSolution> newton_system(const std::vector<CPoly>& equations, const SolverConfig& config,
                                          double start_scale = 0.0);

struct Eigenvalue {
  std::vector<Complex> lambda;
  std::vector<Complex> kappa;  // left kernel, largest-magnitude entry exactly 1
  double residual = 0.0;
  std::optional<std::size_t> multiplicity;  // nullopt: unknown
  std::vector<std::string> flags;

  bool has_flag(std::string_view f) const;
};

/// Raised when the located multiplicities do not add up to binom(n, m-1);
/// carries what was found.
class LocusIncomplete : public NumericFailure {
 public:
  LocusIncomplete(const std::string& what, std::vector<Eigenvalue> found)
      : NumericFailure(what), found_(std::move(found)) {}
  const std::vector<Eigenvalue>& found() const { return found_; }

 private:
  std::vector<Eigenvalue> found_;
};

/// max over all maximal minors |Delta(M)| / max(1, ||M||_F)^m.
double minor_residual(const Matrix<Complex>& m);

/// Left kernel vector of m normalized so its largest-magnitude entry is 1.
std::vector<Complex> normalized_left_kernel(const Matrix<Complex>& m);

std::vector<Eigenvalue> solve_eigenvalue_locus(const PencilSpec<Complex>& p, const SolverConfig& config = {});

template <class T>
std::vector<Eigenvalue> solve_eigenvalue_locus(const PencilSpec<T>& p, const SolverConfig& config = {}) {
  return solve_eigenvalue_locus(p.to_complex(), config);
}

struct Multiplicity {
  std::optional<std::size_t> value;  // nullopt once the degree cap is hit
  bool numerical = false;
};

namespace detail {

/// All exponents of total degree <= degree in nvars variables.
std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned degree);

/// The translated minors of A + sum (lambda_l + t_l) L_l, as polynomials in t.
template <class T>
std::vector<MultiPoly<T>> local_generators(const PencilSpec<T>& p, std::span<const T> lambda) {
  VarList tvars = indexed_vars("t", p.k());
  PolyMatrix<T> mt = p.template symbolic<T>(tvars, lambda);
  std::vector<MultiPoly<T>> out;
  for (const auto& cols : lex_subsets(p.n(), p.m())) out.push_back(sym_det(mt.select_cols(cols)));
  return out;
}

/// Macaulay matrix of order D: rows t^a g for |a| <= D - 1, truncated to
/// total degree <= D; columns are the monomials of degree <= D.
template <class C>
Matrix<C> macaulay_matrix(const std::vector<MultiPoly<C>>& gens, std::size_t nvars, unsigned degree) {
  auto columns = monomials_up_to(nvars, degree);
  std::map<Exponent, std::size_t> index;
  for (std::size_t c = 0; c < columns.size(); ++c) index.emplace(columns[c], c);
  auto shifts = degree == 0 ? std::vector<Exponent>{} : monomials_up_to(nvars, degree - 1);
  Matrix<C> out(gens.size() * shifts.size(), columns.size(), ScalarTraits<C>::zero());
  std::size_t row = 0;
  for (const auto& g : gens)
    for (const auto& a : shifts) {
      for (const auto& [e, c] : g.terms()) {
        Exponent s = e;
        for (std::size_t v = 0; v < nvars; ++v) s[v] += a[v];
        if (total_degree(s) <= degree) out(row, index.at(s)) = c;
      }
      ++row;
    }
  return out;
}

/// Dimension of the local quotient from stabilized Macaulay nullities.
/// `nullity` maps a Macaulay matrix to its kernel dimension.
template <class C, class Nullity>
std::optional<std::size_t> stabilized_nullity(const std::vector<MultiPoly<C>>& gens, std::size_t nvars,
                                              std::size_t degree_cap, Nullity nullity) {
  std::size_t previous = 1;  // order 0: only the point evaluation
  for (unsigned d = 1; d <= degree_cap; ++d) {
    std::size_t current = nullity(macaulay_matrix(gens, nvars, d));
    if (current == previous) return current;
    previous = current;
  }
  return std::nullopt;
}

}  // namespace detail

/// dim C[[t]]/I where I is generated by all maximal minors of
/// A + sum (lambda_l + t_l) L_l. Float path: generators normalized by their
/// largest coefficient, rank threshold 1e-8 * max(1, sigma_max).
Multiplicity local_multiplicity(const PencilSpec<Complex>& p, std::span<const Complex> lambda,
                                std::size_t degree_cap = 8, double tol = 1e-8);

/// Exact path for rational or Gaussian pencils at an exact parameter.
template <class C>
  requires(ScalarTraits<C>::exact)
Multiplicity local_multiplicity(const PencilSpec<C>& p, std::span<const C> lambda, std::size_t degree_cap = 8) {
  if (lambda.size() != p.k()) throw UsageError("local_multiplicity: parameter vector has wrong length");
  auto gens = detail::local_generators<C>(p, lambda);
  std::vector<MultiPoly<C>> kept;
  for (auto& g : gens) {
    if (!is_zero_value(g.constant_term()))
      throw UsageError("local_multiplicity: the point is not on the eigenvalue locus");
    if (!g.is_zero()) kept.push_back(std::move(g));
  }
  auto value = detail::stabilized_nullity(kept, p.k(), degree_cap,
                                          [](const Matrix<C>& m) { return m.cols() - rank_exact(m); });
  return {value, false};
}

/// Multiplicity of a solved eigenvalue; exact pencils are evaluated in floats
/// and the result is marked numerical.
template <class T>
Multiplicity local_multiplicity(const PencilSpec<T>& p, const Eigenvalue& at, std::size_t degree_cap = 8,
                                double tol = 1e-8) {
  Multiplicity out = local_multiplicity(p.to_complex(), std::span<const Complex>(at.lambda), degree_cap, tol);
  out.numerical = !std::is_same_v<T, Complex>;
  return out;
}

}  // namespace rectpencil
