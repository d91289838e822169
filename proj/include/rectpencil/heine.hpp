#pragma once

// Upper-triangular A with distinct diagonal entries: the eigenvalue locus for
// the standard diagonal subspace splits into m complete intersections, one
// per value lambda_1 = -a_{i,i}. Branch i has binom(n-i, m-i) points.

#include <sstream>
#include <vector>

#include "rectpencil/locus.hpp"

namespace rectpencil {

struct HeineCount {
  std::size_t total = 0;
  std::vector<std::size_t> per_branch;  // index 0 is branch 1
};

/// total = binom(n, m-1) = sum_i binom(n-i, m-i).
HeineCount heine_count(std::size_t m, std::size_t n);

/// a_{i,j} = 0 below the diagonal and a_{1,1}, ..., a_{m,m} pairwise distinct.
template <class T>
bool check_heine_admissible(const Matrix<T>& a) {
  if (a.rows() == 0 || a.rows() > a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!is_zero_value(a(i, j))) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (is_zero_value(T(a(i, i) - a(j, j)))) return false;
  return true;
}

/// k_p = numerator / denominator with a constant denominator.
template <class C>
struct KernelEntry {
  MultiPoly<C> numerator;
  C denominator;
};

template <class C>
struct BranchSystem {
  std::size_t branch = 0;  // 1-based
  C lambda1;               // -a_{i,i}
  VarList variables;       // lambda2 .. lambda{n-m+1}
  std::vector<MultiPoly<C>> equations;
  std::vector<KernelEntry<C>> kernel;  // k_1..k_m of the full matrix; k_p = 0 for p < branch
  std::size_t expected = 0;            // binom(n-i, m-i)
};

/// Builds branch i on the trailing submatrix B = A[i.., i..] (first i-1 rows
/// and columns removed). With b = B: k_1 = 1, lambda_1 = -b_11,
/// k_q = sum_{p<q} k_p (b_pq + lambda_{q-p+1}) / (b_11 - b_qq), and the tail
/// columns q > rows(B) give the n-m equations, cleared of the constant
/// denominators d_q = prod_{t<=q} (b_11 - b_tt).
template <class C>
std::vector<BranchSystem<C>> build_branch_systems(const Matrix<C>& a) {
  if (!check_heine_admissible(a))
    throw UsageError("heine: matrix must be upper-triangular with pairwise distinct diagonal entries");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = n - m + 1;
  const HeineCount count = heine_count(m, n);
  VarList vars = indexed_vars("lambda", k - 1, 2);
  using P = MultiPoly<C>;
  // lambda_s as a polynomial; lambda_1 never occurs off the diagonal and
  // lambda_s = 0 for s > k
  auto lambda = [&](std::size_t s) {
    if (s < 2 || s > k) return P(vars);
    return P::variable(vars, vars[s - 2]);
  };

  std::vector<BranchSystem<C>> out;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t off = i - 1;
    const std::size_t rows = m - off;
    auto b = [&](std::size_t p, std::size_t q) { return a(off + p - 1, off + q - 1); };  // 1-based in B
    BranchSystem<C> sys;
    sys.branch = i;
    sys.lambda1 = C(-b(1, 1));
    sys.variables = vars;
    sys.expected = count.per_branch[i - 1];

    std::vector<P> num(rows + 1, P(vars));
    std::vector<C> den(rows + 1, ScalarTraits<C>::one());
    num[1] = P(vars, ScalarTraits<C>::one());
    for (std::size_t q = 2; q <= rows; ++q) {
      P acc(vars);
      for (std::size_t p = 1; p < q; ++p)
        acc += num[p] * C(den[q - 1] / den[p]) * (P(vars, b(p, q)) + lambda(q - p + 1));
      num[q] = std::move(acc);
      den[q] = C(den[q - 1] * C(b(1, 1) - b(q, q)));
    }
    for (std::size_t q = rows + 1; q <= n - off; ++q) {
      P eq(vars);
      for (std::size_t p = 1; p <= rows; ++p)
        eq += num[p] * C(den[rows] / den[p]) * (P(vars, b(p, q)) + lambda(q - p + 1));
      sys.equations.push_back(std::move(eq));
    }
    for (std::size_t p = 1; p <= m; ++p) {
      if (p <= off) sys.kernel.push_back({P(vars), ScalarTraits<C>::one()});
      else sys.kernel.push_back({num[p - off], den[p - off]});
    }
    out.push_back(std::move(sys));
  }
  return out;
}

struct HeineEigenvalue {
  std::size_t branch = 0;
  Eigenvalue value;
};

/// Raised when a branch yields the wrong number of points.
class HeineBranchFailure : public NumericFailure {
 public:
  HeineBranchFailure(const std::string& what, std::vector<std::size_t> found, std::vector<std::size_t> expected)
      : NumericFailure(what), found_(std::move(found)), expected_(std::move(expected)) {}
  const std::vector<std::size_t>& found() const { return found_; }
  const std::vector<std::size_t>& expected() const { return expected_; }

 private:
  std::vector<std::size_t> found_;
  std::vector<std::size_t> expected_;
};

namespace detail {

/// Solves one branch in the complex domain; `exact_linear` holds the unique
/// solution when the branch system is linear over an exact domain.
std::vector<HeineEigenvalue> solve_branch(const PencilSpec<Complex>& pencil, const BranchSystem<Complex>& sys,
                                          const std::optional<std::vector<Complex>>& exact_linear,
                                          const SolverConfig& config, std::size_t* found_multiplicity);

template <class C>
std::optional<std::vector<C>> solve_linear_branch(const BranchSystem<C>& sys) {
  if constexpr (!ScalarTraits<C>::exact) {
    return std::nullopt;
  } else {
    const std::size_t v = sys.variables.size();
    if (v == 0) return std::vector<C>{};
    for (const auto& e : sys.equations)
      if (e.total_degree() > 1) return std::nullopt;
    Matrix<C> lhs(sys.equations.size(), v, ScalarTraits<C>::zero());
    std::vector<C> rhs(sys.equations.size(), ScalarTraits<C>::zero());
    for (std::size_t r = 0; r < sys.equations.size(); ++r)
      for (const auto& [e, c] : sys.equations[r].terms()) {
        std::size_t var = v;
        for (std::size_t j = 0; j < v; ++j)
          if (e[j] == 1) var = j;
        if (var == v) rhs[r] = C(-c);
        else lhs(r, var) = c;
      }
    if (rank_exact(lhs) != v) return std::nullopt;
    return solve_exact(lhs, rhs);
  }
}

template <class C>
BranchSystem<Complex> to_complex(const BranchSystem<C>& s) {
  BranchSystem<Complex> out;
  out.branch = s.branch;
  out.lambda1 = scalar_cast<Complex>(s.lambda1);
  out.variables = s.variables;
  for (const auto& e : s.equations) out.equations.push_back(poly_cast<Complex>(e));
  for (const auto& k : s.kernel) out.kernel.push_back({poly_cast<Complex>(k.numerator), scalar_cast<Complex>(k.denominator)});
  out.expected = s.expected;
  return out;
}

}  // namespace detail

/// Solves every branch. Each point carries its branch, the kernel rebuilt from
/// the recurrence (largest entry scaled to 1) and its local multiplicity in
/// the full pencil. Branch totals must equal binom(n-i, m-i).
template <class C>
std::vector<HeineEigenvalue> heine_solve(const Matrix<C>& a, const SolverConfig& config = {}) {
  auto systems = build_branch_systems(a);
  auto pencil = PencilSpec<C>::diagonal(a).to_complex();
  std::vector<HeineEigenvalue> out;
  std::vector<std::size_t> found, expected;
  bool ok = true;
  for (const auto& sys : systems) {
    std::optional<std::vector<Complex>> exact;
    if (auto lin = detail::solve_linear_branch(sys)) {
      std::vector<Complex> x = {scalar_cast<Complex>(sys.lambda1)};
      for (const auto& v : *lin) x.push_back(scalar_cast<Complex>(v));
      exact = std::move(x);
    }
    std::size_t mult = 0;
    auto pts = detail::solve_branch(pencil, detail::to_complex(sys), exact, config, &mult);
    found.push_back(mult);
    expected.push_back(sys.expected);
    ok = ok && mult == sys.expected;
    for (auto& p : pts) out.push_back(std::move(p));
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "heine: branch point counts (found/expected):";
    for (std::size_t i = 0; i < found.size(); ++i) msg << " " << (i + 1) << ":" << found[i] << "/" << expected[i];
    throw HeineBranchFailure(msg.str(), found, expected);
  }
  return out;
}

}  // namespace rectpencil
