#include "rectpencil/transversality.hpp"

#include <cmath>

namespace rectpencil {

std::string_view transversality_name(Transversality t) {
  switch (t) {
    case Transversality::transversal:
      return "transversal";
    case Transversality::non_transversal:
      return "non-transversal";
    case Transversality::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace detail {

void check_basis(std::size_t m, std::size_t n, std::size_t count, std::size_t rank) {
  if (m == 0 || m > n) throw UsageError("transversality: basis matrices must be m x n with 1 <= m <= n");
  if (count != n - m + 1)
    throw UsageError("transversality: need n-m+1 = " + std::to_string(n - m + 1) + " basis matrices");
  if (rank != count) throw UsageError("transversality: basis matrices are linearly dependent");
}

TransversalityCertificate probabilistic_transversality(const std::vector<Matrix<Complex>>& basis, std::uint64_t seed,
                                                       std::size_t trials) {
  const std::size_t k = basis.size();
  const std::size_t m = basis[0].rows();
  const std::size_t n = basis[0].cols();
  const double tol = 1e-8;
  std::mt19937_64 rng(seed);
  VarList sv = indexed_vars("s", k - 1);

  TransversalityCertificate cert;
  cert.method = "probabilistic";
  for (std::size_t t = 0; t < trials; ++t) {
    cert.trials = t + 1;
    // affine (k-1)-plane c = u_0 + sum s_i u_i, generically meeting every line through 0 once
    std::vector<std::vector<Complex>> u(k, std::vector<Complex>(k));
    for (auto& row : u)
      for (auto& v : row) v = complex_gaussian(rng);
    std::vector<CPoly> coeff;
    for (std::size_t j = 0; j < k; ++j) {
      CPoly c(sv, u[0][j]);
      for (std::size_t i = 1; i < k; ++i) c += CPoly::variable(sv, sv[i - 1]) * u[i][j];
      coeff.push_back(std::move(c));
    }
    PolyMatrix<Complex> member(m, n, CPoly(sv));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t q = 0; q < n; ++q) {
        CPoly e(sv);
        for (std::size_t j = 0; j < k; ++j)
          if (basis[j](i, q) != Complex(0.0, 0.0)) e += coeff[j] * basis[j](i, q);
        member(i, q) = std::move(e);
      }
    std::vector<CPoly> minors;
    for (const auto& cols : lex_subsets(n, m)) minors.push_back(sym_det(member.select_cols(cols)));
    std::vector<CPoly> eqs;
    for (std::size_t e = 0; e + 1 < k; ++e) {
      CPoly mix(sv);
      for (const auto& d : minors) mix += d * complex_gaussian(rng);
      eqs.push_back(std::move(mix));
    }
    bool degenerate = true;
    for (const auto& e : eqs) degenerate = degenerate && e.is_zero();
    SolverConfig cfg;
    cfg.starts = 10;
    cfg.seed = rng();
    std::vector<std::vector<Complex>> candidates;
    if (degenerate) {
      candidates.push_back(std::vector<Complex>(k - 1, Complex(0.0, 0.0)));
    } else {
      for (const auto& s : newton_system(eqs, cfg)) candidates.push_back(s.x);
    }
    for (const auto& s : candidates) {
      std::vector<Complex> c(k);
      double norm = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        c[j] = evaluate_at<Complex>(coeff[j], std::span<const Complex>(s));
        norm += std::norm(c[j]);
      }
      norm = std::sqrt(norm);
      if (!(norm > 0.0)) continue;
      Matrix<Complex> mc(m, n, Complex(0.0, 0.0));
      for (auto& v : c) v /= norm;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t q = 0; q < n; ++q) mc(i, q) += c[j] * basis[j](i, q);
      if (minor_residual(mc) <= tol) {
        cert.verdict = Transversality::non_transversal;
        cert.witness = c;
        return cert;
      }
    }
  }
  cert.verdict = Transversality::inconclusive;
  return cert;
}

}  // namespace detail

}  // namespace rectpencil
