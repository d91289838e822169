#pragma once

// Is span(L_1, ..., L_k) transversal to the corank >= 1 locus, i.e. does
// every nonzero member have full rank m?

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rectpencil/locus.hpp"
#include "rectpencil/pencil.hpp"

namespace rectpencil {

enum class Transversality { transversal, non_transversal, inconclusive };

std::string_view transversality_name(Transversality t);

struct TransversalityCertificate {
  Transversality verdict = Transversality::inconclusive;
  std::string method;                         // "exact-rank", "exact-binary-gcd", "numeric-rank", "probabilistic"
  std::optional<std::vector<Complex>> witness;  // coefficients of a rank-deficient member
  std::size_t trials = 0;
};

inline constexpr std::size_t kTransversalityTrials = 50;

namespace detail {

/// Ascending coefficient vectors; the zero polynomial is empty.
template <class C>
void trim(std::vector<C>& p) {
  while (!p.empty() && is_zero_value(p.back())) p.pop_back();
}

template <class C>
std::vector<C> poly_remainder(std::vector<C> a, const std::vector<C>& b) {
  trim(a);
  while (a.size() >= b.size()) {
    C factor = C(a.back() / b.back());
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = C(a[shift + i] - factor * b[i]);
    a.pop_back();
    trim(a);
  }
  return a;
}

template <class C>
std::vector<C> poly_gcd(std::vector<C> a, std::vector<C> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::vector<C> r = poly_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

void check_basis(std::size_t m, std::size_t n, std::size_t count, std::size_t rank);

TransversalityCertificate probabilistic_transversality(const std::vector<Matrix<Complex>>& basis, std::uint64_t seed,
                                                       std::size_t trials);

}  // namespace detail

/// k = 1: det(L_1) != 0. k = 2 with exact entries: the maximal minors of
/// c1 L1 + c2 L2 are binary forms; transversal iff they have no common
/// projective zero (Euclid on the dehomogenized forms plus the point
/// c2 = 0). Otherwise random affine slices, which can only ever certify
/// non-transversality.
template <class T>
TransversalityCertificate transversality_check(const std::vector<Matrix<T>>& basis, std::uint64_t seed = 0,
                                               std::size_t trials = kTransversalityTrials) {
  if (basis.empty()) throw UsageError("transversality: empty basis");
  const std::size_t m = basis[0].rows();
  const std::size_t n = basis[0].cols();
  for (const auto& l : basis)
    if (l.rows() != m || l.cols() != n) throw UsageError("transversality: basis matrices differ in shape");
  detail::check_basis(m, n, basis.size(), basis_rank(basis));
  const std::size_t k = basis.size();

  TransversalityCertificate cert;
  if (k == 1) {
    bool full = corank(basis[0]) == 0;
    cert.method = ScalarTraits<T>::exact ? "exact-rank" : "numeric-rank";
    cert.verdict = full ? Transversality::transversal : Transversality::non_transversal;
    if (!full) cert.witness = std::vector<Complex>{Complex(1.0, 0.0)};
    return cert;
  }
  if constexpr (ScalarTraits<T>::exact) {
    if (k == 2) {
      cert.method = "exact-binary-gcd";
      VarList cv = {"c1", "c2"};
      PolyMatrix<T> member(m, n, MultiPoly<T>(cv));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          member(i, j) = MultiPoly<T>::variable(cv, "c1") * basis[0](i, j) +
                         MultiPoly<T>::variable(cv, "c2") * basis[1](i, j);
      std::vector<T> g;
      bool any_form = false;
      bool infinity_common = true;
      for (const auto& cols : lex_subsets(n, m)) {
        MultiPoly<T> f = sym_det(member.select_cols(cols));
        if (f.is_zero()) continue;
        std::vector<T> dehom(m + 1, ScalarTraits<T>::zero());
        for (const auto& [e, c] : f.terms()) dehom[e[0]] = c;
        if (!is_zero_value(dehom[m])) infinity_common = false;
        g = any_form ? detail::poly_gcd(g, dehom) : dehom;
        detail::trim(g);
        any_form = true;
      }
      if (!any_form || infinity_common) {
        cert.verdict = Transversality::non_transversal;
        cert.witness = std::vector<Complex>{Complex(1.0, 0.0), Complex(0.0, 0.0)};
      } else if (g.size() > 1) {
        cert.verdict = Transversality::non_transversal;
        std::vector<Complex> high_first;
        for (auto it = g.rbegin(); it != g.rend(); ++it) high_first.push_back(scalar_cast<Complex>(*it));
        cert.witness = std::vector<Complex>{polynomial_roots(high_first).at(0), Complex(1.0, 0.0)};
      } else {
        cert.verdict = Transversality::transversal;
      }
      return cert;
    }
  }
  std::vector<Matrix<Complex>> cb;
  for (const auto& l : basis) cb.push_back(matrix_cast<Complex>(l));
  return detail::probabilistic_transversality(cb, seed, trials);
}

}  // namespace rectpencil
