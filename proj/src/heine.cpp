#include "rectpencil/heine.hpp"

#include <algorithm>

namespace rectpencil {

HeineCount heine_count(std::size_t m, std::size_t n) {
  if (m == 0 || m > n) throw UsageError("heine_count: need 1 <= m <= n");
  HeineCount out;
  out.total = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m - 1));
  std::size_t sum = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    out.per_branch.push_back(binomial(static_cast<std::int64_t>(n - i), static_cast<std::int64_t>(m - i)));
    sum += out.per_branch.back();
  }
  if (sum != out.total) throw IdentityViolation("heine_count: branch counts do not add up to binom(n, m-1)");
  return out;
}

namespace detail {

namespace {

struct Candidate {
  std::vector<Complex> lambda;
  bool possibly_multiple = false;
};

std::vector<Candidate> branch_candidates(const BranchSystem<Complex>& sys,
                                         const std::optional<std::vector<Complex>>& exact_linear,
                                         const SolverConfig& config, double start_scale) {
  if (exact_linear) return {{*exact_linear, false}};
  if (sys.variables.empty()) return {{{sys.lambda1}, false}};
  std::vector<Candidate> out;
  for (auto& s : newton_system(sys.equations, config, start_scale)) {
    std::vector<Complex> x = {sys.lambda1};
    x.insert(x.end(), s.x.begin(), s.x.end());
    out.push_back({std::move(x), s.possibly_multiple});
  }
  return out;
}

}  // namespace

std::vector<HeineEigenvalue> solve_branch(const PencilSpec<Complex>& pencil, const BranchSystem<Complex>& sys,
                                          const std::optional<std::vector<Complex>>& exact_linear,
                                          const SolverConfig& config, std::size_t* found_multiplicity) {
  double start_scale = 0.0;
  for (const auto& v : pencil.base().data()) start_scale = std::max(start_scale, std::abs(v));
  const std::size_t base_starts = config.starts == 0 ? 40 * std::max<std::size_t>(sys.expected, 1) : config.starts;

  std::vector<HeineEigenvalue> out;
  for (std::size_t attempt = 0; attempt < 2; ++attempt) {
    SolverConfig cfg = config;
    cfg.starts = attempt == 0 ? base_starts : 4 * base_starts;
    cfg.seed = config.seed + 0x9E3779B97F4A7C15ull * (2 * sys.branch + attempt);
    out.clear();
    std::size_t total = 0;
    for (auto& c : branch_candidates(sys, exact_linear, cfg, start_scale)) {
      Matrix<Complex> at = pencil.at(c.lambda);
      double r = minor_residual(at);
      if (!(r <= config.tol)) continue;
      Eigenvalue ev;
      ev.lambda = c.lambda;
      ev.residual = r;
      std::span<const Complex> tail(c.lambda.data() + 1, c.lambda.size() - 1);
      std::vector<Complex> kappa;
      for (const auto& k : sys.kernel) kappa.push_back(evaluate_at<Complex>(k.numerator, tail) / k.denominator);
      auto big = std::max_element(kappa.begin(), kappa.end(),
                                  [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
      Complex pivot = *big;
      for (auto& v : kappa) v /= pivot;
      *big = {1.0, 0.0};
      ev.kappa = std::move(kappa);
      if (c.possibly_multiple) ev.flags.emplace_back(kFlagPossiblyMultiple);
      ev.multiplicity = local_multiplicity(pencil, std::span<const Complex>(c.lambda), 8, config.tol).value;
      total += ev.multiplicity.value_or(0);
      out.push_back({sys.branch, std::move(ev)});
    }
    *found_multiplicity = total;
    if (total == sys.expected || exact_linear || sys.variables.empty()) break;
  }
  return out;
}

}  // namespace detail

}  // namespace rectpencil
