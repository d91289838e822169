#include "rectpencil/locus.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rectpencil {

namespace {

constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ull;
// sigma_min <= kSingularRatio * max(1, sigma_max) marks a singular Jacobian
constexpr double kSingularRatio = 1e-7;

double inf_norm(std::span<const Complex> x) {
  double r = 0.0;
  for (const auto& v : x) r = std::max(r, std::abs(v));
  return r;
}

/// Square system with its symbolic Jacobian; equations are scaled so their
/// largest coefficient has modulus 1.
struct CompiledSystem {
  std::vector<CPoly> f;
  std::vector<std::vector<CPoly>> jac;
  std::size_t dim = 0;

  explicit CompiledSystem(const std::vector<CPoly>& eqs) {
    dim = eqs.empty() ? 0 : eqs[0].variables().size();
    if (eqs.size() != dim) throw UsageError("newton_system: need as many equations as variables");
    for (const auto& e : eqs) {
      if (e.variables() != eqs[0].variables()) throw UsageError("newton_system: equations have mismatched variables");
      double big = 0.0;
      for (const auto& [ex, c] : e.terms()) big = std::max(big, std::abs(c));
      f.push_back(big > 0.0 ? CPoly(e * Complex(1.0 / big, 0.0)) : e);
    }
    for (const auto& e : f) {
      std::vector<CPoly> row;
      for (std::size_t v = 0; v < dim; ++v) row.push_back(partial_derivative(e, v));
      jac.push_back(std::move(row));
    }
  }

  CVector value(std::span<const Complex> x) const {
    CVector out(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) out(static_cast<Eigen::Index>(i)) = evaluate_at<Complex>(f[i], x);
    return out;
  }

  CMatrix jacobian(std::span<const Complex> x) const {
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix out(d, d);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate_at<Complex>(jac[i][j], x);
    return out;
  }

  /// max_i |f_i(x)| / max(1, sum of |term_i(x)|)
  double residual(std::span<const Complex> x) const {
    double worst = 0.0;
    for (const auto& e : f) {
      Complex val(0.0, 0.0);
      double mag = 0.0;
      for (const auto& [ex, c] : e.terms()) {
        Complex t = c;
        for (std::size_t v = 0; v < dim; ++v)
          for (unsigned p = 0; p < ex[v]; ++p) t *= x[v];
        val += t;
        mag += std::abs(t);
      }
      worst = std::max(worst, std::abs(val) / std::max(1.0, mag));
    }
    return worst;
  }

  bool singular_at(std::span<const Complex> x) const {
    Eigen::VectorXd s = singular_values(jacobian(x));
    if (s.size() == 0) return false;
    return s(s.size() - 1) <= kSingularRatio * std::max(1.0, s(0));
  }
};

bool all_finite(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  return true;
}

struct NewtonRun {
  std::vector<Complex> x;
  double last_step = 0.0;
  bool converged = false;
};

NewtonRun run_newton(const CompiledSystem& sys, std::vector<Complex> x, const SolverConfig& cfg, double blowup) {
  NewtonRun run;
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    CVector dx = sys.jacobian(x).colPivHouseholderQr().solve(sys.value(x));
    if (!all_finite(dx)) break;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dx(static_cast<Eigen::Index>(i));
    run.last_step = dx.cwiseAbs().maxCoeff();
    if (inf_norm(x) > blowup) break;
    if (run.last_step <= cfg.tol * (1.0 + inf_norm(x))) {
      run.converged = true;
      break;
    }
  }
  run.x = std::move(x);
  return run;
}

/// Continues Newton at a singular root while the residual improves, then
/// applies Gauss-Newton to the deflated system [F; det J_F].
std::vector<Complex> polish_singular(const CompiledSystem& sys, std::vector<Complex> x, std::size_t max_iter) {
  double best = sys.residual(x);
  std::vector<Complex> best_x = x;
  for (std::size_t it = 0; it < max_iter; ++it) {
    CVector dx = sys.jacobian(x).colPivHouseholderQr().solve(sys.value(x));
    if (!all_finite(dx)) break;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dx(static_cast<Eigen::Index>(i));
    double r = sys.residual(x);
    if (r < best) {
      best = r;
      best_x = x;
    }
    if (dx.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + inf_norm(x))) break;
  }
  x = best_x;

  PolyMatrix<Complex> jm(sys.dim, sys.dim, CPoly(sys.f[0].variables()));
  for (std::size_t i = 0; i < sys.dim; ++i)
    for (std::size_t j = 0; j < sys.dim; ++j) jm(i, j) = sys.jac[i][j];
  std::vector<CPoly> augmented = sys.f;
  CPoly det = sym_det(jm);
  if (det.is_zero()) return x;
  double big = 0.0;
  for (const auto& [e, c] : det.terms()) big = std::max(big, std::abs(c));
  augmented.push_back(det * Complex(1.0 / big, 0.0));
  std::vector<std::vector<CPoly>> ajac;
  for (const auto& e : augmented) {
    std::vector<CPoly> row;
    for (std::size_t v = 0; v < sys.dim; ++v) row.push_back(partial_derivative(e, v));
    ajac.push_back(std::move(row));
  }
  auto g_norm = [&](std::span<const Complex> y) {
    double r = 0.0;
    for (const auto& e : augmented) r = std::max(r, std::abs(evaluate_at<Complex>(e, y)));
    return r;
  };
  double best_g = g_norm(x);
  std::vector<Complex> y = x;
  const auto rows = static_cast<Eigen::Index>(augmented.size());
  const auto d = static_cast<Eigen::Index>(sys.dim);
  for (std::size_t it = 0; it < 50; ++it) {
    CMatrix jg(rows, d);
    CVector g(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      g(i) = evaluate_at<Complex>(augmented[static_cast<std::size_t>(i)], std::span<const Complex>(y));
      for (Eigen::Index j = 0; j < d; ++j)
        jg(i, j) = evaluate_at<Complex>(ajac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                        std::span<const Complex>(y));
    }
    CVector dy = jg.colPivHouseholderQr().solve(g);
    if (!all_finite(dy)) break;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= dy(static_cast<Eigen::Index>(i));
    double gn = g_norm(y);
    if (gn <= best_g) {
      best_g = gn;
      x = y;
    }
    if (dy.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + inf_norm(y))) break;
  }
  return x;
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

bool Eigenvalue::has_flag(std::string_view f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::vector<NewtonSolution> newton_system(const std::vector<CPoly>& equations, const SolverConfig& config,
                                          double start_scale) {
  if (equations.empty()) throw UsageError("newton_system: empty system");
  CompiledSystem sys(equations);
  const std::size_t starts = config.starts == 0 ? 40 : config.starts;
  const double scale = 1.0 + start_scale;
  const double blowup = 1e8 * scale;
  std::mt19937_64 rng(config.seed);

  std::vector<std::vector<Complex>> start_points(starts, std::vector<Complex>(sys.dim));
  for (auto& s : start_points)
    for (auto& v : s) v = complex_gaussian(rng, scale);

  std::vector<NewtonSolution> clusters;
  for (const auto& s : start_points) {
    NewtonRun run = run_newton(sys, s, config, blowup);
    double r = sys.residual(run.x);
    bool stalled = run.last_step <= 1e-4 * (1.0 + inf_norm(run.x));
    if (!(r <= config.tol) || !(run.converged || stalled)) continue;
    bool merged = false;
    for (auto& c : clusters) {
      double dist = 0.0;
      for (std::size_t i = 0; i < sys.dim; ++i) dist = std::max(dist, std::abs(c.x[i] - run.x[i]));
      if (dist <= config.cluster_radius * (1.0 + inf_norm(c.x))) {
        if (r < c.residual) {
          c.x = run.x;
          c.residual = r;
        }
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({run.x, r, false});
  }

  for (auto& c : clusters) {
    if (!sys.singular_at(c.x)) continue;
    c.possibly_multiple = true;
    c.x = polish_singular(sys, c.x, config.max_iter);
    c.residual = sys.residual(c.x);
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const NewtonSolution& a, const NewtonSolution& b) { return lex_less(a.x, b.x); });
  return clusters;
}

double minor_residual(const Matrix<Complex>& m) {
  double fro = 0.0;
  for (const auto& v : m.data()) fro += std::norm(v);
  fro = std::sqrt(fro);
  double worst = 0.0;
  for (const auto& d : maximal_minors(m)) worst = std::max(worst, std::abs(d));
  return worst / std::pow(std::max(1.0, fro), static_cast<double>(m.rows()));
}

std::vector<Complex> normalized_left_kernel(const Matrix<Complex>& m) {
  CVector v = left_null_vector(to_eigen(m));
  Eigen::Index big = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(big))) big = i;
  Complex pivot = v(big);
  std::vector<Complex> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i) / pivot;
  out[static_cast<std::size_t>(big)] = {1.0, 0.0};
  return out;
}

namespace detail {

std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Exponent> out;
  for (unsigned d = 0; d <= degree; ++d) {
    auto h = homogeneous_monomials(nvars, d);
    out.insert(out.end(), h.begin(), h.end());
  }
  return out;
}

}  // namespace detail

Multiplicity local_multiplicity(const PencilSpec<Complex>& p, std::span<const Complex> lambda, std::size_t degree_cap,
                                double tol) {
  if (lambda.size() != p.k()) throw UsageError("local_multiplicity: parameter vector has wrong length");
  Matrix<Complex> at = p.at(lambda);
  double r = minor_residual(at);
  if (!(r <= tol)) {
    std::ostringstream msg;
    msg << "local_multiplicity: the point is not on the eigenvalue locus (residual " << r << ")";
    throw UsageError(msg.str());
  }
  double fro = 0.0;
  for (const auto& v : at.data()) fro += std::norm(v);
  const double scale = std::pow(std::max(1.0, std::sqrt(fro)), static_cast<double>(p.m()));

  std::vector<CPoly> gens;
  for (auto g : detail::local_generators<Complex>(p, lambda)) {
    CPoly trimmed(g.variables());
    double big = 0.0;
    for (const auto& [e, c] : g.terms())
      if (total_degree(e) > 0) big = std::max(big, std::abs(c));
    if (big <= tol * scale) continue;
    for (const auto& [e, c] : g.terms())
      if (total_degree(e) > 0) trimmed.add_term(e, c / big);
    gens.push_back(std::move(trimmed));
  }
  auto nullity = [](const Matrix<Complex>& m) -> std::size_t {
    if (m.rows() == 0) return m.cols();
    Eigen::VectorXd s = Eigen::BDCSVD<CMatrix>(to_eigen(m)).singularValues();
    const double threshold = 1e-8 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > threshold) ++rank;
    return m.cols() - rank;
  };
  return {detail::stabilized_nullity(gens, p.k(), degree_cap, nullity), true};
}

std::vector<Eigenvalue> solve_eigenvalue_locus(const PencilSpec<Complex>& p, const SolverConfig& config) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  const std::size_t k = p.k();
  const std::size_t expected = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m - 1));
  const std::size_t base_starts = config.starts == 0 ? 40 * expected : config.starts;
  double data_scale = 0.0;
  for (const auto& v : p.base().data()) data_scale = std::max(data_scale, std::abs(v));

  VarList lvars = indexed_vars("lambda", k);
  std::vector<Complex> origin(k, Complex(0.0, 0.0));
  const PolyMatrix<Complex> msym = p.symbolic<Complex>(lvars, std::span<const Complex>(origin));

  struct Attempt {
    bool mix;
    std::size_t starts;
  };
  const Attempt attempts[] = {{false, base_starts}, {true, base_starts}, {true, 4 * base_starts}};

  std::vector<Eigenvalue> found;
  std::string shortfall;
  for (std::size_t a = 0; a < std::size(attempts); ++a) {
    std::mt19937_64 rng(config.seed + a * kSeedStride);
    PolyMatrix<Complex> sq = msym;
    if (attempts[a].mix) {
      CMatrix u = random_unitary(n, rng);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          CPoly acc(lvars);
          for (std::size_t q = 0; q < n; ++q)
            acc += msym(i, q) * Complex(u(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)));
          sq(i, j) = std::move(acc);
        }
    }
    std::vector<CPoly> eqs;
    for (std::size_t j = m - 1; j < n; ++j) {
      std::vector<std::size_t> cols;
      for (std::size_t q = 0; q + 1 < m; ++q) cols.push_back(q);
      cols.push_back(j);
      eqs.push_back(sym_det(sq.select_cols(cols)));
    }
    SolverConfig sub = config;
    sub.starts = attempts[a].starts;
    sub.seed = rng();

    found.clear();
    std::size_t total = 0;
    bool unknown = false;
    for (auto& sol : newton_system(eqs, sub, data_scale)) {
      Matrix<Complex> at = p.at(sol.x);
      double r = minor_residual(at);
      if (!(r <= config.tol)) continue;
      Eigenvalue ev;
      ev.lambda = sol.x;
      ev.kappa = normalized_left_kernel(at);
      ev.residual = r;
      if (sol.possibly_multiple) ev.flags.emplace_back(kFlagPossiblyMultiple);
      if (attempts[a].mix) ev.flags.emplace_back(kFlagColumnMixed);
      ev.multiplicity = local_multiplicity(p, std::span<const Complex>(sol.x), 8, config.tol).value;
      if (ev.multiplicity) total += *ev.multiplicity;
      else unknown = true;
      found.push_back(std::move(ev));
    }
    if (!unknown && total == expected) return found;
    std::ostringstream msg;
    msg << "eigenvalue locus incomplete: multiplicities sum to " << total << (unknown ? " (some unknown)" : "")
        << ", expected " << expected << " after " << (a + 1) << " attempts; found " << found.size() << " points";
    shortfall = msg.str();
  }
  throw LocusIncomplete(shortfall, std::move(found));
}

}  // namespace rectpencil
