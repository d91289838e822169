#pragma once

// Sparse multivariate polynomials over Rational, Gaussian or Complex
// coefficients. Terms are kept in a map keyed by dense exponent vectors and
// ordered by descending graded-lex, which is also the printing order.

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rectpencil/errors.hpp"
#include "rectpencil/scalar.hpp"

namespace rectpencil {

using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Descending graded-lex: higher total degree first, ties broken
/// lexicographically with the first variable most significant.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Ordered, immutable list of variable names, cheap to copy.
class VarList {
 public:
  VarList() : names_(std::make_shared<const std::vector<std::string>>()) {}
  VarList(std::vector<std::string> names);  // NOLINT(implicit)
  VarList(std::initializer_list<std::string> names)
      : VarList(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_->size(); }
  bool empty() const { return names_->empty(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Index of `name`; UsageError for an unknown symbol.
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const VarList& a, const VarList& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }
  friend bool operator!=(const VarList& a, const VarList& b) { return !(a == b); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// {prefix1, ..., prefixN}
VarList indexed_vars(const std::string& prefix, std::size_t count, std::size_t first = 1);
/// Concatenation; names must be distinct.
VarList concat_vars(const VarList& a, const VarList& b);

/// Exponents of all monomials of exactly `degree` in nvars variables, in
/// descending grlex order.
std::vector<Exponent> homogeneous_monomials(std::size_t nvars, unsigned degree);

template <class C>
class MultiPoly {
 public:
  using Coeff = C;
  using Traits = ScalarTraits<C>;
  using Terms = std::map<Exponent, C, GrlexGreater>;
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  MultiPoly() = default;
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}
  MultiPoly(VarList vars, const C& constant) : vars_(std::move(vars)) {
    add_term(Exponent(vars_.size(), 0u), constant);
  }

  static MultiPoly variable(const VarList& vars, std::string_view name) {
    Exponent e(vars.size(), 0u);
    e[vars.index_of(name)] = 1;
    return monomial(vars, std::move(e), Traits::one());
  }
  static MultiPoly monomial(const VarList& vars, Exponent e, const C& c) {
    if (e.size() != vars.size()) throw UsageError("exponent length does not match variable count");
    MultiPoly p(vars);
    p.add_term(e, c);
    return p;
  }

  const VarList& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && rectpencil::total_degree(terms_.begin()->first) == 0);
  }

  C coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Traits::zero() : it->second;
  }
  C constant_term() const { return coefficient(Exponent(vars_.size(), 0u)); }

  /// Total degree; kZeroDegree for the zero polynomial.
  int total_degree() const {
    return terms_.empty() ? kZeroDegree : static_cast<int>(rectpencil::total_degree(terms_.begin()->first));
  }
  int degree_in(std::size_t var) const {
    if (terms_.empty()) return kZeroDegree;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return static_cast<int>(d);
  }
  int degree_in(std::string_view var) const { return degree_in(vars_.index_of(var)); }

  const std::pair<const Exponent, C>& leading_term() const {
    if (terms_.empty()) throw UsageError("leading term of the zero polynomial");
    return *terms_.begin();
  }

  /// Accumulates c*x^e; the entry is removed when it cancels.
  void add_term(const Exponent& e, const C& c) {
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, C(-c));
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    adopt_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(lift(e), c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    adopt_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(lift(e), C(-c));
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& operator*=(const C& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const C& s) { return a *= s; }
  friend MultiPoly operator*(const C& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(common_vars(a, b));
    if (a.is_zero() || b.is_zero()) return r;
    const std::size_t n = r.vars_.size();
    Exponent e(n, 0u);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) e[i] = component(ea, i) + component(eb, i);
        r.add_term(e, C(ca * cb));
      }
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned k) const {
    MultiPoly r(vars_, Traits::one());
    MultiPoly base = *this;
    while (k > 0) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k > 0) base = base * base;
    }
    return r;
  }

 private:
  // A polynomial with no variables is a bare constant and combines with any list.
  static VarList common_vars(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return a.vars_;
    if (a.vars_.empty()) return b.vars_;
    if (b.vars_.empty()) return a.vars_;
    throw UsageError("polynomials have mismatched variable lists");
  }
  static unsigned component(const Exponent& e, std::size_t i) { return e.empty() ? 0u : e[i]; }

  Exponent lift(const Exponent& e) const { return e.size() == vars_.size() ? e : Exponent(vars_.size(), 0u); }

  void adopt_vars(const MultiPoly& o) {
    VarList v = common_vars(*this, o);
    if (v.size() != vars_.size()) {
      // bare constant promoted into o's variable list
      Terms lifted;
      for (auto& [e, c] : terms_) lifted.emplace(Exponent(v.size(), 0u), c);
      terms_ = std::move(lifted);
    }
    vars_ = std::move(v);
  }

  VarList vars_;
  Terms terms_;
};

using QPoly = MultiPoly<Rational>;
using GPoly = MultiPoly<Gaussian>;
using CPoly = MultiPoly<Complex>;

// ---------------------------------------------------------------------------
// Free operations

template <class C>
MultiPoly<C> zero_like(const MultiPoly<C>& p) {
  return MultiPoly<C>(p.variables());
}
template <class C>
MultiPoly<C> one_like(const MultiPoly<C>& p) {
  return MultiPoly<C>(p.variables(), ScalarTraits<C>::one());
}
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Gaussian zero_like(const Gaussian&) { return Gaussian(); }
inline Gaussian one_like(const Gaussian&) { return Gaussian(1); }
inline Complex zero_like(const Complex&) { return {0.0, 0.0}; }
inline Complex one_like(const Complex&) { return {1.0, 0.0}; }

inline bool is_zero_value(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero_value(const Gaussian& x) { return x.is_zero(); }
inline bool is_zero_value(const Complex& x) { return x == Complex(0.0, 0.0); }
template <class C>
bool is_zero_value(const MultiPoly<C>& p) {
  return p.is_zero();
}

/// Converts every coefficient with `f`, keeping the variable list.
template <class D, class C, class F>
MultiPoly<D> map_coefficients(const MultiPoly<C>& p, F f) {
  MultiPoly<D> r(p.variables());
  for (const auto& [e, c] : p.terms()) r.add_term(e, f(c));
  return r;
}

template <class D, class C>
MultiPoly<D> poly_cast(const MultiPoly<C>& p) {
  return map_coefficients<D>(p, [](const C& c) { return scalar_cast<D>(c); });
}

/// Re-expresses p over `vars`, matching variables by name.
template <class C>
MultiPoly<C> with_variables(const MultiPoly<C>& p, const VarList& vars) {
  if (p.variables() == vars) return p;
  std::vector<std::optional<std::size_t>> map(p.variables().size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = vars.find(p.variables()[i]);
  MultiPoly<C> r(vars);
  Exponent target(vars.size(), 0u);
  for (const auto& [e, c] : p.terms()) {
    std::fill(target.begin(), target.end(), 0u);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) throw UsageError("variable '" + p.variables()[i] + "' missing from target list");
      target[*map[i]] += e[i];
    }
    r.add_term(target, c);
  }
  return r;
}

template <class C>
MultiPoly<C> partial_derivative(const MultiPoly<C>& p, std::size_t var) {
  if (var >= p.variables().size()) throw UsageError("derivative variable out of range");
  MultiPoly<C> r(p.variables());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    --d[var];
    r.add_term(d, C(c * ScalarTraits<C>::from_rational(Rational(e[var]))));
  }
  return r;
}

template <class C>
MultiPoly<C> partial_derivative(const MultiPoly<C>& p, std::string_view var) {
  return partial_derivative(p, p.variables().index_of(var));
}

/// Evaluates at `values` (one per variable, in order) in the scalar type T.
template <class T, class C>
T evaluate_at(const MultiPoly<C>& p, std::span<const T> values) {
  const std::size_t n = p.variables().size();
  if (values.size() != n) throw UsageError("evaluation point has wrong dimension");
  std::vector<std::vector<T>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    powers[i].push_back(one_like(values[i]));
    unsigned d = p.is_zero() ? 0u : static_cast<unsigned>(std::max(0, p.degree_in(i)));
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(T(powers[i].back() * values[i]));
  }
  T acc = scalar_cast<T>(ScalarTraits<C>::zero());
  for (const auto& [e, c] : p.terms()) {
    T term = scalar_cast<T>(c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] > 0) term = T(term * powers[i][e[i]]);
    acc = T(acc + term);
  }
  return acc;
}

/// Substitutes the named values; the result lives over the unassigned variables.
template <class C>
MultiPoly<C> substitute(const MultiPoly<C>& p, const std::map<std::string, C>& point) {
  const VarList& vars = p.variables();
  for (const auto& [name, v] : point) vars.index_of(name);  // rejects unknown symbols
  std::vector<std::string> rest;
  std::vector<std::optional<C>> value(vars.size());
  std::vector<std::size_t> rest_index(vars.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = point.find(vars[i]);
    if (it != point.end()) {
      value[i] = it->second;
    } else {
      rest_index[i] = rest.size();
      rest.push_back(vars[i]);
    }
  }
  VarList rv(rest);
  MultiPoly<C> r(rv);
  Exponent e2(rv.size(), 0u);
  for (const auto& [e, c] : p.terms()) {
    C coeff = c;
    std::fill(e2.begin(), e2.end(), 0u);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (value[i]) {
        for (unsigned k = 0; k < e[i]; ++k) coeff *= *value[i];
      } else {
        e2[rest_index[i]] = e[i];
      }
    }
    r.add_term(e2, coeff);
  }
  return r;
}

/// Full assignment; every variable must be given.
template <class C>
C evaluate(const MultiPoly<C>& p, const std::map<std::string, C>& point) {
  MultiPoly<C> r = substitute(p, point);
  if (!r.variables().empty()) throw UsageError("evaluate: assignment does not cover variable '" + r.variables()[0] + "'");
  return r.constant_term();
}

/// Coefficients of p as a polynomial in `var`: result[d] multiplies var^d.
/// Each coefficient keeps p's variable list (with var absent).
template <class C>
std::vector<MultiPoly<C>> coefficients_in(const MultiPoly<C>& p, std::size_t var) {
  int deg = p.degree_in(var);
  std::vector<MultiPoly<C>> out(deg < 0 ? 0 : static_cast<std::size_t>(deg) + 1, MultiPoly<C>(p.variables()));
  for (const auto& [e, c] : p.terms()) {
    Exponent rest = e;
    rest[var] = 0;
    out[e[var]].add_term(rest, c);
  }
  return out;
}

template <class C>
struct MonomialFactor {
  unsigned exponent = 0;
  MultiPoly<C> quotient;
};

/// Largest e with var^e dividing every term, and p / var^e.
template <class C>
MonomialFactor<C> extract_monomial_factor(const MultiPoly<C>& p, std::string_view var) {
  if (p.is_zero()) throw UsageError("monomial factor of the zero polynomial");
  std::size_t v = p.variables().index_of(var);
  unsigned e = std::numeric_limits<unsigned>::max();
  for (const auto& [ex, c] : p.terms()) e = std::min(e, ex[v]);
  MonomialFactor<C> out{e, MultiPoly<C>(p.variables())};
  for (const auto& [ex, c] : p.terms()) {
    Exponent q = ex;
    q[v] -= e;
    out.quotient.add_term(q, c);
  }
  return out;
}

/// p / q when q divides p exactly (exact domains only), otherwise nullopt.
template <class C>
std::optional<MultiPoly<C>> try_exact_divide(const MultiPoly<C>& p, const MultiPoly<C>& q) {
  static_assert(ScalarTraits<C>::exact, "exact division needs an exact coefficient domain");
  if (q.is_zero()) throw UsageError("division by the zero polynomial");
  if (p.is_zero()) return MultiPoly<C>(p.variables());
  const MultiPoly<C> d = with_variables(q, p.variables());
  MultiPoly<C> r = p;
  MultiPoly<C> quot(p.variables());
  const auto& [eq, cq] = d.leading_term();
  while (!r.is_zero()) {
    const auto& [er, cr] = r.leading_term();
    Exponent t = er;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < eq[i]) return std::nullopt;
      t[i] -= eq[i];
    }
    C c = cr / cq;
    MultiPoly<C> step = MultiPoly<C>::monomial(r.variables(), t, c);
    quot += step;
    r -= step * d;
  }
  return quot;
}

template <class C>
MultiPoly<C> exact_divide(const MultiPoly<C>& p, const MultiPoly<C>& q) {
  auto r = try_exact_divide(p, q);
  if (!r) throw UsageError("polynomial division is not exact");
  return *std::move(r);
}

/// True when every term has the same total degree in the variables `which`.
template <class C>
bool is_homogeneous_in(const MultiPoly<C>& p, std::span<const std::size_t> which, int* degree = nullptr) {
  std::optional<unsigned> d;
  for (const auto& [e, c] : p.terms()) {
    unsigned s = 0;
    for (std::size_t i : which) s += e[i];
    if (d && *d != s) return false;
    d = s;
  }
  if (degree) *degree = d ? static_cast<int>(*d) : MultiPoly<C>::kZeroDegree;
  return true;
}

/// Coefficient-wise comparison with tolerance scaled by the larger magnitude.
bool approx_equal(const CPoly& a, const CPoly& b, double tol = ScalarTraits<Complex>::default_tolerance);

// ---------------------------------------------------------------------------
// Canonical text

template <class C>
std::string to_string(const MultiPoly<C>& p) {
  using Traits = ScalarTraits<C>;
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    bool negative = Traits::prints_negative(c);
    C mag = negative ? C(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.variables()[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    bool unit = mag == Traits::one();
    if (mono.empty()) {
      out += Traits::to_string(mag);
    } else if (unit) {
      out += mono;
    } else {
      out += Traits::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

namespace detail {

template <class C>
class PolyParser {
 public:
  PolyParser(std::string_view text, VarList vars) : s_(text), vars_(std::move(vars)) {}

  MultiPoly<C> parse() {
    MultiPoly<C> p = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  MultiPoly<C> parse_sum() {
    skip_ws();
    MultiPoly<C> acc(vars_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      MultiPoly<C> t = parse_product();
      if (negative) acc -= t;
      else acc += t;
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        continue;
      }
      return acc;
    }
  }

  MultiPoly<C> parse_product() {
    MultiPoly<C> acc(vars_, ScalarTraits<C>::one());
    while (true) {
      acc = acc * parse_factor();
      skip_ws();
      if (peek() != '*') return acc;
      ++pos_;
    }
  }

  MultiPoly<C> parse_factor() {
    skip_ws();
    char ch = peek();
    MultiPoly<C> base(vars_);
    if (ch == '(') {
      ++pos_;
      base = parse_sum();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      base = MultiPoly<C>(vars_, parse_number());
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (auto idx = vars_.find(name)) {
        base = MultiPoly<C>::variable(vars_, name);
      } else if (name == "i" && ScalarTraits<C>::domain != Domain::rational) {
        base = MultiPoly<C>(vars_, ScalarTraits<C>::imaginary_unit());
      } else {
        throw UsageError("unknown symbol '" + name + "' in polynomial text");
      }
    } else {
      fail("expected a factor");
    }
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  C parse_number() {
    std::size_t start = pos_;
    bool decimal = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (peek() == '.') {
      decimal = true;
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if ((peek() == 'e' || peek() == 'E') && exponent_follows()) {
      decimal = true;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    std::string lit(s_.substr(start, pos_ - start));
    if (decimal) return ScalarTraits<C>::from_double(std::stod(lit));
    if (peek() == '/') {
      ++pos_;
      std::size_t d0 = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d0 == pos_) fail("expected denominator");
      lit += "/" + std::string(s_.substr(d0, pos_ - d0));
    }
    return ScalarTraits<C>::from_rational(parse_rational(lit));
  }

  bool exponent_follows() const {
    std::size_t k = pos_ + 1;
    if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
    return k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  VarList vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses canonical text (and any sum of products of numbers, `i` and
/// variables) over the given variable list.
template <class C>
MultiPoly<C> parse_poly(std::string_view text, const VarList& vars) {
  return detail::PolyParser<C>(text, vars).parse();
}

}  // namespace rectpencil
