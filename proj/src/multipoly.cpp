#include "rectpencil/multipoly.hpp"

#include <numeric>
#include <set>

namespace rectpencil {

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = total_degree(a);
  unsigned db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

VarList::VarList(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw UsageError("empty variable name");
    if (!seen.insert(n).second) throw UsageError("duplicate variable name '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarList::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t VarList::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UsageError("unknown symbol '" + std::string(name) + "'");
}

VarList indexed_vars(const std::string& prefix, std::size_t count, std::size_t first) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back(prefix + std::to_string(first + i));
  return VarList(std::move(names));
}

VarList concat_vars(const VarList& a, const VarList& b) {
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  return VarList(std::move(names));
}

bool approx_equal(const CPoly& a, const CPoly& b, double tol) {
  CPoly diff = a - b;
  double scale = 1.0;
  for (const auto& [e, c] : a.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [e, c] : b.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [e, c] : diff.terms())
    if (std::abs(c) > tol * scale) return false;
  return true;
}

std::vector<Exponent> homogeneous_monomials(std::size_t nvars, unsigned degree) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0u);
  // enumerate compositions of `degree` into nvars parts
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (pos + 1 == nvars) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      e[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (nvars == 0) return degree == 0 ? std::vector<Exponent>{Exponent{}} : out;
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

}  // namespace rectpencil
