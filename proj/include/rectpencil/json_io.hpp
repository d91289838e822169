#pragma once

// Matrix files: {"rows": m, "cols": n, "domain": "rational"|"gaussian"|"complex",
// "entries": [[...], ...]} with rational entries as "p/q" strings, Gaussian
// entries as {"re": "p/q", "im": "p/q"} and complex entries as [re, im].
// A basis file is an array of matrix objects or {"basis": [...]}; all
// members share one domain.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rectpencil/matrix.hpp"
#include "rectpencil/multipoly.hpp"

namespace rectpencil {

using Json = nlohmann::json;

using AnyMatrix = std::variant<Matrix<Rational>, Matrix<Gaussian>, Matrix<Complex>>;
using AnyBasis = std::variant<std::vector<Matrix<Rational>>, std::vector<Matrix<Gaussian>>, std::vector<Matrix<Complex>>>;

/// Scalars in the file encoding of their domain.
Json scalar_to_json(const Rational& x);
Json scalar_to_json(const Gaussian& x);
Json scalar_to_json(const Complex& x);

template <class T>
T scalar_from_json(const Json& j);
template <>
Rational scalar_from_json<Rational>(const Json& j);
template <>
Gaussian scalar_from_json<Gaussian>(const Json& j);
template <>
Complex scalar_from_json<Complex>(const Json& j);

Domain parse_domain(const std::string& name);

AnyMatrix matrix_from_json(const Json& j);
AnyBasis basis_from_json(const Json& j);

template <class T>
Json matrix_to_json(const Matrix<T>& a) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(scalar_to_json(a(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"domain", domain_name(ScalarTraits<T>::domain)},
          {"entries", std::move(entries)}};
}

/// Reads and parses a JSON file; UsageError on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// Keys sorted, two-space indent, scalar arrays on one line, floats with 17
/// significant digits, non-finite floats as null, trailing newline.
std::string canonical_json(const Json& j);

}  // namespace rectpencil
