#include "rectpencil/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rectpencil {

Json scalar_to_json(const Rational& x) { return rational_to_string(x); }

Json scalar_to_json(const Gaussian& x) { return {{"re", rational_to_string(x.re)}, {"im", rational_to_string(x.im)}}; }

Json scalar_to_json(const Complex& x) { return Json::array({x.real(), x.imag()}); }

namespace {

Rational rational_field(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw UsageError("expected a rational \"p/q\" string, got " + j.dump());
}

template <class T>
Matrix<T> typed_matrix(const Json& j, std::size_t rows, std::size_t cols) {
  const Json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != rows)
    throw UsageError("matrix: \"entries\" must hold " + std::to_string(rows) + " rows");
  Matrix<T> out(rows, cols, ScalarTraits<T>::zero());
  for (std::size_t i = 0; i < rows; ++i) {
    if (!entries[i].is_array() || entries[i].size() != cols)
      throw UsageError("matrix: row " + std::to_string(i + 1) + " must hold " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) out(i, k) = scalar_from_json<T>(entries[i][k]);
  }
  return out;
}

void write_canonical(const Json& j, std::ostringstream& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // nlohmann::json keeps keys sorted
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(key).dump() << ": ";
        write_canonical(value, out, depth + 1);
      }
      out << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          write_canonical(j[i], out, depth + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        write_canonical(j[i], out, depth + 1);
      }
      out << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      double x = j.get<double>();
      out << (std::isfinite(x) ? format_double(x) : std::string("null"));
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  return rational_field(j);
}

template <>
Gaussian scalar_from_json<Gaussian>(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw UsageError("expected a Gaussian {\"re\": \"p/q\", \"im\": \"p/q\"}, got " + j.dump());
  return Gaussian(rational_field(j.at("re")), rational_field(j.at("im")));
}

template <>
Complex scalar_from_json<Complex>(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw UsageError("expected a complex [re, im] pair, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

Domain parse_domain(const std::string& name) {
  if (name == "rational") return Domain::rational;
  if (name == "gaussian") return Domain::gaussian;
  if (name == "complex") return Domain::complex;
  throw UsageError("unknown domain '" + name + "' (expected rational, gaussian or complex)");
}

AnyMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("matrix: expected a JSON object");
  for (const char* key : {"rows", "cols", "domain", "entries"})
    if (!j.contains(key)) throw UsageError(std::string("matrix: missing \"") + key + "\"");
  if (!j.at("rows").is_number_unsigned() || !j.at("cols").is_number_unsigned() || !j.at("domain").is_string())
    throw UsageError("matrix: \"rows\"/\"cols\" must be non-negative integers and \"domain\" a string");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  if (rows == 0 || cols == 0) throw UsageError("matrix: dimensions must be positive");
  switch (parse_domain(j.at("domain").get<std::string>())) {
    case Domain::rational:
      return typed_matrix<Rational>(j, rows, cols);
    case Domain::gaussian:
      return typed_matrix<Gaussian>(j, rows, cols);
    case Domain::complex:
      return typed_matrix<Complex>(j, rows, cols);
  }
  throw UsageError("matrix: unreachable domain");
}

AnyBasis basis_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("basis") ? j.at("basis") : j;
  if (!list.is_array() || list.empty()) throw UsageError("basis: expected a non-empty array of matrices");
  std::vector<AnyMatrix> members;
  for (const auto& m : list) members.push_back(matrix_from_json(m));
  return std::visit(
      [&](const auto& first) -> AnyBasis {
        using M = std::decay_t<decltype(first)>;
        std::vector<M> out;
        for (const auto& m : members) {
          if (!std::holds_alternative<M>(m)) throw UsageError("basis: all matrices must share one domain");
          out.push_back(std::get<M>(m));
        }
        return out;
      },
      members.front());
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string canonical_json(const Json& j) {
  std::ostringstream out;
  write_canonical(j, out, 0);
  out << "\n";
  return out.str();
}

}  // namespace rectpencil
