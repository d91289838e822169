#include "rectpencil/scalar.hpp"

#include <cctype>

namespace rectpencil {

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::rational: return "rational";
    case Domain::gaussian: return "gaussian";
    case Domain::complex: return "complex";
  }
  return "unknown";
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  std::size_t end = text.size();
  while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string s = text.substr(start, end - start);
  if (s.empty()) throw UsageError("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '/') {
      if (seen_slash) throw UsageError("malformed rational literal: " + text);
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw UsageError("malformed rational literal: " + text);
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) throw UsageError("malformed rational literal: " + text);
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw UsageError("malformed rational literal: " + text);
  if (sgn(q.get_den()) == 0) throw UsageError("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

template <class Part, class PartToString, class Sign>
std::string format_parts(const Part& re, const Part& im, PartToString str, Sign sign) {
  if (sign(im) == 0) return str(re);
  std::string imag;
  if (im == Part(1)) {
    imag = "i";
  } else if (im == Part(-1)) {
    imag = "-i";
  } else {
    imag = str(im) + "*i";
  }
  if (sign(re) == 0) return imag;
  if (sign(im) < 0) return "(" + str(re) + "-" + imag.substr(1) + ")";
  return "(" + str(re) + "+" + imag + ")";
}

}  // namespace

std::string ScalarTraits<Gaussian>::to_string(const Gaussian& x) {
  return format_parts(x.re, x.im, rational_to_string, [](const Rational& q) { return sgn(q); });
}

std::string ScalarTraits<Complex>::to_string(const Complex& x) {
  return format_parts(x.real(), x.imag(), format_double,
                      [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); });
}

}  // namespace rectpencil
