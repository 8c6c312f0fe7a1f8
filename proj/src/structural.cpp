#include "hk/structural.hpp"

#include <cctype>

#include "hk/geom.hpp"

namespace hk {

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw ParameterError("empty rational");
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const boost::multiprecision::cpp_int p(text.substr(0, slash)), q(text.substr(slash + 1));
      if (q == 0) throw ParameterError("zero denominator in " + raw);
      return Rational(p, q);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits == "-" || digits == "+" || digits.empty()) throw ParameterError("bad number " + raw);
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
    return Rational(boost::multiprecision::cpp_int(digits), scale);
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception&) {
    throw ParameterError("not a rational number: " + raw);
  }
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

bool StructuralData::well_behaved() const { return B > 0 && C > 0; }

bool StructuralData::prepared_for_surgery() const {
  return well_behaved() && A == B && D > 0 && A * D > 1;
}

std::string StructuralData::str() const {
  return "(" + to_string(A) + ", " + to_string(B) + ", " + to_string(C) + ", " + to_string(D) + ")";
}

}  // namespace hk
