// Structural data (A, B, C, D) of a contact pair near a knot.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hk {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);
/// "p/q" or "p"; also accepts a decimal literal, taken exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// R_{alpha+} = A d/dmu + B d/dlambda and alpha^0 = C dmu + D dlambda.
struct StructuralData {
  Rational A, B, C, D;

  /// B > 0 and C > 0.
  bool well_behaved() const;
  /// Well-behaved with A = B, D > 0 and AD > 1.
  bool prepared_for_surgery() const;
  /// alpha^0(R_{alpha+}) = AC + BD.
  Rational g_plus() const { return A * C + B * D; }
  std::string str() const;
};

}  // namespace hk
