#include <sstream>

#include "hk/suites.hpp"

namespace hk {

void Params::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ParameterError("empty parameter key");
  values_[key] = value;
}

const std::string* Params::find(const std::string& key) const {
  read_.insert(key);
  auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

double parse_real(const std::string& text) {
  try {
    return to_double(parse_rational(text));
  } catch (const ParameterError&) {
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("not a real number: " + text);
}

long parse_integer(const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("not an integer: " + text);
}

Rational Params::rational(const std::string& key, const Rational& fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  try {
    return parse_rational(*v);
  } catch (const ParameterError& e) {
    throw ParameterError(key + ": " + e.what());
  }
}

double Params::real(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  try {
    return parse_real(*v);
  } catch (const ParameterError& e) {
    throw ParameterError(key + ": " + e.what());
  }
}

long Params::integer(const std::string& key, long fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  try {
    return parse_integer(*v);
  } catch (const ParameterError& e) {
    throw ParameterError(key + ": " + e.what());
  }
}

std::vector<long> Params::integers(const std::string& key, const std::vector<long>& fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  std::vector<long> out;
  std::stringstream ss(*v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_integer(item));
    } catch (const ParameterError& e) {
      throw ParameterError(key + ": " + e.what());
    }
  }
  return out;
}

std::string Params::choice(const std::string& key, const std::string& fallback,
                           const std::vector<std::string>& allowed) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  for (const auto& a : allowed)
    if (*v == a) return a;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw ParameterError(key + ": expected one of " + list + ", got " + *v);
}

StructuralData Params::data(const StructuralData& fallback) const {
  return StructuralData{rational("A", fallback.A), rational("B", fallback.B), rational("C", fallback.C),
                        rational("D", fallback.D)};
}

void Params::reject_unread() const {
  std::string unknown;
  for (const auto& [k, v] : values_)
    if (!read_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  if (!unknown.empty()) throw UnknownParameter("unknown parameter(s): " + unknown);
}

}  // namespace hk
