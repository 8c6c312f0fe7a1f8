// Named verification suites shared by the command line and the tests.
#pragma once

#include <map>
#include <optional>
#include <set>

#include "hk/surgery.hpp"

namespace hk {

/// A parameter key that the command or suite does not read.
class UnknownParameter : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Key-value parameters kept as text until read, so rationals stay exact.
class Params {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  Rational rational(const std::string& key, const Rational& fallback) const;
  double real(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  /// Comma-separated integers.
  std::vector<long> integers(const std::string& key, const std::vector<long>& fallback) const;
  std::string choice(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed) const;
  StructuralData data(const StructuralData& fallback) const;  // keys A, B, C, D

  /// Throws UnknownParameter naming every key that was set but never read.
  void reject_unread() const;

 private:
  const std::string* find(const std::string& key) const;
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> read_;
};

/// Real number: exact rational syntax first, then a decimal with exponent.
double parse_real(const std::string& text);
long parse_integer(const std::string& text);

struct SuiteConfig {
  Params params;
  SampleSpec spec;                   // seed and density; counts are chosen per suite
  std::optional<double> tolerance;  // replaces the tolerance of identity checks
};

struct SuiteResult {
  std::string id;
  std::vector<Certificate> certificates;
  bool pass() const;
};

struct SuiteInfo {
  std::string id;
  std::string summary;
  std::vector<std::string> keys;
};

const std::vector<SuiteInfo>& suite_catalog();
std::string known_suites();  // comma-separated ids

class UnknownSuite : public Error {
 public:
  using Error::Error;
};

SuiteResult run_suite(const std::string& id, const SuiteConfig& config);

/// Re-judges an identity certificate (tolerance > 0) against `tol`.
Certificate with_tolerance(Certificate c, double tol);
/// Passes exactly when `inner` fails.
Certificate expect_rejection(const Certificate& inner, const std::string& name);

/// Counts scaled by density; lattice^dim + halton points before filtering.
SampleSpec suite_spec(const SampleSpec& base, int lattice, int halton);

}  // namespace hk
