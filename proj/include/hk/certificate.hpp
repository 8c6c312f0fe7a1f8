// Pass/fail records produced by every verifier.
#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

namespace hk {

inline constexpr int kCertificateSchema = 1;

struct Certificate {
  std::string check_name;
  std::string anchor;  // the formula or statement being checked
  std::size_t sample_count = 0;
  double max_violation = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  bool pass = true;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string note;  // first failure, if any

  double tolerance() const;
  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);
};

/// Accumulates samples into a certificate.
///
/// Identity checks record a residual against `tolerance`. Strict inequality
/// checks record a value that must exceed kStrictMargin; their tolerance is 0.
class CertificateBuilder {
 public:
  CertificateBuilder(std::string check_name, std::string anchor, double tolerance,
                     std::uint64_t seed = 0);

  /// |lhs - rhs| style residual.
  void residual(double r, const std::string& where = {});
  /// Value required to be > kStrictMargin.
  void positive(double value, const std::string& where = {});
  /// A sample that could not be evaluated.
  void failure(const std::string& why);
  void param(const std::string& key, nlohmann::json value);

  Certificate finish() const;

 private:
  void record(double violation, double margin, const std::string& where);
  Certificate cert_;
  double tolerance_;
  bool strict_failed_ = false;
};

}  // namespace hk
