#include "hk/certificate.hpp"

#include <cmath>

#include "hk/geom.hpp"

namespace hk {

double Certificate::tolerance() const { return params.value("tolerance", 0.0); }

nlohmann::json Certificate::to_json() const {
  auto finite_or_null = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j;
  j["schema_version"] = kCertificateSchema;
  j["check_name"] = check_name;
  j["paper_anchor"] = anchor;
  j["sample_count"] = sample_count;
  j["max_violation"] = finite_or_null(max_violation);
  j["min_margin"] = finite_or_null(min_margin);
  j["verdict"] = pass ? "pass" : "fail";
  j["params"] = params;
  j["seed"] = seed;
  if (!note.empty()) j["note"] = note;
  return j;
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != kCertificateSchema)
    throw Error("certificate: unsupported schema version");
  Certificate c;
  c.check_name = j.at("check_name").get<std::string>();
  c.anchor = j.at("paper_anchor").get<std::string>();
  c.sample_count = j.at("sample_count").get<std::size_t>();
  const auto inf = std::numeric_limits<double>::infinity();
  c.max_violation = j.at("max_violation").is_null() ? inf : j.at("max_violation").get<double>();
  c.min_margin = j.at("min_margin").is_null() ? inf : j.at("min_margin").get<double>();
  c.pass = j.at("verdict").get<std::string>() == "pass";
  c.params = j.at("params");
  c.seed = j.at("seed").get<std::uint64_t>();
  c.note = j.value("note", "");
  return c;
}

CertificateBuilder::CertificateBuilder(std::string check_name, std::string anchor,
                                       double tolerance, std::uint64_t seed)
    : tolerance_(tolerance) {
  cert_.check_name = std::move(check_name);
  cert_.anchor = std::move(anchor);
  cert_.seed = seed;
  cert_.params["tolerance"] = tolerance;
}

void CertificateBuilder::record(double violation, double margin, const std::string& where) {
  ++cert_.sample_count;
  if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
  if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
  if (violation > cert_.max_violation) cert_.max_violation = violation;
  if (margin < cert_.min_margin) cert_.min_margin = margin;
  if (violation > tolerance_ && cert_.note.empty() && !where.empty()) cert_.note = where;
}

void CertificateBuilder::residual(double r, const std::string& where) {
  r = std::abs(r);
  record(r, tolerance_ - r, where);
}

void CertificateBuilder::positive(double value, const std::string& where) {
  double violation = 0.0;
  if (!(value > kStrictMargin)) {
    violation = std::max(kStrictMargin - value, std::numeric_limits<double>::min());
    if (!strict_failed_ && cert_.note.empty() && !where.empty()) cert_.note = where;
    strict_failed_ = true;
  }
  record(violation, value, where);
}

void CertificateBuilder::failure(const std::string& why) {
  record(std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), why);
}

void CertificateBuilder::param(const std::string& key, nlohmann::json value) {
  cert_.params[key] = std::move(value);
}

Certificate CertificateBuilder::finish() const {
  Certificate c = cert_;
  c.pass = c.sample_count > 0 && !strict_failed_ && c.max_violation <= tolerance_;
  if (c.sample_count == 0 && c.note.empty()) c.note = "no samples";
  if (strict_failed_) c.params["strict_failure"] = true;
  return c;
}

}  // namespace hk
