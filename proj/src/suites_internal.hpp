#pragma once

#include "hk/suites.hpp"

namespace hk::suites {

/// Single-verdict certificate.
Certificate verdict(const std::string& name, const std::string& anchor, bool ok, const std::string& why = {});
Certificate renamed(Certificate c, const std::string& name);

using Suite = std::vector<Certificate> (*)(const SuiteConfig&);

std::vector<Certificate> weak_convex_dilation(const SuiteConfig& cfg);
std::vector<Certificate> weak_convex_flow(const SuiteConfig& cfg);
std::vector<Certificate> weak_convex_contact(const SuiteConfig& cfg);
std::vector<Certificate> twist(const SuiteConfig& cfg);
std::vector<Certificate> dcp_formulas(const SuiteConfig& cfg);
std::vector<Certificate> pair_geometry(const SuiteConfig& cfg);
std::vector<Certificate> graph_transversality(const SuiteConfig& cfg);

std::vector<Certificate> contact_pair_handle(const SuiteConfig& cfg);
std::vector<Certificate> prepare(const SuiteConfig& cfg);
std::vector<Certificate> framing_calculus(const SuiteConfig& cfg);
std::vector<Certificate> legendrian_pushoff(const SuiteConfig& cfg);
std::vector<Certificate> weinstein(const SuiteConfig& cfg);
std::vector<Certificate> examples(const SuiteConfig& cfg);

}  // namespace hk::suites
