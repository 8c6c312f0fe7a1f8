#include <cmath>

#include "suites_internal.hpp"

namespace hk {

namespace suites {

Certificate verdict(const std::string& name, const std::string& anchor, bool ok, const std::string& why) {
  CertificateBuilder b(name, anchor, 0.0);
  if (ok)
    b.residual(0.0);
  else
    b.failure(why.empty() ? "check failed" : why);
  return b.finish();
}

Certificate renamed(Certificate c, const std::string& name) {
  c.check_name = name;
  return c;
}

}  // namespace suites

namespace {

struct Entry {
  SuiteInfo info;
  suites::Suite run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {{"weak-convex-dilation", "L_V omega0 = omega0 for the weak-convexity dilation, analytic and finite-difference",
        {"r_min", "r_max"}},
       suites::weak_convex_dilation},
      {{"weak-convex-flow", "RK4 flow of V from f = eps1 against the closed form", {"eps1", "eps2", "starts"}},
       suites::weak_convex_flow},
      {{"weak-convex-contact", "alpha1, alpha2, alpha2' contact; weak convexity of the twisted free boundary",
        {"eps1", "eps2", "R1", "R2", "R3", "delta"}},
       suites::weak_convex_contact},
      {{"twist-function", "twist function constraints", {"eps2", "delta", "working_s"}}, suites::twist},
      {{"dcp-formulas", "closed-form V- of a model pair against the per-point solve", {"A", "B", "C", "D"}},
       suites::dcp_formulas},
      {{"pair-geometry", "g and Z of the model pair and the handle pair against hand formulas",
        {"A", "B", "C", "D"}},
       suites::pair_geometry},
      {{"graph-transversality", "graph transversality: zero, too large, and prepared profiles",
        {"A", "B", "C", "D", "eps"}},
       suites::graph_transversality},
      {{"contact-pair-handle", "contact-pair handle construction and constants",
        {"A", "B", "C", "D", "eps2", "R1", "R2", "R3"}},
       suites::contact_pair_handle},
      {{"prepare-for-surgery", "radial enlargement to data prepared for surgery", {"A", "B", "C", "D", "eps"}},
       suites::prepare},
      {{"framing-calculus", "exact framing shifts", {"rounds"}}, suites::framing_calculus},
      {{"legendrian-pushoff", "transverse push-off of a Legendrian core", {"eps", "framing", "c1"}},
       suites::legendrian_pushoff},
      {{"weinstein-handles", "convex and concave Weinstein handles", {"eps1"}}, suites::weinstein},
      {{"examples", "unknot, Hopf link and surface diagrams through the pipeline", {}}, suites::examples},
  };
  return e;
}

}  // namespace

bool SuiteResult::pass() const {
  if (certificates.empty()) return false;
  for (const auto& c : certificates)
    if (!c.pass) return false;
  return true;
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> c = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return c;
}

std::string known_suites() {
  std::string s;
  for (const auto& e : entries()) s += (s.empty() ? "" : ", ") + e.info.id;
  return s;
}

SuiteResult run_suite(const std::string& id, const SuiteConfig& config) {
  for (const auto& e : entries()) {
    if (e.info.id != id) continue;
    for (const auto& [key, value] : config.params.values()) {
      bool ok = false;
      for (const auto& k : e.info.keys) ok = ok || k == key;
      if (!ok) throw UnknownParameter("unknown parameter for " + id + ": " + key);
    }
    SuiteResult r;
    r.id = id;
    try {
      r.certificates = e.run(config);
    } catch (const HandleRejected& ex) {
      r.certificates.push_back(ex.certificate);
    } catch (const ParameterError&) {
      throw;
    } catch (const Error& ex) {
      r.certificates.push_back(suites::verdict(id, "suite completes", false, ex.what()));
    }
    if (config.tolerance)
      for (auto& c : r.certificates) c = with_tolerance(std::move(c), *config.tolerance);
    return r;
  }
  throw UnknownSuite("unknown suite '" + id + "'; known: " + known_suites());
}

Certificate with_tolerance(Certificate c, double tol) {
  const double old = c.tolerance();
  if (!(old > 0)) return c;
  c.params["tolerance"] = tol;
  c.params["tolerance_override"] = true;
  const bool strict_failed = c.params.value("strict_failure", false);
  c.pass = c.sample_count > 0 && !strict_failed && c.max_violation <= tol;
  c.min_margin += tol - old;
  return c;
}

Certificate expect_rejection(const Certificate& inner, const std::string& name) {
  CertificateBuilder b(name, "rejected: " + inner.anchor, 0.0, inner.seed);
  if (inner.pass)
    b.failure(inner.check_name + " passed but should fail");
  else
    b.residual(0.0);
  b.param("inner_check", inner.check_name);
  b.param("inner_max_violation", std::isfinite(inner.max_violation) ? nlohmann::json(inner.max_violation) : nullptr);
  b.param("inner_note", inner.note);
  return b.finish();
}

SampleSpec suite_spec(const SampleSpec& base, int lattice, int halton) {
  SampleSpec s = base;
  s.lattice = lattice;
  s.halton = halton;
  return s;
}

}  // namespace hk
