#include <cmath>
#include <random>

#include "hk/models.hpp"
#include "suites_internal.hpp"

namespace hk::suites {

namespace {

const StructuralData kModel{Rational(2), Rational(2), Rational(1), Rational(1)};

std::string join(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

}  // namespace

std::vector<Certificate> contact_pair_handle(const SuiteConfig& cfg) {
  const auto& p = cfg.params;
  const StructuralData data = p.data(kModel);
  const double eps2 = p.real("eps2", 1.0), R1 = p.real("R1", 0.36), R2 = p.real("R2", 0.45), R3 = p.real("R3", 0.9);
  const HandleDescriptor d = build_contact_pair_handle(data, eps2, R1, R2, R3, std::nullopt, cfg.spec);
  std::vector<Certificate> out = d.certificates;

  const double A = to_double(data.A), C = to_double(data.C), D = to_double(data.D);
  CertificateBuilder b("cp:constants", "eps1 = 2/A - 2D; f = eps1 reaches f = eps2 at time T under V+", 1e-12,
                       cfg.spec.seed);
  b.residual(d.eps1 - (2 / A - 2 * D), "eps1");
  // Along V+, f + 2D scales by e^t.
  b.residual((d.eps1 + 2 * D) * std::exp(d.T) - 2 * D - eps2, "T");
  b.residual(d.R - 2 * eps2 / (A * (2 * D + eps2)), "R");
  for (const auto& c : d.certificates)
    if (c.check_name == "cp:free-boundary-transversality")
      b.residual(c.params.value("radius_bound", 0.0) - std::sqrt(C / (A * (C + D))), "radius bound");
  b.param("eps1", d.eps1);
  b.param("T", d.T);
  b.param("R", d.R);
  out.push_back(b.finish());
  return out;
}

std::vector<Certificate> prepare(const SuiteConfig& cfg) {
  const StructuralData data = cfg.params.data({Rational(1), Rational(2), Rational(1), Rational(1)});
  const double eps = cfg.params.real("eps", 0.5);
  const Preparation prep = prepare_for_surgery(data, eps, cfg.spec.seed);
  std::vector<Certificate> out{prep.certificate};

  CertificateBuilder core("prepare:core-value", "e^{h(0)} = B / A0", 1e-10, cfg.spec.seed);
  core.residual(std::exp(prep.h(0.0)) - to_double(data.B / prep.A0));
  core.param("A0", to_string(prep.A0));
  out.push_back(core.finish());

  CertificateBuilder sup("prepare:support", "h = 0 near r = eps", 0.0, cfg.spec.seed);
  const double end = prep.certificate.params.value("support_end", eps);
  sup.positive(eps - end, "support end " + std::to_string(end));
  for (int i = 0; i <= 100; ++i) {
    const double r = end + (eps - end) * i / 100;
    sup.residual(prep.h(r), "at r = " + std::to_string(r));
  }
  out.push_back(sup.finish());

  // Re-derive the data of e^h alpha+ and alpha^0 on {r <= delta}.
  auto t = models::solid_torus("N", 1.0);
  const ProfileFunction h = prep.h;
  ScalarField eh{t, [h](const Coords& y) { return std::exp(h(y[0])); }, {}, "e^h"};
  const auto plus = multiply(eh, models::model_alpha_plus(t, to_double(data.A), to_double(data.B)));
  const auto zero = models::constant_form(t, to_double(data.C), to_double(data.D));
  const double hi = 0.9 * prep.delta;
  const SampleSet near = sample_box(t, {{std::min(0.01, hi / 2), hi}, {0, kTwoPi}, {0, kTwoPi}}, cfg.spec);
  const DerivedData dd = derive_structural_data(plus, zero, near);
  out.push_back(renamed(dd.certificate, "prepare:rederived"));
  const bool ok = dd.data.A == prep.A0 && dd.data.B == prep.A0 && dd.data.prepared_for_surgery();
  out.push_back(verdict("prepare:rederived-prepared", "re-derived data is (A0, A0, C, D) and prepared for surgery",
                        ok, "re-derived " + dd.data.str() + ", A0 = " + to_string(prep.A0)));
  return out;
}

std::vector<Certificate> framing_calculus(const SuiteConfig& cfg) {
  const long rounds = cfg.params.integer("rounds", 1000);
  if (rounds < 1) throw ParameterError("rounds must be positive");
  std::mt19937_64 rng(cfg.spec.seed);
  std::uniform_int_distribution<long> num(-50, 50), pos(1, 50), den(1, 12);
  CertificateBuilder b("framing:round-trip",
                       "shift_framing is a Z-action: shift(0) = id, shift(j) shift(k) = shift(j + k), AC + BD fixed",
                       0.0, cfg.spec.seed);
  for (long i = 0; i < rounds; ++i) {
    const StructuralData d{Rational(num(rng), den(rng)), Rational(pos(rng), den(rng)), Rational(pos(rng), den(rng)),
                           Rational(num(rng), den(rng))};
    const long j = num(rng), k = num(rng);
    const StructuralData a = shift_framing(shift_framing(d, j), k), c = shift_framing(d, j + k);
    const StructuralData back = shift_framing(shift_framing(d, k), -k), id = shift_framing(d, 0);
    const bool exact = a.A == c.A && a.B == c.B && a.C == c.C && a.D == c.D && back.A == d.A && back.B == d.B &&
                       back.C == d.C && back.D == d.D && id.A == d.A && id.D == d.D &&
                       shift_framing(d, k).g_plus() == d.g_plus();
    if (exact)
      b.residual(0.0);
    else
      b.failure("data " + d.str() + " with shifts " + std::to_string(j) + ", " + std::to_string(k));
  }
  std::vector<Certificate> out{b.finish()};
  CertificateBuilder f("framing:coordinates", "F_{mu - k lambda} = F_mu + k", 0.0, cfg.spec.seed);
  for (long k = -5; k <= 5; ++k) {
    const Framing s = shift_coordinates(shift_coordinates(Framing{"mu", 0}, k), -k);
    f.residual(static_cast<double>(shift_coordinates(Framing{"mu", 0}, k).offset - k));
    f.residual(static_cast<double>(s.offset));
  }
  out.push_back(f.finish());
  return out;
}

std::vector<Certificate> legendrian_pushoff(const SuiteConfig& cfg) {
  const double eps = cfg.params.real("eps", 0.5), c1 = cfg.params.real("c1", 3.0);
  const long framing = cfg.params.integer("framing", -1);
  const PushOff po = transverse_push_off(eps, framing, c1, cfg.spec);
  std::vector<Certificate> out{po.certificate};
  CertificateBuilder fat("pushoff:fatness", "normal coordinates reach r = e^F", 0.0, cfg.spec.seed);
  fat.positive(po.reach - std::exp(static_cast<double>(framing)), "reach " + std::to_string(po.reach));
  fat.param("reach", po.reach);
  fat.param("framing", framing);
  out.push_back(fat.finish());
  // For phi(x, y) = (c2/(c1 - x), c2 y) the primitive of beta_disk - phi^* beta_leg is c1 y - x y/2.
  CertificateBuilder prim("pushoff:primitive", "h = c1 y - x y / 2", 1e-10, cfg.spec.seed);
  for (int i = -9; i <= 9; ++i)
    for (int j = -9; j <= 9; ++j) {
      const double x = 0.2 * i, y = 0.2 * j;
      if (x * x + y * y >= 4) continue;
      prim.residual(po.h(x, y) - (po.c1 * y - 0.5 * x * y));
    }
  out.push_back(prim.finish());
  return out;
}

std::vector<Certificate> weinstein(const SuiteConfig& cfg) {
  const double eps1 = cfg.params.real("eps1", -0.5);
  std::vector<Certificate> out;
  for (auto kind : {WeinsteinKind::convex, WeinsteinKind::concave}) {
    const HandleDescriptor d = build_weinstein_handle(kind, eps1, cfg.spec);
    const std::string prefix = kind == WeinsteinKind::convex ? "convex/" : "concave/";
    for (const auto& c : d.certificates) out.push_back(renamed(c, prefix + c.check_name));
  }
  return out;
}

std::vector<Certificate> examples(const SuiteConfig& cfg) {
  PipelineOptions opt;
  opt.spec = cfg.spec;
  std::vector<Certificate> out;
  struct Case {
    const char* name;
    bool hopf;
    std::vector<long> framings;
    bool accept;
  };
  for (const Case& c : {Case{"examples:unknot+1", false, {1}, true}, Case{"examples:hopf(0,0)", true, {0, 0}, true},
                        Case{"examples:unknot0", false, {0}, false}, Case{"examples:hopf(-1,0)", true, {-1, 0}, false}}) {
    const PipelineReport r = concavity_pipeline(c.hopf ? hopf_model(cfg.spec) : unknot_model(cfg.spec), c.framings, opt);
    const bool ok = c.accept ? r.pass() && r.diagram && r.diagram->admissible : r.halted_at && *r.halted_at == 4;
    std::string why = r.pass() ? "pipeline passed" : "halted at stage " + std::to_string(r.halted_at.value_or(0)) +
                                                         ": " + r.halt_reason;
    Certificate cert = verdict(c.name,
                               std::string(c.accept ? "accepted" : "rejected at the positivity stage") +
                                   " with framings " + join(c.framings),
                               ok, why);
    cert.params["halted_at"] = r.halted_at ? nlohmann::json(*r.halted_at) : nullptr;
    cert.params["halt_reason"] = r.halt_reason;
    out.push_back(cert);
  }

  CertificateBuilder s("examples:surface", "surface(g, n) diagram has 2g + n - 1 zero-framed ambient unknots", 0.0,
                       cfg.spec.seed);
  for (int g = 0; g <= 3; ++g)
    for (int n = 1; n <= 3; ++n) {
      const SurgeryDiagram d = emit_surface(g, n, std::vector<long>(n, 1), {1});
      long zero = 0;
      for (const auto& c : d.components) zero += c.role == ComponentRole::ambient && c.framing == 0;
      s.residual(static_cast<double>(zero - (2 * g + n - 1)), "g = " + std::to_string(g) + ", n = " + std::to_string(n));
    }
  out.push_back(s.finish());
  return out;
}

}  // namespace hk::suites
