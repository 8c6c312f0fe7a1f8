#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hk::cli {

namespace {

bool emit_certificates(std::vector<Certificate>& certs, const RunConfig& cfg) {
  bool pass = !certs.empty();
  for (auto& c : certs) {
    if (cfg.tolerance) c = with_tolerance(std::move(c), *cfg.tolerance);
    pass = pass && c.pass;
  }
  return pass;
}

void warn_ignored(const RunConfig& cfg, Streams s, bool tolerance, bool csv) {
  if (tolerance && cfg.tolerance) s.err << cfg.command << ": --tolerance does not apply here and is ignored\n";
  if (csv && s.csv) s.err << cfg.command << ": no plot data for this command; --csv is ignored\n";
}

std::string normalized(std::string s) {
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, Streams s) {
  warn_ignored(cfg, s, false, true);
  const SuiteResult r = run_suite(cfg.target, SuiteConfig{cfg.params, cfg.spec, cfg.tolerance});
  for (const auto& c : r.certificates) s.out << c.to_json().dump() << '\n';
  s.err << "verify " << r.id << ": " << (r.pass() ? "pass" : "fail") << " (" << r.certificates.size()
        << " certificates)\n";
  return r.pass() ? 0 : 1;
}

int cmd_build_handle(const RunConfig& cfg, Streams s) {
  const Params& p = cfg.params;
  const std::string family = normalized(cfg.target);
  const long lines = p.integer("lines", 8), steps = p.integer("steps", 40);
  HandleDescriptor d;
  try {
    if (family == "weak-convex") {
      const double eps1 = p.real("eps1", -0.5), eps2 = p.real("eps2", 0.5), R1 = p.real("R1", 0.75),
                   R2 = p.real("R2", 1.0), R3 = p.real("R3", 1.25), delta = p.real("delta", 0.05);
      p.reject_unread();
      d = build_weak_convex_handle(eps1, eps2, R1, R2, R3, std::nullopt, delta, cfg.spec);
    } else if (family == "contact-pair") {
      const StructuralData data = p.data({Rational(2), Rational(2), Rational(1), Rational(1)});
      const double eps2 = p.real("eps2", 1.0), R1 = p.real("R1", 0.36), R2 = p.real("R2", 0.45),
                   R3 = p.real("R3", 0.9);
      p.reject_unread();
      d = build_contact_pair_handle(data, eps2, R1, R2, R3, std::nullopt, cfg.spec);
    } else if (family == "weinstein-convex" || family == "weinstein-concave") {
      const double eps1 = p.real("eps1", -0.5);
      p.reject_unread();
      d = build_weinstein_handle(family == "weinstein-convex" ? WeinsteinKind::convex : WeinsteinKind::concave, eps1,
                                 cfg.spec);
    } else {
      throw UsageError("unknown handle family '" + cfg.target +
                       "'; known: weak-convex, contact-pair, weinstein-convex, weinstein-concave");
    }
  } catch (const HandleRejected& e) {
    s.out << e.certificate.to_json().dump() << '\n';
    s.err << "build-handle: rejected: " << e.what() << '\n';
    return 1;
  }
  const bool pass = emit_certificates(d.certificates, cfg);
  s.out << d.to_json().dump(2) << '\n';
  if (s.csv) write_flow_lines_csv(d, *s.csv, static_cast<int>(lines), static_cast<int>(steps));
  s.err << "build-handle " << family << ": " << (pass ? "pass" : "fail") << '\n';
  return pass ? 0 : 1;
}

int cmd_prepare(const RunConfig& cfg, Streams s) {
  const StructuralData data = cfg.params.data({Rational(1), Rational(2), Rational(1), Rational(1)});
  const double eps = cfg.params.real("eps", 0.5);
  cfg.params.reject_unread();
  Preparation prep = prepare_for_surgery(data, eps, cfg.spec.seed);
  std::vector<Certificate> certs{prep.certificate};
  const bool pass = emit_certificates(certs, cfg);
  nlohmann::json j{{"schema_version", kCertificateSchema},
                   {"data", data.str()},
                   {"A0", to_string(prep.A0)},
                   {"delta", prep.delta},
                   {"eps", prep.eps},
                   {"h0", prep.h(0.0)},
                   {"prepared", prep.prepared.str()},
                   {"certificate", certs[0].to_json()}};
  s.out << j.dump(2) << '\n';
  if (s.csv) {
    *s.csv << "r,h,dh\n";
    for (int i = 0; i <= 200; ++i) {
      const double r = eps * i / 200;
      *s.csv << r << ',' << prep.h(r) << ',' << prep.h.deriv(r) << '\n';
    }
  }
  return pass ? 0 : 1;
}

int cmd_push_off(const RunConfig& cfg, Streams s) {
  const double eps = cfg.params.real("eps", 0.5), c1 = cfg.params.real("c1", 3.0);
  const long framing = cfg.params.integer("framing", -1);
  cfg.params.reject_unread();
  PushOff po = transverse_push_off(eps, framing, c1, cfg.spec);
  std::vector<Certificate> certs{po.certificate};
  const bool pass = emit_certificates(certs, cfg) && is_fat(po.reach, framing);
  nlohmann::json j{{"schema_version", kCertificateSchema},
                   {"eps", po.eps},
                   {"c1", po.c1},
                   {"c2", po.c2},
                   {"framing", po.framing},
                   {"reach", po.reach},
                   {"fat", is_fat(po.reach, framing)},
                   {"certificate", certs[0].to_json()}};
  s.out << j.dump(2) << '\n';
  if (s.csv) {
    *s.csv << "x,y";
    for (const auto& n : po.map.target->coord_names) *s.csv << ",image_" << n;
    *s.csv << ",h\n";
    for (int i = -10; i <= 10; ++i)
      for (int k = -10; k <= 10; ++k) {
        const double x = 0.19 * i, y = 0.19 * k;
        if (x * x + y * y >= 4) continue;
        *s.csv << x << ',' << y;
        for (double v : po.map.eval({x, y, 0.0})) *s.csv << ',' << v;
        *s.csv << ',' << po.h(x, y) << '\n';
      }
  }
  return pass ? 0 : 1;
}

namespace {

SurgeryDiagram surface_diagram(const Params& p) {
  const long g = p.integer("g", 1), n = p.integer("n", 1);
  if (g < 0 || n < 1 || g > 1000 || n > 1000) throw ParameterError("need 0 <= g and 1 <= n (at most 1000)");
  const std::vector<long> framings = p.integers("framings", std::vector<long>(n, 1));
  std::vector<int> leaves;
  for (long c : p.integers("leaves", {})) leaves.push_back(static_cast<int>(c));
  return emit_surface(static_cast<int>(g), static_cast<int>(n), framings, leaves);
}

}  // namespace

int cmd_emit_diagram(const RunConfig& cfg, Streams s) {
  warn_ignored(cfg, s, true, true);
  const Params& p = cfg.params;
  const std::string format = p.choice("format", "json", {"json", "text"});
  SurgeryDiagram d;
  if (cfg.target == "unknot") {
    d = emit_unknot(p.integer("F", 1));
  } else if (cfg.target == "hopf") {
    d = emit_hopf(p.integer("F1", 0), p.integer("F2", 0));
  } else if (cfg.target == "surface") {
    d = surface_diagram(p);
  } else {
    throw UsageError("unknown diagram model '" + cfg.target + "'; known: unknot, hopf, surface");
  }
  p.reject_unread();
  if (format == "text")
    s.out << d.text();
  else
    s.out << d.to_json().dump(2) << '\n';
  return d.admissible ? 0 : 1;
}

int cmd_pipeline(const RunConfig& cfg, Streams s) {
  warn_ignored(cfg, s, true, true);
  const Params& p = cfg.params;
  if (cfg.target == "surface") {
    const SurgeryDiagram d = surface_diagram(p);
    p.reject_unread();
    nlohmann::json stage{{"stage", 8},
                         {"name", "diagram"},
                         {"pass", d.admissible},
                         {"detail", {{"note", "surface fibrations are assembled combinatorially from g, n, "
                                              "binding framings and leaf counts"}}},
                         {"certificates", nlohmann::json::array()}};
    nlohmann::json j{{"schema_version", kCertificateSchema},
                     {"model", "surface"},
                     {"genus", p.integer("g", 1)},
                     {"boundary_components", p.integer("n", 1)},
                     {"stages", nlohmann::json::array({stage})},
                     {"pass", d.admissible},
                     {"halted_at", d.admissible ? nlohmann::json() : nlohmann::json(4)},
                     {"halt_reason", d.admissible ? "" : d.reason},
                     {"diagram", d.to_json()},
                     {"handles", nlohmann::json::array()}};
    s.out << j.dump(2) << '\n';
    return d.admissible ? 0 : 1;
  }
  FibrationModel model;
  std::vector<long> fallback;
  if (cfg.target == "unknot") {
    model = unknot_model(cfg.spec);
    fallback = {1};
  } else if (cfg.target == "hopf") {
    model = hopf_model(cfg.spec);
    fallback = {0, 0};
  } else {
    throw UsageError("unknown pipeline model '" + cfg.target + "'; known: unknot, hopf, surface");
  }
  PipelineOptions opt;
  opt.spec = cfg.spec;
  opt.eps = p.real("eps", opt.eps);
  const std::vector<long> framings = p.integers("framings", fallback);
  p.reject_unread();
  const PipelineReport r = concavity_pipeline(std::move(model), framings, opt);
  s.out << r.to_json().dump(2) << '\n';
  if (r.pass())
    s.err << "pipeline " << cfg.target << ": pass\n";
  else
    s.err << "pipeline " << cfg.target << ": halted at stage " << r.halted_at.value_or(0) << ": " << r.halt_reason
          << '\n';
  return r.pass() ? 0 : 1;
}

int run_command(const RunConfig& cfg, Streams s) {
  try {
    if (cfg.command == "verify") return cmd_verify(cfg, s);
    if (cfg.command == "build-handle") return cmd_build_handle(cfg, s);
    if (cfg.command == "prepare") return cmd_prepare(cfg, s);
    if (cfg.command == "push-off") return cmd_push_off(cfg, s);
    if (cfg.command == "emit-diagram") return cmd_emit_diagram(cfg, s);
    if (cfg.command == "pipeline") return cmd_pipeline(cfg, s);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const UnknownSuite& e) {
    s.err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnknownParameter& e) {
    s.err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    s.err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    s.err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hk::cli
