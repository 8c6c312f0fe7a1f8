#include <cmath>
#include <sstream>

#include "hk/models.hpp"
#include "hk/surgery.hpp"

namespace hk {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// alpha = 1/2 (r^2 dmu + (2 - r^2) dlambda) near either Hopf component of S^3.
DifferentialForm local_s3_alpha(const ChartPtr& c) {
  return make_form(
      c, 1, [](const Coords& y) { return Coords{0, 0.5 * y[0] * y[0], 1 - 0.5 * y[0] * y[0]}; },
      [](const Coords& y) {
        Matrix p = Matrix::Zero(3, 3);
        p(1, 0) = y[0];
        p(2, 0) = -y[0];
        return p;
      },
      "alpha");
}

VectorField constant_field(const ChartPtr& c, Coords v, const std::string& label) {
  const int n = static_cast<int>(v.size());
  return make_field(
      c, [v](const Coords&) { return v; }, [n](const Coords&) { return Matrix(Matrix::Zero(n, n)); }, {}, label);
}

DifferentialForm constant_1form(const ChartPtr& c, Coords a, const std::string& label) {
  const int n = static_cast<int>(a.size());
  return make_form(
      c, 1, [a](const Coords&) { return a; }, [n](const Coords&) { return Matrix(Matrix::Zero(n, n)); }, label);
}

// Fiber {p = const} near the knot, parametrized by (r, lambda).
ChartMap page_map(const ChartPtr& local, double mu_per_lambda, const std::string& tag) {
  auto param = make_chart("page-" + tag, {"r", "lambda"}, {false, true},
                          [](const Coords& u) { return u[0] > 0 && u[0] < kSqrt2; });
  return ChartMap{param, local,
                  [mu_per_lambda](const Coords& u) { return Coords{u[0], 0.7 + mu_per_lambda * u[1], u[1]}; },
                  [mu_per_lambda](const Coords&) {
                    Matrix j = Matrix::Zero(3, 2);
                    j(0, 0) = 1;
                    j(1, 1) = mu_per_lambda;
                    j(2, 1) = 1;
                    return j;
                  },
                  "page"};
}

FibrationComponent component(const std::string& tag, Coords dp, double mu_per_lambda,
                             std::function<Coords(const Coords&)> from_global) {
  FibrationComponent c;
  c.tag = tag;
  c.chart = models::solid_torus("nu-" + tag, kSqrt2);
  c.alpha = local_s3_alpha(c.chart);
  c.v = constant_field(c.chart, {0, 1, 1}, "V");
  c.dp = constant_1form(c.chart, dp, "dp");
  c.page = page_map(c.chart, mu_per_lambda, tag);
  c.from_global = std::move(from_global);
  return c;
}

FibrationModel s3_base(const std::string& name, Coords dp, const SampleSpec& spec) {
  FibrationModel m;
  m.name = name;
  m.chart = models::s3();
  m.alpha = models::s3_alpha(m.chart);
  m.v = constant_field(m.chart, {0, 1, 1}, "R_alpha");
  m.dp = constant_1form(m.chart, dp, "dp");
  m.samples = sample_box(m.chart, {{0.02, kSqrt2 - 0.02}, {0, kTwoPi}, {0, kTwoPi}}, spec);
  return m;
}

std::string where(const Coords& x) {
  std::ostringstream os;
  os << "at (";
  for (std::size_t k = 0; k < x.size(); ++k) os << (k ? ", " : "") << x[k];
  os << ")";
  return os.str();
}

double max_gap(const Coords& a, const Coords& b) {
  double g = 0;
  for (std::size_t k = 0; k < a.size(); ++k) g = std::max(g, std::abs(a[k] - b[k]));
  return g;
}

SampleSet local_samples(const ChartPtr& c, const SampleSpec& spec) {
  return sample_box(c, {{0.05, 1.0}, {0, kTwoPi}, {0, kTwoPi}}, spec);
}

}  // namespace

FibrationModel unknot_model(const SampleSpec& spec) {
  FibrationModel m = s3_base("unknot", {0, 1, 0}, spec);
  // Pages {theta1 = const}; normal coordinates (r1, theta1, theta2).
  m.components.push_back(component("unknot", {0, 1, 0}, 0.0, [](const Coords& x) { return x; }));
  m.link_radius = [](const Coords& x) { return x[0]; };
  return m;
}

FibrationModel hopf_model(const SampleSpec& spec) {
  FibrationModel m = s3_base("hopf", {0, 1, 1}, spec);
  // Pages {theta1 + theta2 = const}; normal coordinates (r1, theta1, theta2)
  // and (r2, theta2, theta1).
  m.components.push_back(component("hopf-1", {0, 1, 1}, -1.0, [](const Coords& x) { return x; }));
  m.components.push_back(component("hopf-2", {0, 1, 1}, -1.0, [](const Coords& x) {
    return Coords{std::sqrt(2 - x[0] * x[0]), x[2], x[1]};
  }));
  m.link_radius = [](const Coords& x) { return std::min(x[0], std::sqrt(2 - x[0] * x[0])); };
  return m;
}

Certificate check_nicely_fibered(FibrationModel& m) {
  CertificateBuilder b("nicely-fibered", "V transverse to fibers; dr(V) = 0; V, dp invariant; foliation points inward",
                       1e-9, m.samples.seed);
  m.dp_pairing.clear();
  for (const auto& x : m.samples.points) {
    const double v = m.dp.apply(x, {m.v(x)});
    m.dp_pairing.push_back(v);
    b.positive(v, "dp(V) " + where(x));
  }
  m.slopes.clear();
  SampleSpec spec;
  spec.seed = m.samples.seed;
  for (const auto& c : m.components) {
    const SampleSet s = local_samples(c.chart, spec);
    const Coords v0 = c.v(s.points.front()), p0 = c.dp(s.points.front());
    for (const auto& y : s.points) {
      const Coords v = c.v(y), p = c.dp(y);
      b.residual(std::abs(v[0]), c.tag + " dr(V) " + where(y));
      b.residual(max_gap(v, v0), c.tag + " V invariance " + where(y));
      b.residual(max_gap(p, p0), c.tag + " dp invariance " + where(y));
      b.residual(std::abs(p[0]), c.tag + " dp(d/dr) " + where(y));
    }
    SampleSpec ps = spec;
    ps.halton = 100;
    const SampleSet pages = sample_box(c.page.source, {{0.05, 0.9}, {0, kTwoPi}}, ps);
    for (const auto& f : characteristic_foliation(c.page, c.alpha, c.v, pages)) {
      if (f.singular) {
        b.failure(c.tag + " singular characteristic foliation");
        continue;
      }
      b.positive(-f.direction[0], c.tag + " inward foliation");
    }
    // Fibers a dmu + b dlambda = 0 have slope dmu/dlambda = -b/a.
    if (std::abs(p0[1]) < 1e-12) {
      m.slopes.push_back(std::nullopt);
    } else {
      const double s = -p0[2] / p0[1];
      auto q = rational_approximation(s);
      m.slopes.push_back(q ? *q : Rational(s));
    }
  }
  nlohmann::json slopes = nlohmann::json::array();
  for (const auto& s : m.slopes) slopes.push_back(to_string(s));
  b.param("slopes", slopes);
  return b.finish();
}

nlohmann::json PipelineReport::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : stages) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : s.certificates) certs.push_back(c.to_json());
    st.push_back({{"stage", s.index}, {"name", s.name}, {"pass", s.pass}, {"detail", s.detail},
                  {"certificates", certs}});
  }
  nlohmann::json j{{"schema_version", kCertificateSchema}, {"model", model}, {"framings", framings},
                   {"stages", st}, {"pass", pass()}};
  j["halted_at"] = halted_at ? nlohmann::json(*halted_at) : nlohmann::json();
  j["halt_reason"] = halt_reason;
  j["diagram"] = diagram ? diagram->to_json() : nlohmann::json();
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& h : handles) hs.push_back(h.to_json());
  j["handles"] = hs;
  return j;
}

namespace {

struct HandleParams {
  double eps2, R1, R2, R3;
};

// Radii just inside the open constraints for prepared data (A, A, C, D).
HandleParams handle_params(const StructuralData& d) {
  const double A = to_double(d.A), C = to_double(d.C), D = to_double(d.D);
  HandleParams p;
  p.R2 = 0.9 * std::sqrt(C / (A * (C + D)));
  p.eps2 = std::min(C, 1.0);
  auto R = [&] { return p.eps2 / (A * (D + p.eps2 / 2)); };
  for (int i = 0; i < 60 && R() > 0.5 * p.R2; ++i) p.eps2 /= 2;
  p.R1 = 0.5 * (R() + p.R2);
  p.R3 = p.R2 + (p.R2 - p.R1);
  return p;
}

SurgeryDiagram final_diagram(const FibrationModel& m, const std::vector<long>& F) {
  if (m.name == "unknot") return emit_unknot(F[0]);
  if (m.name == "hopf") return emit_hopf(F[0], F[1]);
  SurgeryDiagram d;
  for (std::size_t i = 0; i < F.size(); ++i) d.components.push_back({m.components[i].tag, F[i], ComponentRole::surgered});
  for (std::size_t i = 0; i < F.size(); ++i)
    if (!positivity_wrt_fibration(m.slopes[i], F[i])) {
      d.admissible = false;
      d.reason = "framing on " + m.components[i].tag + " not above fiber slope";
    }
  return d;
}

}  // namespace

PipelineReport concavity_pipeline(FibrationModel m, const std::vector<long>& framings, const PipelineOptions& opt) {
  PipelineReport rep;
  rep.model = m.name;
  rep.framings = framings;
  if (framings.size() != m.components.size())
    throw ParameterError("concavity_pipeline: one framing per link component");
  const std::size_t n = m.components.size();
  auto halt = [&rep](PipelineStage& s, const std::string& why) {
    s.pass = false;
    rep.stages.push_back(s);
    rep.halted_at = s.index;
    rep.halt_reason = s.name + ": " + why;
    return rep;
  };

  // 1. alpha+ = g alpha with alpha+(V) = 1, V rescaled so that g > 1.
  PipelineStage s1{1, "g-rescale", false, {}, {}};
  {
    Certificate nice = check_nicely_fibered(m);
    s1.certificates.push_back(nice);
    if (!nice.pass) return halt(s1, "model is not nicely fibered: " + nice.note);
  }
  double av_min = INFINITY, av_max = -INFINITY;
  for (const auto& x : m.samples.points) {
    const double a = m.alpha.apply(x, {m.v(x)});
    av_min = std::min(av_min, a);
    av_max = std::max(av_max, a);
  }
  const double flip = av_max < 0 ? -1.0 : 1.0;
  if (av_min * av_max <= 0) return halt(s1, "alpha(V) changes sign");
  // g = 1/alpha(kappa V); kappa = min g / 2 gives g >= 2.
  const double g_min0 = 1 / (flip > 0 ? av_max : -av_min);
  const double kappa = flip * g_min0 / 2;
  auto g_of = [&m, kappa](const Coords& x) { return 1 / (kappa * m.alpha.apply(x, {m.v(x)})); };
  {
    CertificateBuilder b("g-rescale", "alpha+ = g alpha, alpha+(V) = 1, g > 1", 0.0, opt.spec.seed);
    double gmin = INFINITY;
    for (const auto& x : m.samples.points) {
      const double g = g_of(x);
      gmin = std::min(gmin, g);
      b.positive(g - 1, "g > 1 " + where(x));
    }
    b.param("kappa", kappa);
    b.param("g_min", gmin);
    s1.certificates.push_back(b.finish());
    s1.detail = {{"kappa", kappa}, {"g_min", gmin}};
  }
  s1.pass = s1.certificates.back().pass;
  if (!s1.pass) return halt(s1, "g > 1 not reached");
  rep.stages.push_back(s1);

  // 2. c with c dp(V) > 1.
  PipelineStage s2{2, "c-selection", false, {}, {}};
  double dpv_min = INFINITY;
  for (const auto& x : m.samples.points) dpv_min = std::min(dpv_min, kappa * m.dp.apply(x, {m.v(x)}));
  if (!(dpv_min > 0)) return halt(s2, "dp(V) not positive");
  const Rational c = [&] {
    auto q = rational_approximation(2 / dpv_min);
    return q ? *q : Rational(2 / dpv_min);
  }();
  {
    CertificateBuilder b("c-selection", "c dp(V) > 1", 0.0, opt.spec.seed);
    for (const auto& x : m.samples.points) b.positive(to_double(c) * kappa * m.dp.apply(x, {m.v(x)}) - 1, where(x));
    b.param("c", to_string(c));
    b.param("min_margin_dpV", dpv_min);
    s2.certificates.push_back(b.finish());
    s2.detail = {{"c", to_string(c)}, {"min_dpV", dpv_min}};
  }
  s2.pass = s2.certificates.back().pass;
  if (!s2.pass) return halt(s2, "c dp(V) > 1 fails");
  rep.stages.push_back(s2);

  // 3. Structural data per component.
  PipelineStage s3{3, "structural-data", false, {}, {}};
  std::vector<StructuralData> data;
  std::vector<bool> flipped;
  for (const auto& comp : m.components) {
    const DifferentialForm& a = comp.alpha;
    const VectorField& v = comp.v;
    DifferentialForm plus = make_form(comp.chart, 1, [a, v, kappa](const Coords& y) {
      const double s = 1 / (kappa * a.apply(y, {v(y)}));
      Coords out = a(y);
      for (double& t : out) t *= s;
      return out;
    });
    DifferentialForm zero = scale(comp.dp, to_double(c));
    try {
      DerivedData d = derive_structural_data(plus, zero, local_samples(comp.chart, opt.spec));
      d.certificate.check_name += ":" + comp.tag;
      s3.certificates.push_back(d.certificate);
      data.push_back(d.data);
      flipped.push_back(d.orientation_flipped);
      s3.detail[comp.tag] = {{"A", to_string(d.data.A)}, {"B", to_string(d.data.B)}, {"C", to_string(d.data.C)},
                             {"D", to_string(d.data.D)}, {"orientation_flipped", d.orientation_flipped}};
      if (!d.data.well_behaved()) return halt(s3, comp.tag + " data " + d.data.str() + " has B <= 0 or C <= 0");
    } catch (const Error& e) {
      return halt(s3, comp.tag + ": " + e.what());
    }
  }
  s3.pass = true;
  rep.stages.push_back(s3);

  // 4. Framing shifts: D > 0 exactly when the framing exceeds the fiber slope.
  PipelineStage s4{4, "framing-shift", false, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const Slope& sp = m.slopes[i];
    const bool positive = positivity_wrt_fibration(sp, framings[i]);
    StructuralData shifted = shift_framing(data[i], framings[i]);
    s4.detail[m.components[i].tag] = {{"slope", to_string(sp)}, {"framing", framings[i]},
                                      {"positive", positive}, {"shifted", shifted.str()}};
    if (!positive || !(shifted.D > 0))
      return halt(s4, "framing " + std::to_string(framings[i]) + " on " + m.components[i].tag +
                          " is not positive with respect to the fibration (slope " + to_string(sp) + "), D = " +
                          to_string(shifted.D));
    data[i] = shifted;
  }
  s4.pass = true;
  rep.stages.push_back(s4);

  // 5-7. alpha^0 -> k alpha^0 with BD >= 1.1, preparation, handles. k doubles
  // if a handle is rejected.
  Rational k(1);
  for (const auto& d : data)
    while (d.B * d.D * k < Rational(11, 10)) k *= 2;
  std::vector<Preparation> preps;
  PipelineStage s5, s6, s7;
  for (int attempt = 0;; ++attempt) {
    s5 = {5, "k-scaling", true, {{"k", to_string(k)}, {"attempt", attempt}}, {}};
    s6 = {6, "prepare-for-surgery", false, {}, {}};
    s7 = {7, "contact-pair-handles", false, {}, {}};
    preps.clear();
    rep.handles.clear();
    std::vector<StructuralData> scaled;
    for (const auto& d : data) scaled.push_back(StructuralData{d.A, d.B, d.C * k, d.D * k});
    bool ok6 = true;
    std::string why;
    for (std::size_t i = 0; i < n && ok6; ++i) {
      try {
        Preparation p = prepare_for_surgery(scaled[i], opt.eps, opt.spec.seed);
        p.certificate.check_name += ":" + m.components[i].tag;
        s6.certificates.push_back(p.certificate);
        s6.detail[m.components[i].tag] = {{"A0", to_string(p.A0)}, {"delta", p.delta},
                                          {"prepared", p.prepared.str()}};
        if (!p.certificate.pass) {
          ok6 = false;
          why = m.components[i].tag + ": " + p.certificate.note;
        }
        preps.push_back(p);
      } catch (const Error& e) {
        ok6 = false;
        why = m.components[i].tag + ": " + e.what();
      }
    }
    if (!ok6) {
      rep.stages.push_back(s5);
      return halt(s6, why);
    }
    s6.pass = true;
    bool ok7 = true;
    for (std::size_t i = 0; i < n && ok7; ++i) {
      const HandleParams hp = handle_params(preps[i].prepared);
      try {
        HandleDescriptor hd = build_contact_pair_handle(preps[i].prepared, hp.eps2, hp.R1, hp.R2, hp.R3,
                                                        std::nullopt, opt.spec);
        s7.detail[m.components[i].tag] = {{"eps2", hp.eps2}, {"R1", hp.R1}, {"R2", hp.R2}, {"R3", hp.R3},
                                          {"T", hd.T}, {"R", hd.R}};
        rep.handles.push_back(std::move(hd));
      } catch (const HandleRejected& e) {
        ok7 = false;
        why = m.components[i].tag + ": " + e.what();
        s7.certificates.push_back(e.certificate);
      } catch (const Error& e) {
        ok7 = false;
        why = m.components[i].tag + ": " + e.what();
      }
    }
    if (ok7) {
      s7.pass = true;
      break;
    }
    if (attempt >= 5) {
      rep.stages.push_back(s5);
      rep.stages.push_back(s6);
      return halt(s7, why);
    }
    k *= 2;
  }
  for (const auto& hd : rep.handles) {
    Certificate digest;
    digest.check_name = "handle:" + to_string(hd.family);
    digest.pass = hd.all_pass();
    digest.sample_count = static_cast<long>(hd.certificates.size());
    s7.certificates.push_back(digest);
  }
  rep.stages.push_back(s5);
  rep.stages.push_back(s6);
  rep.stages.push_back(s7);

  // 8. Surgery diagram.
  PipelineStage s8{8, "surgery-diagram", false, {}, {}};
  rep.diagram = final_diagram(m, framings);
  s8.detail = rep.diagram->to_json();
  if (!rep.diagram->admissible) return halt(s8, rep.diagram->reason);
  s8.pass = true;
  rep.stages.push_back(s8);

  // 9. k dp - alpha^- = e^h alpha outside the tube {r <= eps} around each component.
  PipelineStage s9{9, "addendum-residual", false, {}, {}};
  {
    const double kc = to_double(k * c);
    CertificateBuilder b("addendum-residual", "k dp - alpha^- = e^h alpha with h >= 0 outside tau", 1e-6,
                         opt.spec.seed);
    // Model radius r with alpha+(d/dmu) = r^2/(B + A r^2).
    auto model_radius = [&](std::size_t i, const Coords& y) {
      const auto& comp = m.components[i];
      const double a = comp.alpha(y)[1] / (kappa * comp.alpha.apply(y, {comp.v(y)}));
      const double A = to_double(data[i].A), B = to_double(data[i].B);
      return std::sqrt(std::max(0.0, a * B / (1 - a * A)));
    };
    long outside = 0;
    for (const auto& x : m.samples.points) {
      bool in_tube = false;
      for (std::size_t i = 0; i < n; ++i) in_tube = in_tube || model_radius(i, m.components[i].from_global(x)) <= opt.eps;
      if (in_tube) continue;
      ++outside;
      const double g = g_of(x), h = std::log(g);
      const Coords a = m.alpha(x), p = m.dp(x);
      Coords plus = a, minus = a;
      for (std::size_t j = 0; j < a.size(); ++j) {
        plus[j] = g * a[j];
        minus[j] = kc * p[j] - plus[j];
      }
      double r = 0;
      for (std::size_t j = 0; j < a.size(); ++j) r = std::max(r, std::abs(kc * p[j] - minus[j] - std::exp(h) * a[j]));
      b.residual(r, where(x));
      b.residual(std::max(0.0, -h), "h >= 0 " + where(x));
    }
    b.param("k_total", kc);
    b.param("samples_outside_tube", outside);
    s9.certificates.push_back(b.finish());
    s9.detail = {{"k_total", kc}, {"samples_outside_tube", outside}};
  }
  s9.pass = s9.certificates.back().pass;
  if (!s9.pass) return halt(s9, s9.certificates.back().note);
  rep.stages.push_back(s9);
  return rep;
}

}  // namespace hk
