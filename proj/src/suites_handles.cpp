#include <cmath>

#include "hk/dcp.hpp"
#include "hk/models.hpp"
#include "suites_internal.hpp"

namespace hk::suites {

namespace {

std::string at(const Coords& x) {
  std::string s = "at (";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + std::to_string(x[i]);
  return s + ")";
}

Certificate form_identity(const std::string& name, const std::string& anchor, const DifferentialForm& lhs,
                          const DifferentialForm& rhs, double tol, const SampleSet& samples) {
  CertificateBuilder b(name, anchor, tol, samples.seed);
  b.param("analytic", lhs.analytic());
  for (const auto& x : samples.points) b.residual(coefficient_distance(lhs, rhs, x), at(x));
  return b.finish();
}

SampleSet torus_samples(const ChartPtr& t, double lo, double hi, const SampleSpec& spec) {
  return sample_box(t, {{lo, hi}, {0, kTwoPi}, {0, kTwoPi}}, spec);
}

// 1000 radii in (0, hi] with angles spread along the torus.
SampleSet radial_samples(const ChartPtr& t, double hi, std::uint64_t seed) {
  SampleSet s;
  s.chart = t;
  s.seed = seed;
  for (int i = 1; i <= 1000; ++i)
    s.points.push_back(t->reduce({hi * i / 1000.0, 0.37 * i, 0.73 * i}));
  return s;
}

ChartMap slice(const ChartPtr& base, const ChartPtr& cyl) {
  return ChartMap{base, cyl, [](const Coords& x) { return Coords{0, x[0], x[1], x[2]}; },
                  [](const Coords&) {
                    Matrix j = Matrix::Zero(4, 3);
                    j.block(1, 0, 3, 3).setIdentity();
                    return j;
                  },
                  "t=0"};
}

struct ModelPair {
  double A, B, C, D;
  ChartPtr chart = models::solid_torus("N");
  SampleSet samples;
  ContactPair pair;

  ModelPair(const StructuralData& d, const SampleSpec& spec, double lo = 0.05, double hi = 1.5)
      : A(to_double(d.A)), B(to_double(d.B)), C(to_double(d.C)), D(to_double(d.D)),
        samples(torus_samples(chart, lo, hi, spec)),
        pair(make_contact_pair(models::model_alpha_plus(chart, A, B), models::model_alpha_minus(chart, A, B, C, D),
                               {}, {}, samples)) {}

  double g() const { return A * C + B * D; }
  double z(double r) const { return (C - D * r * r) * (B + A * r * r) / (2 * r); }
};

const StructuralData kModel{Rational(2), Rational(2), Rational(1), Rational(1)};

}  // namespace

std::vector<Certificate> weak_convex_dilation(const SuiteConfig& cfg) {
  const double lo = cfg.params.real("r_min", 1e-3), hi = cfg.params.real("r_max", 3.0);
  if (!(lo > 0 && hi > lo)) throw ParameterError("need 0 < r_min < r_max");
  auto polar = models::polar4();
  auto V = models::weak_convex_dilation(polar);
  auto w = models::omega0(polar);
  auto samples = sample_box(polar, {{lo, hi}, {0, kTwoPi}, {lo, hi}, {0, kTwoPi}}, suite_spec(cfg.spec, 6, 0));
  std::vector<Certificate> out;
  out.push_back(form_identity("dilation:analytic", "L_V omega0 = omega0", lie_derivative(V, w), w, kTolAnalytic,
                              samples));
  VectorField vf = V;
  vf.jac = {};
  DifferentialForm wf = w;
  wf.partials = {};
  out.push_back(form_identity("dilation:finite-difference", "L_V omega0 = omega0", lie_derivative(vf, wf), w,
                              kTolFiniteDiff, samples));
  // i_V omega0 = (1/2)[(r1^2 - 1) dth1 + r2^2 dth2].
  auto hand = make_form(polar, 1, [](const Coords& x) {
    return Coords{0, 0.5 * (x[0] * x[0] - 1), 0, 0.5 * x[2] * x[2]};
  });
  out.push_back(form_identity("dilation:primitive", "i_V omega0 = (1/2)[(r1^2 - 1) dth1 + r2^2 dth2]",
                              interior_product(V, w), hand, kTolAnalytic, samples));
  return out;
}

std::vector<Certificate> weak_convex_flow(const SuiteConfig& cfg) {
  const double eps1 = cfg.params.real("eps1", -0.5), eps2 = cfg.params.real("eps2", 0.5);
  const long n = cfg.params.integer("starts", 100);
  if (!(eps1 > -1 && eps1 < 0 && eps2 > 0)) throw ParameterError("need -1 < eps1 < 0 < eps2");
  if (n < 1) throw ParameterError("starts must be positive");
  const double T = std::log((eps2 + 1) / (eps1 + 1));
  // Below r2^2 = (eps1 + 1) eps2 / (eps2 + 1) the flow reaches r1 = 0 before time T.
  const double r_lo = std::sqrt((eps1 + 1) * eps2 / (eps2 + 1)) + 0.1, r_hi = std::max(1.5, r_lo + 1);
  auto polar = models::polar4();
  auto V = models::weak_convex_dilation(polar);
  auto f = models::morse_function(polar);
  CertificateBuilder cf("flow:closed-form", "Phi_t: r1^2 -> (r1^2 - 1) e^t + 1, r2^2 -> r2^2 e^t, angles fixed",
                        kTolAnalytic, cfg.spec.seed);
  CertificateBuilder land("flow:landing", "time-T flow from f = eps1 lands on f = eps2", kTolAnalytic,
                          cfg.spec.seed);
  const std::uint64_t offset = cfg.spec.seed % 10007;
  for (long i = 0; i < n; ++i) {
    const Coords u = halton_point(offset + i + 1, 3);
    const double r2 = r_lo + (r_hi - r_lo) * u[0];
    const Coords p{std::sqrt(r2 * r2 - eps1), kTwoPi * u[1], r2, kTwoPi * u[2]};
    try {
      const Coords q = flow(V, make_point(polar, p), T).coords;
      const Coords e{std::sqrt((p[0] * p[0] - 1) * std::exp(T) + 1), p[1], r2 * std::exp(T / 2), p[3]};
      for (int k = 0; k < 4; ++k)
        cf.residual(k % 2 ? angle_difference(q[k], e[k]) : q[k] - e[k], at(p));
      land.residual(f(q) - eps2, at(p));
    } catch (const Error& ex) {
      cf.failure(ex.what());
    }
  }
  cf.param("T", T);
  land.param("T", T);
  return {cf.finish(), land.finish()};
}

std::vector<Certificate> weak_convex_contact(const SuiteConfig& cfg) {
  const auto& p = cfg.params;
  const double eps1 = p.real("eps1", -0.5), eps2 = p.real("eps2", 0.5), R1 = p.real("R1", 0.75),
               R2 = p.real("R2", 1.0), R3 = p.real("R3", 1.25), delta = p.real("delta", 0.05);
  const HandleDescriptor d = build_weak_convex_handle(eps1, eps2, R1, R2, R3, std::nullopt, delta, cfg.spec);
  const SampleSpec spec = suite_spec(cfg.spec, 4, 936);
  std::vector<Certificate> out;
  out.push_back(renamed(check_contact(*d.alpha1_plus, 1, torus_samples(d.boundary_chart, 1e-3, R3, spec)),
                        "contact:alpha1"));

  auto level = models::solid_torus("f=eps2");
  const SampleSet ls = torus_samples(level, 1e-3, 2.0, spec);
  auto alpha2 = make_form(
      level, 1,
      [eps2](const Coords& y) {
        const double s = y[0] * y[0];
        return Coords{0, 0.5 * (s - 1), 0.5 * (s + eps2)};
      },
      [](const Coords& y) {
        Matrix m = Matrix::Zero(3, 3);
        m(1, 0) = y[0];
        m(2, 0) = y[0];
        return m;
      },
      "alpha2");
  out.push_back(renamed(check_contact(alpha2, 1, ls), "contact:alpha2"));

  const ProfileFunction t = twist_function(eps2, delta);
  auto alpha2p = make_form(
      level, 1, [t](const Coords& y) { return Coords{0, t(y[0] * y[0]), 1.0}; },
      [t](const Coords& y) {
        Matrix m = Matrix::Zero(3, 3);
        m(1, 0) = 2 * y[0] * t.deriv(y[0] * y[0]);
        return m;
      },
      "alpha2'");
  out.push_back(renamed(check_contact(alpha2p, 1, ls), "contact:alpha2-twisted"));

  for (const auto& c : d.certificates)
    if (c.check_name == "weak:free-level-weak-convexity" || c.check_name == "weak:free-graph-weak-convexity" ||
        c.check_name == "weak:xi-agreement")
      out.push_back(c);
  return out;
}

std::vector<Certificate> twist(const SuiteConfig& cfg) {
  const double eps2 = cfg.params.real("eps2", 0.5), delta = cfg.params.real("delta", 0.05);
  const double working_s = cfg.params.real("working_s", 1.25 * 1.25 + 0.5);
  const ProfileFunction t = twist_function(eps2, delta);
  std::vector<Certificate> out{check_twist(t, eps2, delta, working_s, cfg.spec)};
  CertificateBuilder tail("twist:tail", "t(s) = (s - 1)/(s + eps2) for s >= 1 + delta", 1e-12, cfg.spec.seed);
  for (int i = 0; i <= 1000; ++i) {
    const double s = 1 + delta + 10.0 * i / 1000;
    tail.residual(t(s) - (s - 1) / (s + eps2), "at s = " + std::to_string(s));
  }
  out.push_back(tail.finish());
  CertificateBuilder slope("twist:slope", "t' > 0 on (0, 1 + delta]", 0.0, cfg.spec.seed);
  for (int i = 1; i <= 1000; ++i) {
    const double s = (1 + delta) * i / 1000;
    slope.positive(t.deriv(s), "at s = " + std::to_string(s));
  }
  out.push_back(slope.finish());
  return out;
}

std::vector<Certificate> dcp_formulas(const SuiteConfig& cfg) {
  const ModelPair m(cfg.params.data(kModel), suite_spec(cfg.spec, 4, 200));
  std::vector<Certificate> out = m.pair.certificates;
  const PairGeometry geo = solve_pair_geometry(m.pair, m.samples);
  auto cyl = cylinder_chart(m.chart);
  const auto sp = symplectization(m.pair.alpha_plus, 1, cyl);

  // V- = (g e^{-t} - 1) d/dt + e^{-t} Z+, Z+ = (C - D r^2)(B + A r^2)/(2r) d/dr.
  const double A = m.A, B = m.B, C = m.C, D = m.D, g = m.g();
  auto z = [A, B, C, D](double r) { return (C - D * r * r) * (B + A * r * r) / (2 * r); };
  auto dz = [A, B, C, D](double r) { return -C * B / (2 * r * r) + (C * A - D * B) / 2 - 1.5 * D * A * r * r; };
  auto vminus = make_field(
      cyl,
      [g, z](const Coords& x) {
        const double e = std::exp(-x[0]);
        return Coords{g * e - 1, e * z(x[1]), 0, 0};
      },
      [g, z, dz](const Coords& x) {
        const double e = std::exp(-x[0]);
        Matrix j = Matrix::Zero(4, 4);
        j(0, 0) = -g * e;
        j(1, 0) = -e * z(x[1]);
        j(1, 1) = e * dz(x[1]);
        return j;
      },
      {}, "V- closed form");

  SampleSpec small = suite_spec(cfg.spec, 3, 60);
  const SampleSet ds = torus_samples(m.chart, 0.05, 1.5, small);
  out.push_back(renamed(verify_dcp(DCPair{sp.dt, vminus, sp.omega}, slice(m.chart, cyl), m.pair.alpha_plus,
                                   m.pair.alpha_minus, ds),
                        "dcp:closed-form"));

  CertificateBuilder sl("dcp:slice-solve",
                        "per-point solve of i_V omega = alpha^- with omega(d/dt, V) = 0 matches V- at t = 0",
                        kTolAnalytic, cfg.spec.seed);
  CertificateBuilder cf("dcp:counterpart-field", "V- from the solved Z+ and g+ matches the closed form", kTolAnalytic,
                        cfg.spec.seed);
  const VectorField solved = counterpart_field(geo, 1, cyl);
  for (const auto& x : m.samples.points) {
    const Coords w = counterpart_along_slice(sp, m.pair.alpha_minus, x);
    const Coords v = vminus({0, x[0], x[1], x[2]});
    for (int k = 0; k < 4; ++k) sl.residual(w[k] - v[k], at(x));
    for (double t : {-0.5, 0.0, 0.5}) {
      const Coords p{t, x[0], x[1], x[2]};
      const Coords a = solved(p), b = vminus(p);
      for (int k = 0; k < 4; ++k) cf.residual(a[k] - b[k], at(p));
    }
  }
  out.push_back(sl.finish());
  out.push_back(cf.finish());
  return out;
}

std::vector<Certificate> pair_geometry(const SuiteConfig& cfg) {
  const StructuralData data = cfg.params.data(kModel);
  const ModelPair m(data, suite_spec(cfg.spec, 4, 200));
  const PairGeometry geo = solve_pair_geometry(m.pair, m.samples);
  std::vector<Certificate> out = geo.certificates;
  const double g = m.g();
  CertificateBuilder b("pair:model-oracle",
                       "g+ = AC + BD, g- = g+/(g+ - 1), Z+ = (C - D r^2)(B + A r^2)/(2r) d/dr, Z- = -Z+/(g+ - 1)",
                       1e-8, cfg.spec.seed);
  for (const auto& x : m.samples.points) {
    const double z = m.z(x[0]);
    b.residual(geo.g_plus(x) - g, at(x));
    b.residual(geo.g_minus(x) - g / (g - 1), at(x));
    const Coords zp = geo.z_plus(x), zm = geo.z_minus(x);
    b.residual(zp[0] - z, at(x));
    b.residual(zm[0] + z / (g - 1), at(x));
    for (int k = 1; k < 3; ++k) {
      b.residual(zp[k], at(x));
      b.residual(zm[k], at(x));
    }
  }
  out.push_back(b.finish());

  if (data.prepared_for_surgery()) {
    // Pair induced on the attaching boundary of the contact-pair handle:
    // alpha+ = (1/2) r^2 (dmu - dlambda) + (1/A) dlambda, alpha^0 = C dmu + D dlambda.
    const double A = m.A, C = m.C, D = m.D;
    auto t = models::solid_torus("dH1");
    auto plus = make_form(
        t, 1, [A](const Coords& y) { return Coords{0, 0.5 * y[0] * y[0], -0.5 * y[0] * y[0] + 1 / A}; },
        [](const Coords& y) {
          Matrix p = Matrix::Zero(3, 3);
          p(1, 0) = y[0];
          p(2, 0) = -y[0];
          return p;
        });
    auto minus = subtract(models::constant_form(t, C, D), plus);
    const SampleSet s = torus_samples(t, 0.05, 1.2, suite_spec(cfg.spec, 4, 200));
    const ContactPair pair = make_contact_pair(plus, minus, {}, {}, s);
    const PairGeometry ig = solve_pair_geometry(pair, s);
    for (const auto& c : ig.certificates) out.push_back(renamed(c, "pair:induced-" + c.check_name));
    CertificateBuilder ib("pair:induced-oracle", "g+ = A(C + D), Z+ = (C - (1/2) A (C + D) r^2)/r d/dr", 1e-8,
                          cfg.spec.seed);
    for (const auto& y : s.points) {
      const double r = y[0];
      ib.residual(ig.g_plus(y) - A * (C + D), at(y));
      const Coords zp = ig.z_plus(y);
      ib.residual(zp[0] - (C - 0.5 * A * (C + D) * r * r) / r, at(y));
      ib.residual(zp[1], at(y));
      ib.residual(zp[2], at(y));
    }
    out.push_back(ib.finish());
  }
  return out;
}

std::vector<Certificate> graph_transversality(const SuiteConfig& cfg) {
  const StructuralData data = cfg.params.data({Rational(1), Rational(2), Rational(1), Rational(1)});
  const double eps = cfg.params.real("eps", 0.5);
  const SampleSpec spec = suite_spec(cfg.spec, 4, 200);
  std::vector<Certificate> out;

  std::vector<StructuralData> pairs{data, kModel, {Rational(1), Rational(1), Rational(1), Rational(1)},
                                    {Rational(1, 2), Rational(1), Rational(2), Rational(1)},
                                    {Rational(3), Rational(1), Rational(1), Rational(1, 2)}};
  for (const auto& d : pairs) {
    const ModelPair m(d, spec);
    const PairGeometry geo = solve_pair_geometry(m.pair, m.samples);
    ScalarField zero{m.chart, [](const Coords&) { return 0.0; }, [](const Coords&) { return Coords{0, 0, 0}; }, "0"};
    for (int sign : {1, -1}) {
      Certificate c = hk::graph_transversality(geo, zero, sign, m.samples).certificate;
      out.push_back(renamed(c, std::string("graph:zero") + (sign > 0 ? "+" : "-") + " " + d.str()));
    }
  }

  const ModelPair m(data, spec);
  const PairGeometry geo = solve_pair_geometry(m.pair, m.samples);
  for (double bump : {0.0, 0.1}) {
    const double h0 = std::log(m.g()) + bump;
    ScalarField high{m.chart, [h0](const Coords&) { return h0; }, [](const Coords&) { return Coords{0, 0, 0}; },
                     "log g + " + std::to_string(bump)};
    out.push_back(expect_rejection(hk::graph_transversality(geo, high, 1, m.samples).certificate,
                                   bump == 0 ? "graph:rejects-h=log(g)" : "graph:rejects-h>log(g)"));
  }

  const Preparation prep = prepare_for_surgery(data, eps, cfg.spec.seed);
  out.push_back(prep.certificate);
  const ProfileFunction h = prep.h;
  ScalarField hf{m.chart, [h](const Coords& y) { return h(y[0]); },
                 [h](const Coords& y) { return Coords{h.deriv(y[0]), 0, 0}; }, "prepared h"};
  out.push_back(renamed(hk::graph_transversality(geo, hf, 1, radial_samples(m.chart, eps, cfg.spec.seed)).certificate,
                        "graph:prepared-profile"));
  return out;
}

}  // namespace hk::suites
