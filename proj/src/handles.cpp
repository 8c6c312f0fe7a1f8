#include "hk/handles.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "hk/handles_internal.hpp"
#include "hk/models.hpp"

namespace hk {

std::string to_string(HandleFamily f) {
  switch (f) {
    case HandleFamily::weak_convex: return "weak_convex";
    case HandleFamily::contact_pair: return "contact_pair";
    case HandleFamily::weinstein_convex: return "weinstein_convex";
    case HandleFamily::weinstein_concave: return "weinstein_concave";
  }
  return "unknown";
}

bool HandleDescriptor::all_pass() const {
  for (const auto& c : certificates)
    if (!c.pass) return false;
  return true;
}

nlohmann::json HandleDescriptor::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kCertificateSchema;
  j["family"] = to_string(family);
  j["params"] = {{"eps1", eps1}, {"eps2", eps2}, {"R1", R1}, {"R2", R2}, {"R3", R3}};
  if (family == HandleFamily::weak_convex) j["params"]["delta"] = delta;
  if (profile) j["params"]["profile"] = profile->label;
  if (data)
    j["structural_data"] = {{"A", hk::to_string(data->A)}, {"B", hk::to_string(data->B)},
                            {"C", hk::to_string(data->C)}, {"D", hk::to_string(data->D)}};
  j["derived"] = {{"R", R}, {"T", T}};
  j["attaching"] = {{"knot_model", knot_model}, {"framing", framing}};
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : certificates) {
    nlohmann::json cj = c.to_json();
    cj.erase("params");
    certs.push_back(cj);
  }
  j["certificates"] = certs;
  j["verdict"] = all_pass() ? "pass" : "fail";
  j["seed"] = spec.seed;
  return j;
}

namespace detail {

std::string at(const char* what, double v) {
  std::ostringstream os;
  os << what << " " << v;
  return os.str();
}

std::string at(const Coords& x) {
  std::ostringstream os;
  os << "at (";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

double direction_gap(Coords a, Coords b) {
  double na = 0, nb = 0;
  for (double v : a) na += v * v;
  for (double v : b) nb += v * v;
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  double gap = 0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] / na - b[i] / nb));
  return gap;
}

ChartMap level_eps1_map(const ChartPtr& torus, const ChartPtr& polar, double eps1) {
  return ChartMap{torus, polar,
                  [eps1](const Coords& y) {
                    return Coords{std::sqrt(y[0] * y[0] - eps1), -y[2], y[0], y[1]};
                  },
                  [eps1](const Coords& y) {
                    Matrix j = Matrix::Zero(4, 3);
                    j(0, 0) = y[0] / std::sqrt(y[0] * y[0] - eps1);
                    j(1, 2) = -1;
                    j(2, 0) = 1;
                    j(3, 1) = 1;
                    return j;
                  },
                  "f=eps1"};
}

ChartMap level_eps2_map(const ChartPtr& torus, const ChartPtr& polar, double eps2) {
  return ChartMap{torus, polar,
                  [eps2](const Coords& y) {
                    return Coords{y[0], y[1], std::sqrt(y[0] * y[0] + eps2), y[2]};
                  },
                  [eps2](const Coords& y) {
                    Matrix j = Matrix::Zero(4, 3);
                    j(0, 0) = 1;
                    j(1, 1) = 1;
                    j(2, 0) = y[0] / std::sqrt(y[0] * y[0] + eps2);
                    j(3, 2) = 1;
                    return j;
                  },
                  "f=eps2"};
}

// Graph of tau(r) pushed by a radial flow with r1^2 = (r^2 - a) e^t + b and
// r2^2 = r^2 e^t, angles (th1, th2) = (-lambda, mu).
ChartMap graph_map(const ChartPtr& torus, const ChartPtr& polar, double a, double b,
                   std::function<double(double)> tau, std::function<double(double)> dtau) {
  return ChartMap{torus, polar,
                  [=](const Coords& y) {
                    const double r = y[0], e = std::exp(tau(r));
                    return Coords{std::sqrt(std::max(0.0, (r * r - a) * e + b)), -y[2],
                                  r * std::sqrt(e), y[1]};
                  },
                  [=](const Coords& y) {
                    const double r = y[0], t = tau(r), e = std::exp(t), dt = dtau(r);
                    const double q = (r * r - a) * e + b;
                    const double dq = 2 * r * e + (r * r - a) * e * dt;
                    Matrix j = Matrix::Zero(4, 3);
                    j(0, 0) = dq / (2 * std::sqrt(q));
                    j(1, 2) = -1;
                    j(2, 0) = std::exp(t / 2) * (1 + r * dt / 2);
                    j(3, 1) = 1;
                    return j;
                  },
                  "flow(graph h)"};
}

double transversality(const DifferentialForm& top, const VectorField& v, const ChartMap& m,
                      const Coords& u) {
  const Coords x = m.eval(u);
  const Matrix j = m.jacobian(u);
  std::vector<Coords> frame{v(x)};
  for (int k = 0; k < 3; ++k) frame.push_back({j(0, k), j(1, k), j(2, k), j(3, k)});
  return top.apply(x, frame);
}

SampleSet polar_band(const ChartPtr& polar, double f_lo, double f_hi, double r_max,
                     const SampleSpec& spec) {
  return sample_box(polar, {{1e-3, r_max}, {0, kTwoPi}, {1e-3, r_max}, {0, kTwoPi}}, spec,
                    [f_lo, f_hi](const Coords& x) {
                      const double f = -x[0] * x[0] + x[2] * x[2];
                      return f >= f_lo && f <= f_hi;
                    });
}

SampleSet torus_band(const ChartPtr& torus, double lo, double hi, const SampleSpec& spec) {
  return sample_box(torus, {{lo, hi}, {0, kTwoPi}, {0, kTwoPi}}, spec);
}

Certificate flange_certificate(const HandleDescriptor& d, const SampleSpec& spec) {
  CertificateBuilder b("flange", "attaching and free boundaries coincide on R2 <= r <= R3", 1e-8,
                       spec.seed);
  for (const auto& y : torus_band(d.boundary_chart, d.R2, d.R3, spec).points) {
    const Coords p = d.attaching->eval(y), q = d.free_graph->eval(y);
    double gap = 0;
    for (int k = 0; k < 4; ++k)
      gap = std::max(gap, (k % 2) ? std::abs(angle_difference(p[k], q[k])) : std::abs(p[k] - q[k]));
    b.residual(gap, at(y));
  }
  return b.finish();
}

Certificate lie_certificate(const std::string& name, const VectorField& v,
                            const DifferentialForm& omega, double sign, const SampleSet& samples) {
  const DifferentialForm l = lie_derivative(v, omega);
  const double tol = (omega.analytic() && v.jac) ? kTolAnalytic : kTolFiniteDiff;
  CertificateBuilder b(name, sign > 0 ? "L_V omega = omega" : "L_V omega = -omega", tol, samples.seed);
  for (const auto& x : samples.points) {
    if (!v.defined_at(x)) continue;
    const Coords a = l(x), w = omega(x);
    double r = 0;
    for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, std::abs(a[k] - sign * w[k]));
    b.residual(r, at(x));
  }
  return b.finish();
}

Certificate level_transversality(const std::string& name, const VectorField& v, const ScalarField& f,
                                 const SampleSet& samples) {
  CertificateBuilder b(name, "df(V) > 0", 0.0, samples.seed);
  for (const auto& x : samples.points) {
    if (!v.defined_at(x)) continue;
    const Coords g = f.gradient(x), vx = v(x);
    double s = 0;
    for (std::size_t k = 0; k < g.size(); ++k) s += g[k] * vx[k];
    b.positive(s, at(x));
  }
  return b.finish();
}

void require_profile_shape(const ProfileFunction& h, double R1, double R2, double R3, double T) {
  auto fail = [] {
    throw ParameterError("profile h must equal T on [0,R1], decrease on [R1,R2] and vanish on [R2,R3]");
  };
  for (int i = 0; i <= 20; ++i) {
    if (std::abs(h(R1 * i / 20.0) - T) > 1e-9) fail();
    if (std::abs(h(R2 + (R3 - R2) * i / 20.0)) > 1e-9) fail();
  }
  double prev = h(R1);
  for (int i = 1; i <= 400; ++i) {
    const double v = h(R1 + (R2 - R1) * i / 400.0);
    if (v > prev + 1e-12) fail();
    prev = v;
  }
}

}  // namespace detail

using namespace detail;

double graph_time(const HandleDescriptor& d, double r) {
  const double h = d.profile ? (*d.profile)(r) : 0.0;
  if (d.family != HandleFamily::contact_pair) return h;
  const double A = to_double(d.data->A), D = to_double(d.data->D);
  const double gap = 2 / A - r * r;
  if (gap <= 0) return h;
  return std::min(h, std::log(2 * D / gap));
}

void write_flow_lines_csv(const HandleDescriptor& d, std::ostream& out, int lines, int steps) {
  out << "line,t,r1,th1,r2,th2\n";
  out.precision(12);
  if (!d.attaching || !d.v_plus) return;
  const VectorField& v = *d.v_plus;
  for (int i = 0; i < lines; ++i) {
    const double r = d.R1 + (d.R3 - d.R1) * (i + 0.5) / lines;
    const double angle = kTwoPi * i / lines;
    const Coords start = d.attaching->eval({r, angle, 0.5 * angle});
    const double tmax = graph_time(d, r) * (1 - 1e-9);
    Point p{d.chart, start};
    double t = 0;
    for (int k = 0; k <= steps; ++k) {
      const double tk = tmax * k / steps;
      if (tk > t) {
        p = flow(v, p, tk - t);
        t = tk;
      }
      out << i << "," << t << "," << p.coords[0] << "," << p.coords[1] << "," << p.coords[2] << ","
          << p.coords[3] << "\n";
    }
  }
}

Certificate check_twist(const ProfileFunction& t, double eps2, double delta, double working_s,
                        const SampleSpec& spec) {
  const double s1 = 1 + delta;
  CertificateBuilder b("twist", "t(0) = 0, t' > 0 on (0, 1+delta], t = (s-1)/(s+eps2) beyond, 1 - t > 0",
                       kTolAnalytic, spec.seed);
  b.residual(t(0.0), "t(0)");
  const int n = std::max(1000, spec.halton);
  double min_slope = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= n; ++i) {
    const double s = s1 * i / n;
    min_slope = std::min(min_slope, t.deriv(s));
    b.positive(t.deriv(s), at("t' at s =", s));
  }
  for (int i = 0; i <= 200; ++i) {
    const double s = s1 + (std::max(working_s, 2 * s1) - s1) * i / 200;
    b.residual(t(s) - (s - 1) / (s + eps2), at("tail at s =", s));
  }
  for (int i = 0; i <= 200; ++i) {
    const double s = working_s * i / 200;
    b.positive(1 - t(s), at("1 - t at s =", s));
  }
  b.param("min_slope", min_slope);
  b.param("delta", delta);
  b.param("eps2", eps2);

  // Contact condition for d lambda + t(r^2) d mu.
  auto torus = models::solid_torus("dH2'");
  auto alpha = make_form(
      torus, 1, [t](const Coords& y) { return Coords{0, t(y[0] * y[0]), 1.0}; },
      [t](const Coords& y) {
        Matrix p = Matrix::Zero(3, 3);
        p(1, 0) = 2 * y[0] * t.deriv(y[0] * y[0]);
        return p;
      },
      "alpha2'");
  const Certificate c = check_contact(alpha, 1, torus_band(torus, 1e-3, std::sqrt(working_s), spec));
  if (!c.pass) b.failure("alpha2' not contact: " + c.note);
  b.param("contact_min_margin", c.min_margin);
  return b.finish();
}

HandleDescriptor build_weak_convex_handle(double eps1, double eps2, double R1, double R2, double R3,
                                          std::optional<ProfileFunction> h, double delta,
                                          const SampleSpec& spec) {
  if (!(eps1 > -1 && eps1 < 0)) throw ParameterError("eps1 must satisfy -1 < eps1 < 0");
  if (!(eps2 > 0)) throw ParameterError("eps2 must be positive");
  if (!(R1 > std::sqrt(1 + eps1))) throw ParameterError("R1 must exceed sqrt(1 + eps1)");
  if (!(R1 < R2 && R2 < R3)) throw ParameterError("radii must satisfy R1 < R2 < R3");
  if (!(delta > 0)) throw ParameterError("delta must be positive");

  HandleDescriptor d;
  d.family = HandleFamily::weak_convex;
  d.eps1 = eps1;
  d.eps2 = eps2;
  d.R1 = R1;
  d.R2 = R2;
  d.R3 = R3;
  d.delta = delta;
  d.spec = spec;
  d.T = std::log((1 + eps2) / (1 + eps1));
  d.R = std::sqrt(eps2 * (1 + eps1) / (1 + eps2));
  d.profile = h ? *h : default_profile(R1, R2, d.T, R3);
  require_profile_shape(*d.profile, R1, R2, R3, d.T);
  // The twisted region must sit inside the part of the free boundary on f = eps2.
  const double s_R1 = (R1 * R1 - eps1 - 1) * std::exp(d.T) + 1;
  if (!(s_R1 > 1 + delta))
    throw ParameterError("R1 too close to sqrt(1 + eps1) for delta: need the image radius^2 " +
                         std::to_string(s_R1) + " > 1 + delta");

  d.chart = models::polar4();
  d.omega = models::omega0(d.chart);
  d.f = models::morse_function(d.chart);
  d.v_plus = models::weak_convex_dilation(d.chart);
  d.boundary_chart = models::solid_torus("dH1");
  d.attaching = level_eps1_map(d.boundary_chart, d.chart, eps1);
  const ProfileFunction prof = *d.profile;
  d.free_graph = graph_map(d.boundary_chart, d.chart, eps1 + 1, 1.0, prof.eval, prof.deriv);
  auto level_chart = models::solid_torus("dH2");
  d.free_level = level_eps2_map(level_chart, d.chart, eps2);
  d.alpha1_plus = make_form(
      d.boundary_chart, 1,
      [eps1](const Coords& y) {
        const double r2 = y[0] * y[0];
        return Coords{0, 0.5 * r2, -0.5 * (r2 - eps1 - 1)};
      },
      [](const Coords& y) {
        Matrix p = Matrix::Zero(3, 3);
        p(1, 0) = y[0];
        p(2, 0) = -y[0];
        return p;
      },
      "alpha1");
  d.knot_model = "transverse knot with normal coordinates (r, mu, lambda)";
  d.framing = "F_mu + 0";

  const VectorField& V = *d.v_plus;
  const DifferentialForm& w = *d.omega;
  const double r_top = std::sqrt(R3 * R3 - eps1) * std::exp(d.T / 2) + 0.5;

  d.certificates.push_back(check_profile(*d.profile, 1000, spec.seed));

  const SampleSet band = polar_band(d.chart, eps1, eps2, r_top, spec);
  d.certificates.push_back(lie_certificate("weak:dilation", V, w, 1.0, band));
  d.certificates.push_back(
      level_transversality("weak:transverse-levels", V, *d.f,
                           polar_band(d.chart, std::max(-1 + 1e-3, eps1 - 0.5 * (1 + eps1)), eps2 + 1, r_top, spec)));

  // Induced form on the attaching boundary.
  {
    const SampleSet s = torus_band(d.boundary_chart, 1e-3, R3, spec);
    d.certificates.push_back(check_contact(*d.alpha1_plus, 1, s));
    const DifferentialForm induced = pullback(*d.attaching, interior_product(V, w));
    CertificateBuilder b("weak:alpha1", "alpha1 = (1/2)[r^2 dmu - (r^2 - eps1 - 1) dlambda]",
                         kTolAnalytic, spec.seed);
    for (const auto& y : s.points) b.residual(coefficient_distance(induced, *d.alpha1_plus, y), at(y));
    d.certificates.push_back(b.finish());
  }

  // Time-T flow from f = eps1 minus {r <= R} onto f = eps2 minus K2.
  {
    CertificateBuilder b("weak:flow", "time-T flow maps f = eps1 minus {r <= R} onto f = eps2 minus K2",
                         kTolAnalytic, spec.seed);
    const double lo = d.R + 0.1 * (R1 - d.R), hi = std::max(R3, 1.5 * R1);
    for (const auto& y : torus_band(d.boundary_chart, lo, hi, spec).points) {
      try {
        const Point p{d.chart, d.attaching->eval(y)};
        const Point q = flow(V, p, d.T);
        const double r2 = y[0] * y[0];
        b.residual((*d.f)(q.coords) - eps2, at(y));
        b.residual(q.coords[0] * q.coords[0] - ((r2 - eps1 - 1) * std::exp(d.T) + 1), at(y));
        b.residual(q.coords[2] * q.coords[2] - r2 * std::exp(d.T), at(y));
        const double tm = 0.5 * d.T;
        b.residual((*d.f)(flow(V, p, tm).coords) - ((eps1 + 1) * std::exp(tm) - 1), at(y));
      } catch (const Error& e) {
        b.failure(e.what());
      }
    }
    for (const auto& y : torus_band(level_chart, 0.05, hi, spec).points) {
      try {
        const Point q = flow(V, Point{d.chart, d.free_level->eval(y)}, -d.T);
        b.residual((*d.f)(q.coords) - eps1, at(y));
        b.positive(q.coords[2] - d.R, at(y));
      } catch (const Error& e) {
        b.failure(e.what());
      }
    }
    d.certificates.push_back(b.finish());
  }

  // Twisted contact structure on f = eps2 near K2.
  const ProfileFunction twist = twist_function(eps2, delta);
  d.certificates.push_back(check_twist(twist, eps2, delta, s_R1, spec));

  // Free boundary: weak convexity on both parts, agreement of the pieces.
  {
    auto alpha2p = make_form(
        level_chart, 1, [twist](const Coords& y) { return Coords{0, twist(y[0] * y[0]), 1.0}; },
        {}, "alpha2'");
    const SampleSet level_s = torus_band(level_chart, 1e-3, std::sqrt(s_R1), spec);
    Certificate c = check_weak_convexity(alpha2p, w, *d.free_level, level_s);
    c.check_name = "weak:free-level-weak-convexity";
    d.certificates.push_back(c);

    const SampleSet graph_s = torus_band(d.boundary_chart, R1, R3, spec);
    const DifferentialForm top = wedge(w, w);
    CertificateBuilder tb("weak:free-graph-transverse", "V positively transverse to the free boundary",
                          0.0, spec.seed);
    for (const auto& y : graph_s.points) tb.positive(transversality(top, V, *d.free_graph, y), at(y));
    d.certificates.push_back(tb.finish());
    Certificate g = check_weak_convexity(pullback(*d.free_graph, interior_product(V, w)), w,
                                         *d.free_graph, graph_s);
    g.check_name = "weak:free-graph-weak-convexity";
    d.certificates.push_back(g);

    // alpha2 is the form induced by V on f = eps2, and alpha2' has the same
    // kernel where s >= 1 + delta.
    const DifferentialForm induced = pullback(*d.free_level, interior_product(V, w));
    CertificateBuilder ab("weak:xi-agreement", "ker alpha2' = ker alpha2 on r^2 >= 1 + delta", 1e-6,
                          spec.seed);
    for (const auto& y : torus_band(level_chart, std::sqrt(1 + delta), std::sqrt(s_R1) + 0.5, spec).points) {
      const double s = y[0] * y[0];
      const Coords a2{0, 0.5 * (s - 1), 0.5 * (s + eps2)};
      ab.residual(coefficient_distance(induced, make_form(level_chart, 1, [a2](const Coords&) { return a2; }), y),
                  at(y));
      ab.residual(direction_gap(alpha2p(y), a2), at(y));
    }
    d.certificates.push_back(ab.finish());
  }

  d.certificates.push_back(flange_certificate(d, spec));

  for (const auto& c : d.certificates)
    if (!c.pass) throw HandleRejected("weak-convex handle rejected: " + c.check_name + " " + c.note, c);
  return d;
}

}  // namespace hk
