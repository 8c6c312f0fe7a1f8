#include <cmath>

#include "hk/dcp.hpp"
#include "hk/handles.hpp"
#include "hk/handles_internal.hpp"
#include "hk/models.hpp"

namespace hk {

using namespace detail;

namespace {

struct PairForms {
  DifferentialForm plus, zero, minus;
};

PairForms induced_pair(const ChartPtr& torus, double A, double C, double D) {
  // alpha1+ = (1/2) r^2 (dmu - dlambda) + (1/A) dlambda, alpha1^0 = C dmu + D dlambda.
  DifferentialForm plus = make_form(
      torus, 1,
      [A](const Coords& y) {
        const double r2 = y[0] * y[0];
        return Coords{0, 0.5 * r2, 1 / A - 0.5 * r2};
      },
      [](const Coords& y) {
        Matrix p = Matrix::Zero(3, 3);
        p(1, 0) = y[0];
        p(2, 0) = -y[0];
        return p;
      },
      "alpha1+");
  DifferentialForm zero = models::constant_form(torus, C, D);
  zero.label = "alpha1^0";
  DifferentialForm minus = subtract(zero, plus);
  minus.label = "alpha1-";
  return {plus, zero, minus};
}

std::vector<double> radii(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i <= n; ++i) out.push_back(lo + (hi - lo) * i / n);
  return out;
}

}  // namespace

Certificate check_free_boundary_transversality(const HandleDescriptor& d) {
  if (d.family != HandleFamily::contact_pair || !d.data || !d.profile)
    throw Error("check_free_boundary_transversality: needs a contact-pair handle");
  const double A = to_double(d.data->A), C = to_double(d.data->C), D = to_double(d.data->D);
  const PairForms forms = induced_pair(d.boundary_chart, A, C, D);
  const ProfileFunction h = *d.profile;

  // Per-point pair geometry on the attaching boundary gives g+ and Z+.
  ContactPair pair{d.boundary_chart, forms.plus, forms.minus, forms.zero,
                   [](const Coords&) { return true; },
                   [](const Coords& y) { return y[0] > 0; }, {}};
  const PairGeometry geometry = solve_pair_geometry(pair, SampleSet{d.boundary_chart, {}, d.spec.seed});

  const double bound = C / (A * (C + D));
  CertificateBuilder b("cp:free-boundary-transversality",
                       "e^h < g^+ - h'(r) dr(Z^+) on [R1,R3]; r^2 < C/(A(C+D)) on [R1,R2]", 0.0,
                       d.spec.seed);
  const DifferentialForm top = wedge(*d.omega, *d.omega);
  double min_ineq = std::numeric_limits<double>::infinity(), min_bound = min_ineq;
  double min_plus = min_ineq, min_minus = min_ineq;
  std::vector<Coords> pts;
  for (double r : radii(d.R1, d.R3, 1000)) pts.push_back({r, 0.3, 1.1});
  for (const auto& y : torus_band(d.boundary_chart, d.R1, d.R3, d.spec).points) pts.push_back(y);
  for (const auto& y : pts) {
    const double r = y[0];
    const double z = geometry.z_plus(y)[0];
    const double margin = geometry.g_plus(y) - h.deriv(r) * z - std::exp(h(r));
    min_ineq = std::min(min_ineq, margin);
    b.positive(margin, at("inequality at r =", r));
    if (r <= d.R2) {
      min_bound = std::min(min_bound, bound - r * r);
      b.positive(bound - r * r, at("r^2 < C/(A(C+D)) at r =", r));
    }
    // Direct transversality of both fields where the graph is not capped.
    if (graph_time(d, r) < h(r) - 1e-9) continue;
    const double tp = transversality(top, *d.v_plus, *d.free_graph, y);
    const double tm = transversality(top, *d.v_minus, *d.free_graph, y);
    min_plus = std::min(min_plus, tp);
    min_minus = std::min(min_minus, tm);
    b.positive(tp, at("V+ transversality at r =", r));
    b.positive(tm, at("V- transversality at r =", r));
  }
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  b.param("min_inequality_margin", num(min_ineq));
  b.param("min_bound_margin", num(min_bound));
  b.param("min_vplus_transversality", num(min_plus));
  b.param("min_vminus_transversality", num(min_minus));
  b.param("radius_bound", std::sqrt(bound));
  return b.finish();
}

ContactPair attaching_pair(const StructuralData& data) {
  if (!data.prepared_for_surgery()) throw ParameterError("structural data " + data.str() + " is not prepared for surgery");
  const auto torus = models::solid_torus("dH1");
  const PairForms forms = induced_pair(torus, to_double(data.A), to_double(data.C), to_double(data.D));
  return ContactPair{torus, forms.plus, forms.minus, forms.zero, [](const Coords&) { return true; },
                     [](const Coords& y) { return y[0] > 0; }, {}};
}

HandleDescriptor build_contact_pair_handle(const StructuralData& data, double eps2, double R1,
                                           double R2, double R3, std::optional<ProfileFunction> h,
                                           const SampleSpec& spec) {
  if (!data.prepared_for_surgery())
    throw ParameterError("structural data " + data.str() +
                         " is not prepared for surgery (need A = B > 0, C > 0, D > 0, AD > 1)");
  const double A = to_double(data.A), C = to_double(data.C), D = to_double(data.D);
  if (!(eps2 > 0 && eps2 < 2 * C)) throw ParameterError("eps2 must satisfy 0 < eps2 < 2C");
  HandleDescriptor d;
  d.family = HandleFamily::contact_pair;
  d.data = data;
  d.eps1 = 2 / A - 2 * D;
  d.eps2 = eps2;
  d.R1 = R1;
  d.R2 = R2;
  d.R3 = R3;
  d.spec = spec;
  d.T = std::log(A * (D + eps2 / 2));
  d.R = eps2 / (A * (D + eps2 / 2));
  if (!(d.R < R1)) throw ParameterError("R1 must exceed R = " + std::to_string(d.R));
  if (!(R1 < R2 && R2 < R3)) throw ParameterError("radii must satisfy R1 < R2 < R3");
  d.profile = h ? *h : default_profile(R1, R2, d.T, R3);
  require_profile_shape(*d.profile, R1, R2, R3, d.T);

  d.chart = models::polar4();
  d.omega = models::omega0(d.chart);
  d.f = models::morse_function(d.chart);
  d.v_plus = make_field(
      d.chart, [D](const Coords& x) { return Coords{0.5 * x[0] - D / x[0], 0, 0.5 * x[2], 0}; },
      [D](const Coords& x) {
        Matrix j = Matrix::Zero(4, 4);
        j(0, 0) = 0.5 + D / (x[0] * x[0]);
        j(2, 2) = 0.5;
        return j;
      },
      [](const Coords& x) { return x[0] > 0; }, "V+");
  d.v_minus = make_field(
      d.chart, [C](const Coords& x) { return Coords{-0.5 * x[0], 0, -(0.5 * x[2] - C / x[2]), 0}; },
      [C](const Coords& x) {
        Matrix j = Matrix::Zero(4, 4);
        j(0, 0) = -0.5;
        j(2, 2) = -0.5 - C / (x[2] * x[2]);
        return j;
      },
      [](const Coords& x) { return x[2] > 0; }, "V-");
  d.boundary_chart = models::solid_torus("dH1");
  d.attaching = level_eps1_map(d.boundary_chart, d.chart, d.eps1);
  const ProfileFunction prof = *d.profile;
  auto tau = [A, D, prof](double r) {
    const double gap = 2 / A - r * r;
    return gap > 0 ? std::min(prof(r), std::log(2 * D / gap)) : prof(r);
  };
  auto dtau = [A, D, prof](double r) {
    const double gap = 2 / A - r * r;
    if (gap > 0 && std::log(2 * D / gap) < prof(r)) return 2 * r / gap;
    return prof.deriv(r);
  };
  d.free_graph = graph_map(d.boundary_chart, d.chart, 2 / A, 2 * D, tau, dtau);
  auto level_chart = models::solid_torus("dH2");
  d.free_level = level_eps2_map(level_chart, d.chart, eps2);
  const PairForms forms = induced_pair(d.boundary_chart, A, C, D);
  d.alpha1_plus = forms.plus;
  d.alpha1_minus = forms.minus;
  d.knot_model = "knot prepared for surgery with structural data " + data.str();
  d.framing = "F_mu + 0";

  const VectorField& vp = *d.v_plus;
  const VectorField& vm = *d.v_minus;
  const DifferentialForm& w = *d.omega;
  const double r_top = std::sqrt(std::max(R3 * R3 - d.eps1, 2 * D + eps2)) * std::exp(d.T / 2) + 0.5;

  d.certificates.push_back(check_profile(*d.profile, 1000, spec.seed));

  const SampleSet band = polar_band(d.chart, d.eps1, eps2, r_top, spec);
  d.certificates.push_back(lie_certificate("cp:dilation", vp, w, 1.0, band));
  d.certificates.push_back(lie_certificate("cp:contraction", vm, w, -1.0, band));
  {
    const double lo = -2 * D, hi = 2 * C, pad = 0.01 * (hi - lo);
    const SampleSet cover = polar_band(d.chart, lo + pad, hi - pad, r_top + 1, spec);
    d.certificates.push_back(level_transversality("cp:cover+", vp, *d.f, cover));
    d.certificates.push_back(level_transversality("cp:cover-", vm, *d.f, cover));
  }

  const SampleSet boundary = torus_band(d.boundary_chart, 1e-2, std::max(R3, 1.0), spec);
  {
    Certificate c = verify_dcp(DCPair{vp, vm, w}, *d.attaching, forms.plus, forms.minus, boundary);
    c.check_name = "cp:dcp";
    d.certificates.push_back(c);
  }
  {
    // The induced pair is prepared for surgery with the same data.
    ContactPair pair = make_contact_pair(forms.plus, forms.minus, {}, [](const Coords& y) { return y[0] > 0; },
                                         boundary);
    for (auto c : pair.certificates) {
      c.check_name = "cp:induced-" + c.check_name;
      d.certificates.push_back(c);
    }
    const VectorField reeb = reeb_field(forms.plus);
    CertificateBuilder b("cp:induced-structural-data", "R_{alpha1+} = A(d/dmu + d/dlambda), alpha1^0 = C dmu + D dlambda",
                         1e-8, spec.seed);
    for (const auto& y : boundary.points) {
      const Coords r = reeb(y), z = pair.alpha_zero(y);
      b.residual(std::max({std::abs(r[0]), std::abs(r[1] - A), std::abs(r[2] - A)}), at(y));
      b.residual(std::max({std::abs(z[0]), std::abs(z[1] - C), std::abs(z[2] - D)}), at(y));
    }
    d.certificates.push_back(b.finish());
  }

  {
    CertificateBuilder b("cp:flow", "time-T flow of V+ maps {r^2 > R} on f = eps1 onto f = eps2 minus K2",
                         kTolAnalytic, spec.seed);
    const double lo = std::sqrt(d.R) * 1.05, hi = std::max(R3, std::sqrt(d.R)) * 1.5;
    for (const auto& y : torus_band(d.boundary_chart, lo, hi, spec).points) {
      try {
        const Point q = flow(vp, Point{d.chart, d.attaching->eval(y)}, d.T);
        const double r2 = y[0] * y[0];
        b.residual((*d.f)(q.coords) - eps2, at(y));
        b.residual(q.coords[0] * q.coords[0] - ((r2 - 2 / A) * std::exp(d.T) + 2 * D), at(y));
        b.residual(q.coords[2] * q.coords[2] - r2 * std::exp(d.T), at(y));
      } catch (const Error& e) {
        b.failure(e.what());
      }
    }
    d.certificates.push_back(b.finish());
  }

  const Certificate fb = check_free_boundary_transversality(d);
  d.certificates.push_back(fb);
  if (!fb.pass) throw HandleRejected("free boundary not transverse: " + fb.note, fb);

  d.certificates.push_back(flange_certificate(d, spec));

  for (const auto& c : d.certificates)
    if (!c.pass) throw HandleRejected("contact-pair handle rejected: " + c.check_name + " " + c.note, c);
  return d;
}

}  // namespace hk
