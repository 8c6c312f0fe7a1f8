#include <cmath>

#include "hk/handles.hpp"
#include "hk/handles_internal.hpp"

namespace hk {

using namespace detail;

ChartPtr cartesian4() {
  static const ChartPtr c = make_chart("R4", {"x1", "y1", "x2", "y2"}, {false, false, false, false});
  return c;
}

namespace {

// Level f = eps as a graph over the (y1, y2) plane for eps < 0, over (x1, x2) for eps > 0.
// Source coordinates (phi, u, v) with phi the angle in the other plane.
ChartMap level_map(const ChartPtr& source, const ChartPtr& r4, double eps) {
  const bool below = eps < 0;
  auto eval = [below, eps](const Coords& s) {
    const double q = std::sqrt(s[1] * s[1] + s[2] * s[2] + (below ? -eps : eps));
    const double c = std::cos(s[0]), n = std::sin(s[0]);
    return below ? Coords{q * c, s[1], q * n, s[2]} : Coords{s[1], q * c, s[2], q * n};
  };
  auto jac = [below, eps](const Coords& s) {
    const double q = std::sqrt(s[1] * s[1] + s[2] * s[2] + (below ? -eps : eps));
    const double c = std::cos(s[0]), n = std::sin(s[0]);
    Matrix j = Matrix::Zero(4, 3);
    const int rad0 = below ? 0 : 1, rad1 = below ? 2 : 3;
    const int lin0 = below ? 1 : 0, lin1 = below ? 3 : 2;
    j(rad0, 0) = -q * n;
    j(rad1, 0) = q * c;
    j(rad0, 1) = c * s[1] / q;
    j(rad0, 2) = c * s[2] / q;
    j(rad1, 1) = n * s[1] / q;
    j(rad1, 2) = n * s[2] / q;
    j(lin0, 1) = 1;
    j(lin1, 2) = 1;
    return j;
  };
  return ChartMap{source, r4, eval, jac, "f=" + std::to_string(eps)};
}

ChartPtr level_chart(const std::string& name) {
  return make_chart(name, {"phi", "u", "v"}, {true, false, false});
}

SampleSet level_samples(const ChartPtr& c, const SampleSpec& spec) {
  return sample_box(c, {{0, kTwoPi}, {-1.5, 1.5}, {-1.5, 1.5}}, spec);
}

}  // namespace

HandleDescriptor build_weinstein_handle(WeinsteinKind kind, double eps1, const SampleSpec& spec) {
  if (!(eps1 < 0)) throw ParameterError("eps1 must be negative");
  const bool convex = kind == WeinsteinKind::convex;
  HandleDescriptor d;
  d.family = convex ? HandleFamily::weinstein_convex : HandleFamily::weinstein_concave;
  d.eps1 = eps1;
  d.eps2 = -eps1;
  d.spec = spec;
  d.chart = cartesian4();
  d.omega = make_form(
      d.chart, 2, [](const Coords&) { return Coords{1, 0, 0, 0, 0, 1}; },
      [](const Coords&) { return Matrix(Matrix::Zero(6, 4)); }, "omega");
  d.f = ScalarField{d.chart,
                    [](const Coords& x) { return -x[0] * x[0] - x[2] * x[2] + x[1] * x[1] + x[3] * x[3]; },
                    [](const Coords& x) { return Coords{-2 * x[0], 2 * x[1], -2 * x[2], 2 * x[3]}; },
                    "f"};
  const double a = convex ? -1 : -2, b = convex ? 2 : 1;
  d.v_plus = make_field(
      d.chart, [a, b](const Coords& x) { return Coords{a * x[0], b * x[1], a * x[2], b * x[3]}; },
      [a, b](const Coords&) {
        Matrix j = Matrix::Zero(4, 4);
        j(0, 0) = j(2, 2) = a;
        j(1, 1) = j(3, 3) = b;
        return j;
      },
      {}, convex ? "V (dilation)" : "V (contraction)");
  d.boundary_chart = level_chart("dH1");
  d.attaching = level_map(d.boundary_chart, d.chart, eps1);
  d.free_level = level_map(level_chart("dH2"), d.chart, d.eps2);
  d.knot_model = "Legendrian descending circle {y = 0, |x|^2 = -eps1}";
  d.framing = "tb(K1) - 1";

  const VectorField& v = *d.v_plus;
  const DifferentialForm& w = *d.omega;
  const double sign = convex ? 1 : -1;

  SampleSpec box = spec;
  box.halton = std::max(spec.halton, 1000 - 256);
  const SampleSet bulk = sample_box(d.chart, {{-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5}}, box);
  d.certificates.push_back(lie_certificate(convex ? "weinstein:dilation" : "weinstein:contraction", v, w,
                                           sign, bulk));

  const DifferentialForm top = wedge(w, w);
  {
    CertificateBuilder b("weinstein:transverse-levels", "df(V) > 0 on f = eps, eps in {eps1, -eps1, -0.5, 0.5}",
                         1e-9, spec.seed);
    for (double eps : {eps1, -eps1, -0.5, 0.5}) {
      const ChartMap m = level_map(level_chart("level"), d.chart, eps);
      for (const auto& s : level_samples(m.source, spec).points) {
        const Coords x = m.eval(s), g = d.f->gradient(x), vx = v(x);
        double df = 0;
        for (int k = 0; k < 4; ++k) df += g[k] * vx[k];
        b.positive(df, at(x));
        b.residual(std::abs((*d.f)(x) - eps), at(x));
      }
    }
    d.certificates.push_back(b.finish());
  }

  const DifferentialForm alpha = interior_product(v, w);
  {
    // Contact sign is taken against the orientation co-oriented by V.
    const SampleSet s = level_samples(d.boundary_chart, spec);
    const double orient = transversality(top, v, *d.attaching, s.points.front()) > 0 ? 1 : -1;
    Certificate c = check_contact(alpha, static_cast<int>(sign * orient), *d.attaching, s);
    c.check_name = convex ? "weinstein:contact+" : "weinstein:contact-";
    d.certificates.push_back(c);
  }
  {
    CertificateBuilder b("weinstein:legendrian", "i_V omega vanishes on T K1", 1e-8, spec.seed);
    const double rho = std::sqrt(-eps1);
    for (int i = 0; i < 100; ++i) {
      const double phi = kTwoPi * i / 100;
      const Coords x{rho * std::cos(phi), 0, rho * std::sin(phi), 0};
      const Coords tangent{-rho * std::sin(phi), 0, rho * std::cos(phi), 0};
      b.residual(std::abs(alpha.apply(x, {tangent})), at(x));
      b.residual(std::abs((*d.f)(x) - eps1), at(x));
    }
    d.certificates.push_back(b.finish());
  }

  for (const auto& c : d.certificates)
    if (!c.pass) throw HandleRejected("Weinstein handle rejected: " + c.check_name + " " + c.note, c);
  return d;
}

}  // namespace hk
