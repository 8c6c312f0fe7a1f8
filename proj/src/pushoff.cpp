#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "hk/surgery.hpp"

namespace hk {

namespace {

using Quad = boost::math::quadrature::gauss<double, 8>;

// Line integral of the 1-form w = (w_x, w_y) along the segment a -> b.
template <class W>
double segment_integral(const W& w, double ax, double ay, double bx, double by) {
  const double dx = bx - ax, dy = by - ay;
  return Quad::integrate(
      [&](double t) {
        const auto c = w(ax + t * dx, ay + t * dy);
        return c[0] * dx + c[1] * dy;
      },
      0.0, 1.0);
}

}  // namespace

PushOff transverse_push_off(double eps, long framing, double c1, const SampleSpec& spec) {
  if (!(eps > 0)) throw ParameterError("transverse_push_off: eps must be positive");
  if (framing > -1) throw ParameterError("transverse_push_off: framing must be <= tb(K) - 1 = -1");
  if (!(c1 > 2)) throw ParameterError("transverse_push_off: c1 must exceed 2");

  PushOff out;
  out.eps = eps;
  out.c1 = c1;
  out.framing = framing;
  // phi(D2) lies in [0, c2/(c1-2)] x [-2 c2, 2 c2].
  double c2 = 1.0;
  int halvings = 0;
  while (c2 * c2 * (1 / ((c1 - 2) * (c1 - 2)) + 4) >= eps * eps) {
    if (++halvings > 40) throw Error("transverse_push_off: no c2 found after 40 halvings");
    c2 /= 2;
  }
  out.c2 = c2;

  out.disk = make_chart("D2xS1", {"x", "y", "lambda"}, {false, false, true},
                        [](const Coords& p) { return p[0] * p[0] + p[1] * p[1] < 4; });
  out.legendrian = make_chart("nu", {"x", "y", "lambda"}, {false, false, true}, [eps](const Coords& p) {
    return p[0] > 0 && p[0] * p[0] + p[1] * p[1] < eps * eps;
  });

  // beta_disk = (1/2)(x dy - y dx); beta_leg = -(1/x) dy; phi(x, y) = (c2/(c1 - x), c2 y).
  auto phi = [c1, c2](double x, double y) { return std::array<double, 2>{c2 / (c1 - x), c2 * y}; };
  auto closed = [c2, phi](double x, double y) {
    const auto q = phi(x, y);
    // phi^* beta_leg = -(1/X) d(c2 y).
    const double pull_y = -c2 / q[0];
    return std::array<double, 2>{-0.5 * y, 0.5 * x - pull_y};
  };
  out.h = [closed](double x, double y) { return segment_integral(closed, 0, 0, x, y); };
  auto h = out.h;

  out.map = ChartMap{
      out.disk, out.legendrian,
      [phi, h](const Coords& p) {
        const auto q = phi(p[0], p[1]);
        return Coords{q[0], q[1], p[2] + h(p[0], p[1])};
      },
      [c1, c2, closed](const Coords& p) {
        Matrix j = Matrix::Zero(3, 3);
        j(0, 0) = c2 / ((c1 - p[0]) * (c1 - p[0]));
        j(1, 1) = c2;
        const auto dh = closed(p[0], p[1]);
        j(2, 0) = dh[0];
        j(2, 1) = dh[1];
        j(2, 2) = 1;
        return j;
      },
      "Phi"};

  out.alpha_disk = make_form(
      out.disk, 1, [](const Coords& p) { return Coords{-0.5 * p[1], 0.5 * p[0], 1}; },
      [](const Coords&) {
        Matrix m = Matrix::Zero(3, 3);
        m(0, 1) = -0.5;
        m(1, 0) = 0.5;
        return m;
      },
      "dlambda + r^2/2 dmu");
  out.alpha_legendrian = make_form(
      out.legendrian, 1, [](const Coords& p) { return Coords{0, -1 / p[0], 1}; },
      [](const Coords& p) {
        Matrix m = Matrix::Zero(3, 3);
        m(1, 0) = 1 / (p[0] * p[0]);
        return m;
      },
      "dlambda - dy/x");

  // Normal radius R(r) = exp(-1/r^2): the kernel -2/r^2 d/dmu + d/dlambda
  // becomes log(R^2) d/dmu + d/dlambda.
  out.reach = std::exp(-1.0 / 4.0);

  SampleSpec s = spec;
  s.halton = std::max(spec.halton, 1200);
  const SampleSet samples = sample_box(out.disk, {{-2, 2}, {-2, 2}, {0, kTwoPi}}, s,
                                       [](const Coords& p) { return p[0] * p[0] + p[1] * p[1] < 4; });
  const DifferentialForm pulled = pullback(out.map, out.alpha_legendrian);
  CertificateBuilder b("push-off", "Phi^* (d lambda - dy/x) = d lambda + (1/2) r^2 dmu; phi(D2) inside nu", 1e-8,
                       spec.seed);
  for (const auto& p : samples.points) {
    std::ostringstream where;
    where << "at (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
    b.residual(coefficient_distance(pulled, out.alpha_disk, p), where.str());
    const Coords q = out.map.eval(p);
    b.positive(q[0], "x > 0 " + where.str());
    b.positive(eps * eps - q[0] * q[0] - q[1] * q[1], "inside D_eps " + where.str());
  }
  // Closedness of beta_disk - phi^* beta_leg around sampled squares.
  double loop_max = 0;
  for (int i = 0; i < 20; ++i) {
    const double cx = -1 + 0.1 * i, cy = 0.5 - 0.05 * i, a = 0.4;
    const double loop = segment_integral(closed, cx - a, cy - a, cx + a, cy - a) +
                        segment_integral(closed, cx + a, cy - a, cx + a, cy + a) +
                        segment_integral(closed, cx + a, cy + a, cx - a, cy + a) +
                        segment_integral(closed, cx - a, cy + a, cx - a, cy - a);
    loop_max = std::max(loop_max, std::abs(loop));
    b.residual(std::abs(loop), "loop integral");
  }
  const bool fat = is_fat(out.reach, framing);
  if (!fat) b.failure("core not fat for the framing");
  b.param("c1", c1);
  b.param("c2", c2);
  b.param("reach", out.reach);
  b.param("framing", framing);
  b.param("fat", fat);
  b.param("loop_integral_max", loop_max);
  out.certificate = b.finish();
  return out;
}

}  // namespace hk
