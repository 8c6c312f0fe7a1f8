#include <cmath>
#include <sstream>

#include "hk/surgery.hpp"

namespace hk {

namespace {

std::string at_r(const char* what, double r) {
  std::ostringstream os;
  os << what << " at r = " << r;
  return os.str();
}

ProfileFunction zero_profile(double eps) {
  ProfileFunction p;
  p.eval = [](double) { return 0.0; };
  p.deriv = [](double) { return 0.0; };
  p.plateaus = {{0.0, eps, 0.0}};
  p.monotone = Monotonicity::non_increasing;
  p.lo = 0;
  p.hi = eps;
  p.label = "zero";
  return p;
}

}  // namespace

Preparation prepare_for_surgery(const StructuralData& data, double eps, std::uint64_t seed) {
  if (!(eps > 0)) throw ParameterError("prepare_for_surgery: eps must be positive");
  if (!data.well_behaved() || !(data.D > 0))
    throw ParameterError("prepare_for_surgery: need B > 0, C > 0 and D > 0, got " + data.str());
  if (!(data.B * data.D > 1))
    throw ParameterError("prepare_for_surgery: BD <= 1 for " + data.str() +
                         "; apply shift_framing / alpha^0-scaling first");
  const double A = to_double(data.A), B = to_double(data.B), C = to_double(data.C), D = to_double(data.D);
  const double g = to_double(data.g_plus());

  Preparation out;
  out.eps = eps;
  const bool already = data.A == data.B;
  out.A0 = already ? data.A : Rational(1) / data.D + (data.B - Rational(1) / data.D) / 4;
  out.prepared = StructuralData{out.A0, out.A0, data.C, data.D};
  const double A0 = to_double(out.A0);

  // delta: largest sampled radius keeping B + A r^2 >= A0 (1 + r^2)(1 + 1e-6) on [0, delta].
  const int n = 1000;
  out.delta = already ? eps / 4 : 0;
  for (int i = 1; i <= n && !already; ++i) {
    const double r = eps / 4 * i / n;
    if (B + A * r * r < A0 * (1 + r * r) * (1 + 1e-6)) break;
    out.delta = r;
  }
  if (out.delta == 0) throw Error("prepare_for_surgery: no admissible delta at sampling resolution");
  const double delta = out.delta;
  const double end = 0.9 * eps;

  if (already) {
    out.h = zero_profile(eps);
  } else {
    auto core = [=](double r) { return std::log((B + A * r * r) / (A0 * (1 + r * r))); };
    auto core_d = [=](double r) { return 2 * r * (A - B) / ((B + A * r * r) * (1 + r * r)); };
    // C^1 cubic Hermite descent from (h(delta), h'(delta)) to (0, 0) at `end`.
    const double y0 = core(delta), m0 = core_d(delta), L = end - delta;
    ProfileFunction p;
    p.eval = [=](double r) {
      if (r <= delta) return core(r);
      if (r >= end) return 0.0;
      const double s = (r - delta) / L;
      return y0 * (2 * s * s * s - 3 * s * s + 1) + L * m0 * (s * s * s - 2 * s * s + s);
    };
    p.deriv = [=](double r) {
      if (r <= delta) return core_d(r);
      if (r >= end) return 0.0;
      const double s = (r - delta) / L;
      return y0 * (6 * s * s - 6 * s) / L + m0 * (3 * s * s - 4 * s + 1);
    };
    p.breakpoints = {delta, end};
    p.plateaus = {{end, eps, 0.0}};
    p.monotone = A <= B ? Monotonicity::non_increasing : Monotonicity::none;
    p.lo = 0;
    p.hi = eps;
    p.label = "prepare(A0=" + to_string(out.A0) + ")";
    out.h = p;
  }

  const ProfileFunction& h = out.h;
  CertificateBuilder b("prepare-for-surgery",
                       "e^h = (B + A r^2)/(A0 (1 + r^2)) near 0; e^h < AC + BD - (C - D r^2)(B + A r^2)/(2r) h'; "
                       "e^h < AC + BD - CB h' on the extension",
                       1e-12, seed);
  double max_h = 0, max_slope = 0;
  for (int i = 0; i <= n; ++i) max_h = std::max(max_h, h(eps * i / n));
  const double cap = (g - std::exp(max_h)) / (C * B) * (1 - 1e-3);
  b.positive(A0 - 1 / D, "A0 > 1/D");
  if (!already) b.positive(B - A0, "A0 < B");
  b.residual(std::abs(std::exp(h(0.0)) - B / A0), "e^h(0) = B/A0");
  for (int i = 1; i <= n; ++i) {
    const double r = eps * i / n;
    const double hr = h(r), dh = h.deriv(r), e = std::exp(hr);
    b.positive(g - (C - D * r * r) * (B + A * r * r) / (2 * r) * dh - e, at_r("first inequality", r));
    if (r >= delta && r < eps) {
      b.positive(g - C * B * dh - e, at_r("second inequality", r));
      max_slope = std::max(max_slope, std::abs(dh));
    }
    b.residual(std::max(0.0, -hr), at_r("h >= 0", r));
    if (r >= end) b.residual(std::abs(hr), at_r("support", r));
  }
  b.param("A0", to_string(out.A0));
  b.param("delta", delta);
  b.param("eps", eps);
  b.param("support_end", end);
  b.param("derivative_cap", cap);
  b.param("max_extension_slope", max_slope);
  out.certificate = b.finish();
  return out;
}

}  // namespace hk
