#include "hk/profile.hpp"

#include <cmath>
#include <sstream>

#include "hk/geom.hpp"

namespace hk {

ProfileFunction default_profile(double R1, double R2, double T, double R3) {
  if (!(R1 < R2)) throw ParameterError("default_profile: need R1 < R2");
  if (!(T > 0)) throw ParameterError("default_profile: need T > 0");
  if (R3 < 0) R3 = R2 + (R2 - R1);
  const double w = R2 - R1;
  ProfileFunction p;
  p.eval = [=](double r) {
    if (r <= R1) return T;
    if (r >= R2) return 0.0;
    const double s = (r - R1) / w;
    return T * (1 - s * s * s * (10 - 15 * s + 6 * s * s));
  };
  p.deriv = [=](double r) {
    if (r <= R1 || r >= R2) return 0.0;
    const double s = (r - R1) / w;
    return -T * 30 * s * s * (1 - s) * (1 - s) / w;
  };
  p.breakpoints = {R1, R2};
  p.plateaus = {{0.0, R1, T}, {R2, R3, 0.0}};
  p.monotone = Monotonicity::non_increasing;
  p.lo = 0.0;
  p.hi = R3;
  p.label = "smoothstep";
  return p;
}

ProfileFunction twist_function(double eps2, double delta) {
  if (!(eps2 > 0)) throw ParameterError("twist_function: need eps2 > 0");
  if (!(delta > 0)) throw ParameterError("twist_function: need delta > 0");
  const double s1 = 1 + delta;
  const double tau1 = delta / (s1 + eps2);
  const double m1 = (1 + eps2) / ((s1 + eps2) * (s1 + eps2));
  const double k = m1 * s1 / tau1;
  // Blend t = tau1 * (a u + (1 - a) u^n), u = s / s1, matching value and slope
  // at s1. Both a and the slope at u = 0 stay positive.
  const int n = std::max(2, static_cast<int>(std::ceil(k)) + 1);
  const double a = (n - k) / (n - 1);
  ProfileFunction p;
  p.eval = [=](double s) {
    if (s >= s1) return (s - 1) / (s + eps2);
    const double u = s / s1;
    return tau1 * (a * u + (1 - a) * std::pow(u, n));
  };
  p.deriv = [=](double s) {
    if (s >= s1) return (1 + eps2) / ((s + eps2) * (s + eps2));
    const double u = s / s1;
    return tau1 / s1 * (a + (1 - a) * n * std::pow(u, n - 1));
  };
  p.breakpoints = {s1};
  p.monotone = Monotonicity::increasing;
  p.lo = 0.0;
  p.hi = 4 * s1;
  p.label = "twist(eps2=" + std::to_string(eps2) + ", delta=" + std::to_string(delta) + ")";
  return p;
}

double one_sided_derivative(const std::function<double(double)>& f, double x, double step, int side) {
  const double h = side >= 0 ? step : -step;
  return (-25 * f(x) + 48 * f(x + h) - 36 * f(x + 2 * h) + 16 * f(x + 3 * h) - 3 * f(x + 4 * h)) /
         (12 * h);
}

Certificate check_profile(const ProfileFunction& p, int samples, std::uint64_t seed) {
  CertificateBuilder b("profile:" + p.label, "C^1 at breakpoints, plateaus, monotone", 1e-6, seed);
  auto where = [](const char* what, double s) {
    std::ostringstream os;
    os << what << " at " << s;
    return os.str();
  };
  const double span = p.hi - p.lo;
  for (double x : p.breakpoints) {
    const double step = 1e-4 * std::max(span, 1e-3);
    const double left = one_sided_derivative(p.eval, x, step, -1);
    const double right = one_sided_derivative(p.eval, x, step, 1);
    b.residual(left - right, where("derivative jump", x));
    b.residual(p.deriv(x) - right, where("derivative mismatch", x));
  }
  for (const auto& pl : p.plateaus)
    for (double s : {pl.lo, 0.5 * (pl.lo + pl.hi), pl.hi}) b.residual(p.eval(s) - pl.value, where("plateau", s));
  double prev = p.eval(p.lo);
  double worst_fd = 0;
  for (int i = 1; i <= samples; ++i) {
    const double s = p.lo + span * i / samples;
    const double v = p.eval(s);
    if (p.monotone == Monotonicity::non_increasing) b.residual(std::max(0.0, v - prev), where("increase", s));
    if (p.monotone == Monotonicity::increasing) b.positive(p.deriv(s), where("derivative", s));
    prev = v;
    bool near_break = false;
    for (double x : p.breakpoints) near_break = near_break || std::abs(s - x) < 1e-4 * span;
    if (!near_break) {
      const Coords d = fd_partial([&p](const Coords& y) { return Coords{p.eval(y[0])}; }, {s}, 0,
                                  1e-5 * std::max(span, 1e-3));
      worst_fd = std::max(worst_fd, std::abs(d[0] - p.deriv(s)));
    }
  }
  b.param("derivative_fd_max", worst_fd);
  if (worst_fd > kTolFiniteDiff) b.failure(where("analytic derivative disagrees", worst_fd));
  return b.finish();
}

}  // namespace hk
