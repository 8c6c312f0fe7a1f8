// One-variable profile functions used to shape handle boundaries.
#pragma once

#include <functional>
#include <vector>

#include "hk/certificate.hpp"

namespace hk {

enum class Monotonicity { none, non_increasing, increasing };

struct Plateau {
  double lo, hi, value;
};

struct ProfileFunction {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  std::vector<double> breakpoints;  // sorted
  std::vector<Plateau> plateaus;
  Monotonicity monotone = Monotonicity::none;
  double lo = 0.0, hi = 1.0;  // interval on which the records are claimed
  std::string label;

  double operator()(double s) const { return eval(s); }
};

/// T on [0, R1], quintic smoothstep descent on [R1, R2], 0 beyond.
ProfileFunction default_profile(double R1, double R2, double T, double R3 = -1);

/// Twist t(s), s = r^2: t(0) = 0, t' > 0 on [0, 1 + delta], and
/// t(s) = (s - 1)/(s + eps2) for s >= 1 + delta.
ProfileFunction twist_function(double eps2, double delta = 0.05);

/// One-sided derivative from sample values on one side of x (fourth order).
double one_sided_derivative(const std::function<double(double)>& f, double x, double step, int side);

/// C^1 at breakpoints, plateau values, monotonicity and the analytic
/// derivative against central differences, sampled on [lo, hi].
Certificate check_profile(const ProfileFunction& p, int samples = 1000, std::uint64_t seed = 0);

}  // namespace hk
