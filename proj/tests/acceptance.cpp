// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "hk/dcp.hpp"
#include "hk/models.hpp"
#include "hk/suites.hpp"

using namespace hk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_gap(const Coords& a, const Coords& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

StructuralData sd(Rational a, Rational b, Rational c, Rational d) { return {a, b, c, d}; }

// 10 x 10 x 10 grid on the solid torus.
SampleSet torus_grid(const ChartPtr& t, double lo, double hi) {
  SampleSet s;
  s.chart = t;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 10; ++k) s.points.push_back({lo + (hi - lo) * i / 9, kTwoPi * (j + 0.5) / 10, kTwoPi * (k + 0.25) / 10});
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

Outcome dilation() {
  auto polar = models::polar4();
  auto V = models::weak_convex_dilation(polar);
  auto w = models::omega0(polar);
  auto L = lie_derivative(V, w);
  VectorField vf = V;
  vf.jac = {};
  DifferentialForm wf = w;
  wf.partials = {};
  auto Lfd = lie_derivative(vf, wf);
  double ea = 0, ef = 0;
  int n = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 2; ++l) {
          const double r1 = 1e-3 + (3 - 1e-3) * i / 9, r2 = 1e-3 + (3 - 1e-3) * j / 9;
          const Coords x{r1, kTwoPi * k / 5, r2, 0.3 + 3.1 * l};
          // omega0 = r1 dr1^dth1 + r2 dr2^dth2 over the basis (01, 02, 03, 12, 13, 23).
          const Coords oracle{r1, 0, 0, 0, 0, r2};
          ea = std::max(ea, max_gap(L(x), oracle));
          ef = std::max(ef, max_gap(Lfd(x), oracle));
          ++n;
        }
  const bool ok = n == 1000 && V.jac && w.analytic() && !vf.jac && !wf.analytic() && ea < 1e-6 && ef < 1e-4;
  return {ok, std::to_string(n) + " lattice points, analytic max error " + fmt(ea) + ", finite-difference max error " +
                  fmt(ef)};
}

Outcome flow_closed_form() {
  auto polar = models::polar4();
  auto V = models::weak_convex_dilation(polar);
  const double T = std::log(3.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rad(0.45, 1.5), ang(0, kTwoPi);
  double e_coord = 0, e_level = 0;
  for (int i = 0; i < 100; ++i) {
    const double r2 = rad(rng), r1 = std::sqrt(r2 * r2 + 0.5);
    const Coords p{r1, ang(rng), r2, ang(rng)};
    const Coords q = flow(V, make_point(polar, p), T).coords;
    // r1^2 -> (r1^2 - 1) e^t + 1, r2^2 -> r2^2 e^t, angles fixed.
    const Coords e{std::sqrt((r1 * r1 - 1) * 3 + 1), p[1], r2 * std::sqrt(3.0), p[3]};
    for (int k = 0; k < 4; ++k)
      e_coord = std::max(e_coord, std::abs(k % 2 ? angle_difference(q[k], e[k]) : q[k] - e[k]));
    e_level = std::max(e_level, std::abs(-q[0] * q[0] + q[2] * q[2] - 0.5));
  }
  return {e_coord < 1e-6 && e_level < 1e-6,
          "100 starts, max coordinate error " + fmt(e_coord) + ", max |f - 0.5| " + fmt(e_level)};
}

Outcome contact_certificates() {
  const double eps1 = -0.5, eps2 = 0.5, delta = 0.05;
  const HandleDescriptor d = build_weak_convex_handle(eps1, eps2, 0.75, 1.0, 1.25, std::nullopt, delta);
  const SampleSet s1 = torus_grid(d.boundary_chart, 1e-3, 1.25);
  const Certificate c1 = check_contact(*d.alpha1_plus, 1, s1);

  const DifferentialForm alpha2 = pullback(*d.free_level, interior_product(*d.v_plus, *d.omega));
  const SampleSet s2 = torus_grid(d.free_level->source, 1e-3, 2.0);
  const Certificate c2 = check_contact(alpha2, 1, s2);

  const ProfileFunction t = twist_function(eps2, delta);
  auto a2p = make_form(d.free_level->source, 1, [t](const Coords& y) { return Coords{0, t(y[0] * y[0]), 1.0}; });
  const Certificate c3 = check_contact(a2p, 1, s2);

  bool weak = false;
  for (const auto& c : d.certificates)
    if (c.check_name == "weak:free-level-weak-convexity") weak = c.pass;
  bool graph = false;
  for (const auto& c : d.certificates)
    if (c.check_name == "weak:free-graph-weak-convexity") graph = c.pass;

  const double m = std::min({c1.min_margin, c2.min_margin, c3.min_margin});
  const bool ok = c1.pass && c2.pass && c3.pass && c1.sample_count == 1000 && c2.sample_count == 1000 &&
                  c3.sample_count == 1000 && m > 1e-9 && weak && graph;
  return {ok, "alpha1/alpha2/alpha2' margins " + fmt(c1.min_margin) + "/" + fmt(c2.min_margin) + "/" +
                  fmt(c3.min_margin) + ", weak convexity " + (weak && graph ? "pass" : "fail")};
}

Outcome dcp_formulas() {
  const double A = 2, B = 2, C = 1, D = 1, g = A * C + B * D;
  auto chart = models::solid_torus("N");
  const SampleSet s = torus_grid(chart, 0.05, 1.5);
  const ContactPair pair = make_contact_pair(models::model_alpha_plus(chart, A, B),
                                             models::model_alpha_minus(chart, A, B, C, D), {}, {}, s);
  auto cyl = cylinder_chart(chart);
  const auto sp = symplectization(pair.alpha_plus, 1, cyl);
  // V- = (g e^{-t} - 1) d/dt + e^{-t} Z+, Z+ = (C - D r^2)(B + A r^2)/(2r) d/dr.
  auto z = [=](double r) { return (C - D * r * r) * (B + A * r * r) / (2 * r); };
  auto dz = [=](double r) { return -C * B / (2 * r * r) + (C * A - D * B) / 2 - 1.5 * D * A * r * r; };
  auto vm = make_field(
      cyl,
      [=](const Coords& x) {
        const double e = std::exp(-x[0]);
        return Coords{g * e - 1, e * z(x[1]), 0, 0};
      },
      [=](const Coords& x) {
        const double e = std::exp(-x[0]);
        Matrix j = Matrix::Zero(4, 4);
        j(0, 0) = -g * e;
        j(1, 0) = -e * z(x[1]);
        j(1, 1) = e * dz(x[1]);
        return j;
      });
  SampleSet few = s;
  few.points.resize(200);
  const Certificate c = verify_dcp(DCPair{sp.dt, vm, sp.omega}, slice(chart, cyl), pair.alpha_plus, pair.alpha_minus, few);
  const double lie = c.params.value("lie_derivative_max", 1.0), contr = c.params.value("contraction_max", 1.0),
               lagr = c.params.value("lagrangian_max", 1.0);
  double solve = 0;
  for (const auto& x : s.points)
    solve = std::max(solve, max_gap(counterpart_along_slice(sp, pair.alpha_minus, x), vm({0, x[0], x[1], x[2]})));
  const bool ok = c.pass && lie < 1e-6 && contr < 1e-6 && lagr < 1e-6 && solve < 1e-6;
  return {ok, "Lie " + fmt(lie) + ", contraction " + fmt(contr) + ", Lagrangian " + fmt(lagr) + ", slice solve " +
                  fmt(solve)};
}

Outcome z_plus_oracle() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(1, 12), den(1, 6);
  double eg = 0, ez = 0, ez_half = 0;
  for (int i = 0; i < 20; ++i) {
    const Rational A(num(rng), den(rng)), C(num(rng), den(rng));
    const Rational D = 1 / A + Rational(num(rng), den(rng));
    const StructuralData data = sd(A, A, C, D);
    if (!data.prepared_for_surgery()) return {false, "generated data " + data.str() + " not prepared"};
    const ContactPair pair = attaching_pair(data);
    const SampleSet s = torus_grid(pair.chart, 0.05, 1.2);
    const PairGeometry geo = solve_pair_geometry(pair, s);
    const double a = to_double(A), c = to_double(C), d = to_double(D);
    for (const auto& y : s.points) {
      const double r = y[0];
      const Coords zp = geo.z_plus(y);
      eg = std::max(eg, std::abs(geo.g_plus(y) - a * (c + d)));
      const double expected = (c - a * (c + d) * r * r) / r;
      ez = std::max({ez, std::abs(zp[0] - expected), std::abs(zp[1]), std::abs(zp[2])});
      ez_half = std::max(ez_half, std::abs(zp[0] - (c - 0.5 * a * (c + d) * r * r) / r));
    }
  }
  return {eg < 1e-8 && ez < 1e-8, "20 quadruples, max |g+ - A(C+D)| " + fmt(eg) +
                                      ", max |Z+ - (C - A(C+D) r^2)/r| " + fmt(ez) +
                                      " (solved Z+ is (C - A(C+D) r^2/2)/r within " + fmt(ez_half) + ")"};
}

Outcome graph_transversality_check() {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(0, 12), den(1, 4);
  int valid = 0;
  bool zero_ok = true, high_fails = true;
  while (valid < 10) {
    const double A = num(rng) / 4.0, B = (num(rng) + 1) / 4.0, C = (num(rng) + 1) / 4.0, D = num(rng) / 4.0;
    if (!(A * C + B * D > 1)) continue;
    auto chart = models::solid_torus("N");
    const SampleSet s = torus_grid(chart, 0.05, 1.5);
    ContactPair pair;
    try {
      pair = make_contact_pair(models::model_alpha_plus(chart, A, B), models::model_alpha_minus(chart, A, B, C, D),
                               {}, {}, s);
    } catch (const Error&) {
      continue;
    }
    ++valid;
    const PairGeometry geo = solve_pair_geometry(pair, s);
    ScalarField zero{chart, [](const Coords&) { return 0.0; }, [](const Coords&) { return Coords{0, 0, 0}; }, "0"};
    zero_ok = zero_ok && hk::graph_transversality(geo, zero, 1, s).certificate.pass &&
              hk::graph_transversality(geo, zero, -1, s).certificate.pass;
    for (double extra : {0.0, 0.5}) {
      const double h0 = std::log(A * C + B * D) + extra;
      ScalarField high{chart, [h0](const Coords&) { return h0; }, [](const Coords&) { return Coords{0, 0, 0}; }, "c"};
      high_fails = high_fails && !hk::graph_transversality(geo, high, 1, s).certificate.pass;
    }
  }

  const double A = 1, B = 2, C = 1, D = 1, eps = 0.5;
  const Preparation p = prepare_for_surgery(sd(1, 2, 1, 1), eps);
  auto chart = models::solid_torus("N");
  SampleSet radii;
  radii.chart = chart;
  for (int i = 1; i <= 1000; ++i) radii.points.push_back({eps * i / 1000.0, 0.4, 1.9});
  const ContactPair pair = make_contact_pair(models::model_alpha_plus(chart, A, B),
                                             models::model_alpha_minus(chart, A, B, C, D), {}, {}, radii);
  const PairGeometry geo = solve_pair_geometry(pair, radii);
  const ProfileFunction h = p.h;
  ScalarField hf{chart, [h](const Coords& y) { return h(y[0]); }, [h](const Coords& y) { return Coords{h.deriv(y[0]), 0, 0}; },
                 "h"};
  const Certificate c = hk::graph_transversality(geo, hf, 1, radii).certificate;
  // Hand check: e^h < AC + BD - h'(r) (C - D r^2)(B + A r^2)/(2r), slopes by central differences.
  double hand = std::numeric_limits<double>::infinity();
  for (const auto& y : radii.points) {
    const double r = y[0], s = 1e-6;
    const double dh = (h(r + s) - h(std::max(r - s, 0.0))) / (r + s - std::max(r - s, 0.0));
    hand = std::min(hand, A * C + B * D - dh * (C - D * r * r) * (B + A * r * r) / (2 * r) - std::exp(h(r)));
  }
  const bool ok = zero_ok && high_fails && c.pass && c.min_margin > 1e-9 && hand > 1e-9;
  return {ok, std::to_string(valid) + " valid pairs with h = 0 " + (zero_ok ? "pass" : "FAIL") +
                  ", e^h >= g+ rejected: " + (high_fails ? "yes" : "NO") + ", prepared profile margin " +
                  fmt(c.min_margin) + " (hand " + fmt(hand) + ")"};
}

Outcome contact_pair_handle() {
  const StructuralData data = sd(2, 2, 1, 1);
  const HandleDescriptor d = build_contact_pair_handle(data, 1.0, 0.36, 0.45, 0.9);
  double bound = -1;
  for (const auto& c : d.certificates)
    if (c.check_name == "cp:free-boundary-transversality") bound = c.params.value("radius_bound", -1.0);
  bool rejected = false;
  std::string note;
  try {
    build_contact_pair_handle(data, 1.0, 0.36, 0.7, 0.9);
  } catch (const HandleRejected& e) {
    rejected = e.certificate.check_name == "cp:free-boundary-transversality" && !e.certificate.pass;
    note = e.certificate.note;
  }
  const bool ok = std::abs(d.eps1 + 1) < 1e-14 && std::abs(d.T - std::log(3.0)) < 1e-14 &&
                  std::abs(d.R - 1.0 / 3) < 1e-14 && std::abs(bound - 0.5) < 1e-14 && d.all_pass() && rejected;
  return {ok, "eps1 = " + fmt(d.eps1) + ", T = " + fmt(d.T) + ", R = " + fmt(d.R) + ", R2 bound = " + fmt(bound) +
                  ", R2 = 0.45 " + (d.all_pass() ? "accepted" : "REJECTED") + ", R2 = 0.7 " +
                  (rejected ? "rejected (" + note + ")" : "NOT rejected")};
}

Outcome preparation() {
  const double eps = 0.5;
  const Preparation p = prepare_for_surgery(sd(1, 2, 1, 1), eps);
  const double e0 = std::abs(std::exp(p.h(0.0)) - 1.6);
  double last = 0;
  for (int i = 0; i <= 10000; ++i) {
    const double r = eps * i / 10000;
    if (p.h(r) != 0.0) last = r;
  }
  auto t = models::solid_torus("N", 1.0);
  const ProfileFunction h = p.h;
  ScalarField eh{t, [h](const Coords& y) { return std::exp(h(y[0])); }, {}, "e^h"};
  SampleSet near;
  near.chart = t;
  for (int i = 1; i <= 50; ++i) near.points.push_back({0.9 * p.delta * i / 50, 0.2 * i, 0.1 * i});
  const DerivedData dd = derive_structural_data(multiply(eh, models::model_alpha_plus(t, 1, 2)),
                                                models::constant_form(t, 1, 1), near);
  const bool prepared = dd.data.A == p.A0 && dd.data.B == p.A0 && dd.data.prepared_for_surgery();
  const bool ok = e0 < 1e-10 && last < eps && p.certificate.pass && prepared;
  return {ok, "|e^h(0) - 1.6| = " + fmt(e0) + ", support ends by r = " + fmt(last) + " < " + fmt(eps) +
                  ", re-derived " + dd.data.str() + " with A0 = " + to_string(p.A0)};
}

Outcome framing() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-40, 40), pos(1, 40), den(1, 15);
  int exact = 0;
  for (int i = 0; i < 1000; ++i) {
    const StructuralData d = sd(Rational(num(rng), den(rng)), Rational(pos(rng), den(rng)),
                                Rational(pos(rng), den(rng)), Rational(num(rng), den(rng)));
    const long j = num(rng), k = num(rng);
    const StructuralData s = shift_framing(d, k);
    const bool formula = s.A == d.A - d.B * k && s.B == d.B && s.C == d.C && s.D == d.D + d.C * k;
    const StructuralData back = shift_framing(s, -k), twice = shift_framing(shift_framing(d, j), k),
                         once = shift_framing(d, j + k), zero = shift_framing(d, 0);
    const bool action = back.A == d.A && back.B == d.B && back.C == d.C && back.D == d.D && twice.A == once.A &&
                        twice.D == once.D && zero.A == d.A && zero.D == d.D;
    const bool invariant = s.A * s.C + s.B * s.D == d.A * d.C + d.B * d.D;
    exact += formula && action && invariant;
  }
  return {exact == 1000, std::to_string(exact) + "/1000 exact round trips"};
}

Outcome push_off() {
  const PushOff po = transverse_push_off(0.5);
  const DifferentialForm pb = pullback(po.map, po.alpha_legendrian);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2), lam(0, kTwoPi);
  double e_lib = 0, e_hand = 0;
  int n = 0;
  while (n < 1000) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y >= 3.99) continue;
    const Coords p{x, y, lam(rng)};
    e_lib = std::max(e_lib, coefficient_distance(pb, po.alpha_disk, p));
    // Phi^* (d lambda - dy/x) = d lambda + (x dy - y dx)/2.
    e_hand = std::max(e_hand, max_gap(pb(p), {-0.5 * y, 0.5 * x, 1.0}));
    ++n;
  }
  const bool fat = is_fat(po.reach, -1) && po.reach >= std::exp(-1.0);
  return {e_lib < 1e-8 && e_hand < 1e-8 && fat && po.certificate.pass,
          "1000 samples, max |Phi*a2 - a1| " + fmt(e_lib) + " (hand " + fmt(e_hand) + "), reach " + fmt(po.reach) +
              (fat ? " fat" : " NOT fat") + " for framing -1"};
}

Outcome examples() {
  const auto u1 = concavity_pipeline(unknot_model(), {1});
  const auto h00 = concavity_pipeline(hopf_model(), {0, 0});
  const auto u0 = concavity_pipeline(unknot_model(), {0});
  const auto hm = concavity_pipeline(hopf_model(), {-1, 0});
  bool surf = true;
  for (int g = 0; g <= 3; ++g)
    for (int n = 1; n <= 4; ++n) {
      const SurgeryDiagram d = emit_surface(g, n, std::vector<long>(n, 1), {});
      int zero = 0;
      for (const auto& c : d.components) zero += c.role == ComponentRole::ambient && c.framing == 0;
      surf = surf && zero == 2 * g + n - 1;
    }
  const bool ok = u1.pass() && h00.pass() && u0.halted_at == 4 && hm.halted_at == 4 && surf;
  auto st = [](const PipelineReport& r) { return r.pass() ? std::string("pass") : "halt@" + std::to_string(r.halted_at.value_or(0)); };
  return {ok, "unknot F=1 " + st(u1) + ", hopf (0,0) " + st(h00) + ", unknot F=0 " + st(u0) + ", hopf (-1,0) " + st(hm) +
                  ", surface counts " + (surf ? "2g+n-1" : "WRONG")};
}

Outcome weinstein() {
  const HandleDescriptor cvx = build_weinstein_handle(WeinsteinKind::convex, -0.5);
  const HandleDescriptor ccv = build_weinstein_handle(WeinsteinKind::concave, -0.5);
  const auto lc = lie_derivative(*cvx.v_plus, *cvx.omega), lk = lie_derivative(*ccv.v_plus, *ccv.omega);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2, 2);
  double ec = 0, ek = 0;
  for (int i = 0; i < 1000; ++i) {
    const Coords x{u(rng), u(rng), u(rng), u(rng)};
    // omega = dx1^dy1 + dx2^dy2 in (x1, y1, x2, y2).
    ec = std::max(ec, max_gap(lc(x), {1, 0, 0, 0, 0, 1}));
    ek = std::max(ek, max_gap(lk(x), {-1, 0, 0, 0, 0, -1}));
  }
  const auto iv = interior_product(*cvx.v_plus, *cvx.omega);
  double leg = 0;
  const double rho = std::sqrt(0.5);
  for (int i = 0; i < 1000; ++i) {
    const double phi = kTwoPi * i / 1000;
    leg = std::max(leg, std::abs(iv.apply({rho * std::cos(phi), 0, rho * std::sin(phi), 0},
                                          {{-rho * std::sin(phi), 0, rho * std::cos(phi), 0}})));
  }
  // f = -|x|^2 + |y|^2, df = (-2x1, 2y1, -2x2, 2y2).
  double margin = std::numeric_limits<double>::infinity();
  for (const auto* d : {&cvx, &ccv})
    for (double eps : {-0.5, 0.5})
      for (int i = 0; i < 250; ++i) {
        const double s = 0.05 + 0.006 * i, phi = 0.37 * i, q = std::sqrt(s * s + std::abs(eps));
        const Coords x = eps < 0 ? Coords{q * std::cos(phi), s, q * std::sin(phi), 0}
                                 : Coords{s * std::cos(phi), q * std::cos(0.7 * i), s * std::sin(phi), q * std::sin(0.7 * i)};
        const Coords v = (*d->v_plus)(x);
        margin = std::min(margin, -2 * x[0] * v[0] + 2 * x[1] * v[1] - 2 * x[2] * v[2] + 2 * x[3] * v[3]);
      }
  const bool ok = ec < 1e-6 && ek < 1e-6 && leg < 1e-8 && margin > 0 && cvx.all_pass() && ccv.all_pass();
  return {ok, "L_V omega = omega error " + fmt(ec) + ", L_V omega = -omega error " + fmt(ek) + ", K1 contraction " +
                  fmt(leg) + ", min df(V) on levels " + fmt(margin)};
}

Outcome determinism() {
  SuiteConfig cfg;
  cfg.spec.seed = 424242;
  auto dump = [&](const std::string& id) {
    std::string s;
    for (const auto& c : run_suite(id, cfg).certificates) s += c.to_json().dump() + "\n";
    return s;
  };
  bool same = true;
  for (const char* id : {"dcp-formulas", "legendrian-pushoff", "prepare-for-surgery"}) same = same && dump(id) == dump(id);
  same = same && concavity_pipeline(hopf_model(), {0, 0}).to_json().dump() ==
                     concavity_pipeline(hopf_model(), {0, 0}).to_json().dump();
  SampleSpec spec;
  spec.seed = 8;
  same = same && build_contact_pair_handle(sd(2, 2, 1, 1), 1.0, 0.36, 0.45, 0.9, std::nullopt, spec).to_json().dump() ==
                     build_contact_pair_handle(sd(2, 2, 1, 1), 1.0, 0.36, 0.45, 0.9, std::nullopt, spec).to_json().dump();
  return {same, same ? "suite, pipeline and handle JSON byte-identical across runs" : "outputs differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"dilation identity", dilation},
      {"flow closed form", flow_closed_form},
      {"contact certificates", contact_certificates},
      {"dcp formulas", dcp_formulas},
      {"Z+ oracle", z_plus_oracle},
      {"graph transversality", graph_transversality_check},
      {"contact-pair handle", contact_pair_handle},
      {"preparation", preparation},
      {"framing calculus", framing},
      {"push-off", push_off},
      {"examples", examples},
      {"Weinstein handles", weinstein},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
