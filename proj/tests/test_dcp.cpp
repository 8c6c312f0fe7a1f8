#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hk/dcp.hpp"
#include "hk/models.hpp"

using namespace hk;

namespace {

struct Model {
  double A = 2, B = 2, C = 1, D = 1;
  ChartPtr chart = models::solid_torus("N");
  SampleSet samples;
  ContactPair pair;
  PairGeometry geometry;

  Model()
      : samples(sample_box(chart, {{0.05, 1.5}, {0, kTwoPi}, {0, kTwoPi}}, SampleSpec{})),
        pair(make_contact_pair(models::model_alpha_plus(chart, A, B),
                               models::model_alpha_minus(chart, A, B, C, D), {}, {}, samples)),
        geometry(solve_pair_geometry(pair, samples)) {}

  // Hand algebra for the model pair.
  double g_plus() const { return A * C + B * D; }
  double z_plus(double r) const { return (C - D * r * r) * (B + A * r * r) / (2 * r); }
};

ChartMap slice(const ChartPtr& base, const ChartPtr& cyl) {
  return ChartMap{base, cyl, [](const Coords& x) { return Coords{0, x[0], x[1], x[2]}; },
                  [](const Coords&) {
                    Matrix j = Matrix::Zero(4, 3);
                    j.block(1, 0, 3, 3).setIdentity();
                    return j;
                  },
                  "t=0"};
}

}  // namespace

TEST_CASE("pair geometry of the model pair") {
  Model m;
  for (const auto& c : m.geometry.certificates) CHECK_MESSAGE(c.pass, c.check_name);
  const double g = m.g_plus();
  for (const auto& x : m.samples.points) {
    const double r = x[0], q = m.B + m.A * r * r;
    CHECK(std::abs(m.geometry.g_plus(x) - g) < 1e-8);
    CHECK(std::abs(m.geometry.g_minus(x) - g / (g - 1)) < 1e-8);
    Coords bp = m.geometry.beta_plus(x);
    CHECK(std::abs(bp[1] - (m.C - m.D * r * r) / q * m.B) < 1e-8);
    CHECK(std::abs(bp[2] + (m.C - m.D * r * r) / q * m.A) < 1e-8);
    Coords zp = m.geometry.z_plus(x), zm = m.geometry.z_minus(x);
    CHECK(std::abs(zp[0] - m.z_plus(r)) < 1e-8);
    CHECK(std::abs(zp[1]) < 1e-8);
    CHECK(std::abs(zp[2]) < 1e-8);
    // beta^- = -beta^+ / (g - 1), hence Z^- = -Z^+ / (g - 1).
    CHECK(std::abs(zm[0] + m.z_plus(r) / (g - 1)) < 1e-8);
    CHECK(std::abs(m.pair.alpha_zero.apply(x, {zp})) < 1e-8);
    CHECK(std::abs(m.pair.alpha_zero.apply(x, {zm})) < 1e-8);
  }
  // Where alpha^0 is proportional to alpha^+ (r^2 = C/D), Z^+ vanishes.
  Coords z1 = m.geometry.z_plus({1.0, 0.3, 0.4});
  for (double v : z1) CHECK(std::abs(v) < 1e-8);

  std::ostringstream csv;
  write_pair_geometry_csv(m.geometry, m.samples, csv);
  CHECK(csv.str().rfind("r,mu,lambda,g_plus,g_minus,Zp_r", 0) == 0);
}

TEST_CASE("kernel solve rejects degenerate gamma") {
  CHECK_THROWS_AS(solve_kernel_field({0, 0, 1}, {0, 0, 0}, {1, 0, 0}), Error);
}

TEST_CASE("counterpart fields and the slice solve") {
  Model m;
  auto cyl = cylinder_chart(m.chart);
  auto sp = symplectization(m.pair.alpha_plus, 1, cyl);
  auto vminus = counterpart_field(m.geometry, 1, cyl);
  for (const auto& x : m.samples.points) {
    Coords p{0, x[0], x[1], x[2]};
    Coords v = vminus(p);
    CHECK(std::abs(v[0] - 3) < 1e-8);  // g+ e^0 - 1 with g+ = 4
    CHECK(std::abs(v[1] - m.z_plus(x[0])) < 1e-8);
    Coords w = counterpart_along_slice(sp, m.pair.alpha_minus, x);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(w[k] - v[k]) < 1e-6);
    // i_{V-} omega+ at t = 0 is alpha^-.
    Coords c = interior_product(vminus, sp.omega)(p), a = m.pair.alpha_minus(x);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(c[k + 1] - a[k]) < 1e-6);
  }
  // Re-solving in reverse order gives the same field.
  for (auto it = m.samples.points.rbegin(); it != m.samples.points.rend(); ++it) {
    Coords p{0, (*it)[0], (*it)[1], (*it)[2]};
    Coords w = counterpart_along_slice(sp, m.pair.alpha_minus, *it), v = vminus(p);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(w[k] - v[k]) < 1e-6);
  }
}

TEST_CASE("verify_dcp on the model pair, a perturbation, and a degenerate pair") {
  Model m;
  auto cyl = cylinder_chart(m.chart);
  auto sp = symplectization(m.pair.alpha_plus, 1, cyl);
  auto vminus = counterpart_field(m.geometry, 1, cyl);
  SampleSpec spec;
  spec.halton = 60;
  auto samples = sample_box(m.chart, {{0.05, 1.5}, {0, kTwoPi}, {0, kTwoPi}}, spec);
  auto surf = slice(m.chart, cyl);
  DCPair dcp{sp.dt, vminus, sp.omega};
  auto good = verify_dcp(dcp, surf, m.pair.alpha_plus, m.pair.alpha_minus, samples);
  CHECK_MESSAGE(good.pass, good.note);

  auto bumped = make_field(cyl, [vminus](const Coords& x) {
    Coords v = vminus(x);
    v[0] += 0.1;
    return v;
  });
  auto bad = verify_dcp(DCPair{sp.dt, bumped, sp.omega}, surf, m.pair.alpha_plus,
                        m.pair.alpha_minus, samples);
  CHECK_FALSE(bad.pass);
  CHECK(bad.params["contraction_max"].get<double>() > 1e-2);

  // Weak-convexity model: V alone over omega0 along f = eps1.
  auto polar = models::polar4();
  const double eps1 = -0.5;
  auto nc = models::solid_torus("K1", 2.0);
  ChartMap level{nc, polar,
                 [eps1](const Coords& y) { return Coords{std::sqrt(y[0] * y[0] - eps1), -y[2], y[0], y[1]}; },
                 {}, "f=eps1"};
  // Hand expansion of i_V omega0 on the level: (1/2)[(r^2 - eps1 - 1)(-dlambda) + r^2 dmu].
  auto expected = make_form(nc, 1, [eps1](const Coords& y) {
    const double r2 = y[0] * y[0];
    return Coords{0, 0.5 * r2, -0.5 * (r2 - eps1 - 1)};
  });
  auto level_samples = sample_box(nc, {{0.05, 1.5}, {0, kTwoPi}, {0, kTwoPi}}, spec);
  auto weak = verify_dcp(DCPair{models::weak_convex_dilation(polar), std::nullopt, models::omega0(polar)},
                         level, expected, std::nullopt, level_samples);
  CHECK_MESSAGE(weak.pass, weak.note);
}

TEST_CASE("graph transversality") {
  Model m;
  ScalarField zero{m.chart, [](const Coords&) { return 0.0; },
                   [](const Coords&) { return Coords{0, 0, 0}; }, "0"};
  CHECK(graph_transversality(m.geometry, zero, 1, m.samples).certificate.pass);
  CHECK(graph_transversality(m.geometry, zero, -1, m.samples).certificate.pass);
  const double h0 = std::log(m.g_plus()) + 0.1;
  ScalarField high{m.chart, [h0](const Coords&) { return h0; },
                   [](const Coords&) { return Coords{0, 0, 0}; }, "high"};
  auto gt = graph_transversality(m.geometry, high, 1, m.samples);
  CHECK_FALSE(gt.certificate.pass);
  Coords x{0.3, 0.1, 0.2};
  Coords a = gt.alpha_plus(x), b = m.pair.alpha_plus(x);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - std::exp(h0) * b[k]) < 1e-12);
  CHECK(coefficient_distance(gt.alpha_zero, m.pair.alpha_zero, x) < 1e-15);
}
