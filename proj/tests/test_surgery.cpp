#include <doctest.h>

#include <cmath>
#include <random>

#include "hk/models.hpp"
#include "hk/surgery.hpp"

using namespace hk;

namespace {

StructuralData sd(long a, long b, long c, long d) {
  return StructuralData{Rational(a), Rational(b), Rational(c), Rational(d)};
}

SampleSet torus_samples(const ChartPtr& t, double lo = 0.05, double hi = 1.0) {
  return sample_box(t, {{lo, hi}, {0, kTwoPi}, {0, kTwoPi}}, SampleSpec{});
}

// 1/2 (r^2 dmu + (2 - r^2) dlambda): the standard form near either Hopf component.
DifferentialForm s3_local(const ChartPtr& t) {
  return make_form(t, 1, [](const Coords& y) { return Coords{0, 0.5 * y[0] * y[0], 1 - 0.5 * y[0] * y[0]}; });
}

}  // namespace

TEST_CASE("framing shifts") {
  auto s = shift_framing(sd(2, 2, 1, 1), 1);
  CHECK(s.A == 0);
  CHECK(s.B == 2);
  CHECK(s.C == 1);
  CHECK(s.D == 2);
  CHECK_THROWS_AS(shift_framing(sd(1, -1, 1, 1), 1), ParameterError);
  CHECK(shift_coordinates(Framing{"mu", 0}, 3).offset == 3);
  CHECK(shift_coordinates(Framing{"mu", 0}, -2).str() == "F_mu - 2");

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-20, 20), pos(1, 20), den(1, 9);
  for (int i = 0; i < 100; ++i) {
    StructuralData d{Rational(num(rng), den(rng)), Rational(pos(rng), den(rng)), Rational(pos(rng), den(rng)),
                     Rational(num(rng), den(rng))};
    const long k = num(rng);
    auto t = shift_framing(d, k);
    // (A - Bk)C + B(D + Ck) expands to AC + BD.
    CHECK(t.g_plus() == d.A * d.C + d.B * d.D);
    CHECK(t.well_behaved());
    auto back = shift_framing(t, -k);
    CHECK(back.A == d.A);
    CHECK(back.B == d.B);
    CHECK(back.C == d.C);
    CHECK(back.D == d.D);
  }
}

TEST_CASE("fatness and positivity") {
  CHECK(is_fat(1.2, 0));
  CHECK_FALSE(is_fat(1.2, 1));
  CHECK(is_fat(1.0 + 1e-3, 0));
  CHECK_FALSE(positivity_wrt_fibration(Rational(0), 0));
  CHECK(positivity_wrt_fibration(Rational(0), 1));
  CHECK(positivity_wrt_fibration(Rational(-1), 0));
  CHECK_FALSE(positivity_wrt_fibration(Rational(-1), -1));
  for (long f : {-5L, 0L, 7L}) CHECK_FALSE(positivity_wrt_fibration(std::nullopt, f));
  CHECK(to_string(Slope{}) == "inf");
  CHECK(*rational_approximation(0.5) == Rational(1, 2));
  CHECK(*rational_approximation(1.0 / 3) == Rational(1, 3));
  CHECK(*rational_approximation(-1.25) == Rational(-5, 4));
  CHECK_FALSE(rational_approximation(std::nan("")));
}

TEST_CASE("structural data from models") {
  auto t = models::solid_torus("nu", std::sqrt(2.0));
  auto samples = torus_samples(t);
  // R_alpha = d/dmu + d/dlambda for the standard form; alpha^0 = 3 dmu.
  auto unknot = derive_structural_data(s3_local(t), models::constant_form(t, 3, 0), samples);
  CHECK(unknot.certificate.pass);
  CHECK(unknot.data.A == 1);
  CHECK(unknot.data.B == 1);
  CHECK(unknot.data.C == 3);
  CHECK(unknot.data.D == 0);
  auto hopf = derive_structural_data(s3_local(t), models::constant_form(t, 2, 2), samples);
  CHECK(hopf.data.A == 1);
  CHECK(hopf.data.D == 2);

  auto m = models::solid_torus("N", 0.6);
  auto ms = torus_samples(m, 0.05, 0.55);
  auto pair = derive_structural_data(models::model_alpha_plus(m, 2, 2), models::constant_form(m, 1, 1), ms);
  CHECK(pair.data.A == 2);
  CHECK(pair.data.B == 2);
  CHECK(pair.data.C == 1);
  CHECK(pair.data.D == 1);

  // B and C both negative: coordinates (r, -mu, -lambda) restore positivity.
  auto flipped = derive_structural_data(scale(models::model_alpha_plus(m, 2, 2), -1),
                                        models::constant_form(m, -1, -1), ms);
  CHECK(flipped.orientation_flipped);
  CHECK(flipped.data.B == 2);
  CHECK(flipped.data.C == 1);

  auto varying = make_form(m, 1, [](const Coords& y) { return Coords{0, y[0], 1}; });
  CHECK_THROWS_WITH_AS(derive_structural_data(models::model_alpha_plus(m, 2, 2), varying, ms),
                       doctest::Contains("not well-behaved"), Error);
}

TEST_CASE("prepare for surgery") {
  const double A = 1, B = 2, C = 1, D = 1, eps = 0.5;
  auto p = prepare_for_surgery(sd(1, 2, 1, 1), eps);
  CHECK(p.A0 == Rational(5, 4));
  CHECK(std::abs(p.h(0.0) - std::log(1.6)) < 1e-14);
  CHECK_MESSAGE(p.certificate.pass, p.certificate.note);
  CHECK(p.prepared.prepared_for_surgery());
  CHECK(p.delta <= eps / 4);
  // Independent re-check of the transversality inequality with FD slopes.
  for (int i = 1; i <= 1000; ++i) {
    const double r = eps * i / 1000.0, hs = 1e-6;
    const double dh = (p.h(r + hs) - p.h(r - hs)) / (2 * hs);
    CHECK(std::exp(p.h(r)) < A * C + B * D - (C - D * r * r) * (B + A * r * r) / (2 * r) * dh);
    CHECK(p.h(r) >= 0);
  }
  CHECK(p.h(0.95 * eps) == 0.0);

  // e^h alpha+ and alpha^0 - e^h alpha+ are prepared with A = B = A0 near the core.
  auto t = models::solid_torus("N", 1.0);
  const ProfileFunction h = p.h;
  ScalarField eh{t, [h](const Coords& y) { return std::exp(h(y[0])); }, {}, "e^h"};
  auto plus = multiply(eh, models::model_alpha_plus(t, A, B));
  auto zero = models::constant_form(t, C, D);
  auto near = sample_box(t, {{0.01, 0.9 * p.delta}, {0, kTwoPi}, {0, kTwoPi}}, SampleSpec{});
  auto d = derive_structural_data(plus, zero, near);
  CHECK(d.data.A == Rational(5, 4));
  CHECK(d.data.B == Rational(5, 4));
  CHECK(d.data.prepared_for_surgery());
  auto pair = make_contact_pair(plus, subtract(zero, plus), {}, {}, near);
  for (const auto& c : pair.certificates) CHECK_MESSAGE(c.pass, c.check_name);

  auto same = prepare_for_surgery(sd(2, 2, 1, 1), eps);
  CHECK(same.certificate.pass);
  for (int i = 0; i <= 100; ++i) CHECK(same.h(eps * i / 100) == 0.0);

  CHECK_THROWS_WITH_AS(prepare_for_surgery(sd(1, 1, 1, 1), eps), doctest::Contains("shift_framing"),
                       ParameterError);
  CHECK_THROWS_AS(prepare_for_surgery(sd(1, 2, 1, 0), eps), ParameterError);
}

TEST_CASE("transverse push-off") {
  auto po = transverse_push_off(0.5);
  CHECK_MESSAGE(po.certificate.pass, po.certificate.note);
  CHECK(po.certificate.sample_count >= 1000);
  CHECK(po.c1 > 2);
  Coords o = po.map.eval({0, 0, 0});
  CHECK(std::abs(o[0] - po.c2 / po.c1) < 1e-15);
  CHECK(std::abs(o[1]) < 1e-15);
  CHECK(is_fat(po.reach, -1));
  CHECK(po.certificate.params["loop_integral_max"].get<double>() < 1e-8);
  // For phi(x, y) = (c2/(c1 - x), c2 y) the primitive is c1 y - x y / 2.
  for (double x : {-1.5, -0.3, 0.0, 0.8, 1.4})
    for (double y : {-1.2, 0.0, 0.5, 1.3}) {
      if (x * x + y * y >= 4) continue;
      CHECK(std::abs(po.h(x, y) - (po.c1 * y - 0.5 * x * y)) < 1e-12);
      const double s = 1e-5;
      const double hx = (po.h(x + s, y) - po.h(x - s, y)) / (2 * s);
      const double hy = (po.h(x, y + s) - po.h(x, y - s)) / (2 * s);
      CHECK(std::abs(hx + 0.5 * y) < 1e-8);
      CHECK(std::abs(hy - (0.5 * x + (po.c1 - x))) < 1e-8);
    }
  CHECK(transverse_push_off(0.5, -3).certificate.pass);
  CHECK_THROWS_AS(transverse_push_off(0.5, 0), ParameterError);
  CHECK_THROWS_AS(transverse_push_off(0.5, -1, 1.5), ParameterError);
}

TEST_CASE("surgery diagrams") {
  CHECK(emit_unknot(1).admissible);
  CHECK_FALSE(emit_unknot(0).admissible);
  CHECK(emit_hopf(0, 0).admissible);
  auto bad = emit_hopf(-1, 0);
  CHECK_FALSE(bad.admissible);
  CHECK(bad.reason.find("hopf-1") != std::string::npos);
  CHECK_FALSE(emit_hopf(0, -1).admissible);

  auto s = emit_surface(1, 2, {1, 2}, {3});
  int ambient = 0, surgered = 0, leaves = 0;
  for (const auto& c : s.components) {
    if (c.role == ComponentRole::ambient) {
      ++ambient;
      CHECK(c.framing == 0);
    }
    if (c.role == ComponentRole::surgered) ++surgered;
    if (c.role == ComponentRole::leaf) {
      ++leaves;
      CHECK(c.framing == -1);
    }
  }
  CHECK(ambient == 3);
  CHECK(surgered == 2);
  CHECK(leaves == 3);
  CHECK(s.admissible);
  CHECK(s.ambient == "S3 with 3 zero-framed unknots");
  CHECK_FALSE(emit_surface(1, 2, {1, 0}, {3}).admissible);
  CHECK_FALSE(emit_surface(1, 2, {0, 1}, {3}).admissible);
  CHECK_THROWS_AS(emit_surface(1, 2, {1}, {}), ParameterError);

  const std::string text = emit_unknot(1).text();
  CHECK(text.find("unknot 1 surgered\n") != std::string::npos);
  CHECK(emit_unknot(1).to_json()["admissible"] == true);
}

TEST_CASE("nicely fibered models") {
  auto u = unknot_model();
  auto cu = check_nicely_fibered(u);
  CHECK_MESSAGE(cu.pass, cu.note);
  REQUIRE(u.slopes.size() == 1);
  CHECK(*u.slopes[0] == 0);
  auto h = hopf_model();
  CHECK(check_nicely_fibered(h).pass);
  REQUIRE(h.slopes.size() == 2);
  CHECK(*h.slopes[0] == -1);
  CHECK(*h.slopes[1] == -1);
  for (double v : h.dp_pairing) CHECK(std::abs(v - 2) < 1e-12);
}

TEST_CASE("concavity pipeline") {
  auto unknot = concavity_pipeline(unknot_model(), {1});
  CHECK_MESSAGE(unknot.pass(), unknot.halt_reason);
  CHECK(unknot.stages.size() == 9);
  for (const auto& s : unknot.stages) CHECK_MESSAGE(s.pass, s.name);
  REQUIRE(unknot.diagram);
  CHECK(unknot.diagram->components.size() == 1);
  CHECK(unknot.diagram->components[0].framing == 1);
  CHECK(unknot.diagram->admissible);
  CHECK(unknot.to_json()["pass"] == true);
  // Hand values: alpha(V) = 1, so kappa = 1/2, c = 4, data (1/2 - 1/2, 1/2, 4, 4) after the shift.
  CHECK(unknot.stages[1].detail["c"] == "4");
  CHECK(unknot.stages[3].detail["unknot"]["shifted"] == StructuralData{Rational(0), Rational(1, 2), Rational(4), Rational(4)}.str());

  auto hopf = concavity_pipeline(hopf_model(), {0, 0});
  CHECK_MESSAGE(hopf.pass(), hopf.halt_reason);

  auto flat = concavity_pipeline(unknot_model(), {0});
  CHECK_FALSE(flat.pass());
  REQUIRE(flat.halted_at);
  CHECK(*flat.halted_at == 4);
  CHECK(flat.halt_reason.find("framing-shift") == 0);
  CHECK_THROWS_AS(concavity_pipeline(hopf_model(), {0}), ParameterError);
}
