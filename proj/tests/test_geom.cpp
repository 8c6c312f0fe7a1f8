#include <doctest.h>

#include <cmath>
#include <random>

#include "hk/geom.hpp"
#include "hk/models.hpp"
#include "hk/sampling.hpp"

using namespace hk;

namespace {

double max_abs(const Coords& c) {
  double m = 0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

Coords random_polar(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.2, 1.8), a(0.0, kTwoPi);
  return {r(rng), a(rng), r(rng), a(rng)};
}

// A smooth 1-form and 2-form on the polar chart, FD only.
DifferentialForm wiggly_one(const ChartPtr& c) {
  return make_form(c, 1, [](const Coords& x) {
    return Coords{std::sin(x[1]) * x[2], x[0] * x[0], std::cos(x[3] + x[0]), x[1] * x[2]};
  });
}

DifferentialForm wiggly_two(const ChartPtr& c) {
  return make_form(c, 2, [](const Coords& x) {
    return Coords{x[0], std::sin(x[2]), x[3] * x[1], 1.0, std::exp(-x[0]), x[2] * x[2]};
  });
}

}  // namespace

TEST_CASE("chart reduces periodic coordinates and rejects out-of-domain points") {
  auto c = models::polar4();
  Point p = make_point(c, {1.0, 7.0, 0.5, -1.0});
  CHECK(p.coords[1] == doctest::Approx(7.0 - kTwoPi));
  CHECK(p.coords[3] == doctest::Approx(kTwoPi - 1.0));
  CHECK_THROWS_AS(make_point(c, {-1.0, 0, 1, 0}), DomainError);
  CHECK_THROWS_AS(make_point(c, {1.0, 0, 1}), Error);
  CHECK_THROWS_AS(make_chart("bad", {"x", "y"}, {false}), ParameterError);
  CHECK(angle_difference(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
}

TEST_CASE("form basis is lexicographic and sized by binomials") {
  const auto& b = form_basis(4, 2);
  REQUIRE(b.size() == 6);
  CHECK(b[0] == std::vector<int>{0, 1});
  CHECK(b[5] == std::vector<int>{2, 3});
  CHECK(form_basis_index(4, {1, 3}) == 4);
  CHECK(binomial(4, 3) == 4);
}

TEST_CASE("wedge: antisymmetry, symplectic form, graded commutativity") {
  auto c = models::polar4();
  auto dth1 = coordinate_differential(c, 1);
  CHECK(max_abs(wedge(dth1, dth1)({1, 0, 1, 0})) == 0.0);

  ScalarField r1{c, [](const Coords& x) { return x[0]; }, {}, "r1"};
  ScalarField r2{c, [](const Coords& x) { return x[2]; }, {}, "r2"};
  auto w = add(wedge(multiply(r1, coordinate_differential(c, 0)), dth1),
               wedge(multiply(r2, coordinate_differential(c, 2)), coordinate_differential(c, 3)));
  CHECK(coefficient_distance(w, models::omega0(c), {1, 0, 1, 0}) < 1e-15);

  auto a = wiggly_one(c), b = wiggly_two(c);
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    Coords x = random_polar(rng);
    // (-1)^{1*2} = +1, and for two 1-forms the sign is -1.
    worst = std::max(worst, coefficient_distance(wedge(a, b), wedge(b, a), x));
    Coords ab = wedge(a, dth1)(x), ba = wedge(dth1, a)(x);
    for (std::size_t k = 0; k < ab.size(); ++k) worst = std::max(worst, std::abs(ab[k] + ba[k]));
  }
  CHECK(worst < 1e-12);

  CHECK_THROWS_AS(wedge(b, wedge(b, dth1)), Error);
  auto other = make_chart("other", {"a", "b", "c", "d"}, {false, false, false, false});
  CHECK_THROWS_AS(wedge(a, coordinate_differential(other, 0)), Error);
}

TEST_CASE("exterior derivative: direct differentiation and d o d = 0") {
  auto c = models::polar4();
  auto half_r1sq = make_form(c, 1, [](const Coords& x) { return Coords{0, 0.5 * x[0] * x[0], 0, 0}; });
  auto expected = [](const Coords& x) { return Coords{x[0], 0, 0, 0, 0, 0}; };
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    Coords x = random_polar(rng);
    Coords got = exterior_derivative(half_r1sq)(x), want = expected(x);
    for (int k = 0; k < 6; ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-8));
  }

  auto a = wiggly_one(c);
  auto dda = exterior_derivative(exterior_derivative(a));
  double worst = 0;
  for (int i = 0; i < 50; ++i) worst = std::max(worst, max_abs(dda(random_polar(rng))));
  CHECK(worst < 1e-4);

  CHECK_THROWS_AS(exterior_derivative(make_form(c, 4, [](const Coords&) { return Coords{1}; })),
                  Error);
  CHECK_THROWS_AS(exterior_derivative(a)({-1, 0, 1, 0}), DomainError);
}

TEST_CASE("d(i_V omega0) = omega0 for the weak-convexity dilation, analytic mode") {
  auto c = models::polar4();
  auto V = models::weak_convex_dilation(c);
  auto w = models::omega0(c);
  auto iv = interior_product(V, w);
  REQUIRE(iv.analytic());
  // Hand expansion of i_V omega0: (1/2)[(r1^2 - 1) dth1 + r2^2 dth2].
  auto hand = make_form(c, 1, [](const Coords& x) {
    return Coords{0, 0.5 * (x[0] * x[0] - 1), 0, 0.5 * x[2] * x[2]};
  });
  auto d_analytic = exterior_derivative(iv);
  auto d_hand = exterior_derivative(hand);
  SampleSpec spec;
  spec.lattice = 5;
  spec.halton = 1000 - 625;
  auto samples = sample_box(c, {{1e-3, 2}, {0, kTwoPi}, {1e-3, 2}, {0, kTwoPi}}, spec);
  REQUIRE(samples.size() >= 900);
  double worst = 0, worst_hand = 0, worst_fd = 0;
  for (const auto& x : samples.points) {
    worst = std::max(worst, coefficient_distance(d_analytic, w, x));
    worst_hand = std::max(worst_hand, coefficient_distance(iv, hand, x));
    worst_fd = std::max(worst_fd, coefficient_distance(d_hand, w, x));
  }
  CHECK(worst < 1e-6);
  CHECK(worst_hand < 1e-12);
  CHECK(worst_fd < 1e-4);
}

TEST_CASE("interior product: pointwise values and antisymmetry") {
  auto c = models::polar4();
  auto V = models::weak_convex_dilation(c);
  Coords got = interior_product(V, models::omega0(c))({2, 0, 1, 0});
  CHECK(got[0] == doctest::Approx(0));
  CHECK(got[1] == doctest::Approx(1.5));
  CHECK(got[2] == doctest::Approx(0));
  CHECK(got[3] == doctest::Approx(0.5));

  auto b = wiggly_two(c);
  auto W = make_field(c, [](const Coords& x) { return Coords{x[1], 1, x[0] * x[3], -2}; });
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) CHECK(max_abs(interior_product(W, interior_product(W, b))(random_polar(rng))) < 1e-12);
  CHECK_THROWS_AS(interior_product(W, make_form(c, 0, [](const Coords&) { return Coords{1}; })), Error);
}

TEST_CASE("Lie derivative: dilation, symplectization, and flow difference quotient") {
  auto c = models::polar4();
  auto V = models::weak_convex_dilation(c);
  auto w = models::omega0(c);
  auto lv = lie_derivative(V, w);
  SampleSpec spec;
  spec.lattice = 5;
  spec.halton = 1000 - 625;
  auto samples = sample_box(c, {{1e-3, 2}, {0, kTwoPi}, {1e-3, 2}, {0, kTwoPi}}, spec);
  double worst = 0;
  for (const auto& x : samples.points) worst = std::max(worst, coefficient_distance(lv, w, x));
  CHECK(worst < 1e-6);

  // d(e^t alpha) on R x S^3 is invariant under the t-dilation.
  auto cyl = make_chart("cyl", {"t", "r1", "th1", "th2"}, {false, false, true, true},
                        [](const Coords& x) { return x[1] > 0 && x[1] < std::sqrt(2.0); });
  auto eta = make_form(cyl, 1, [](const Coords& x) {
    const double e = std::exp(x[0]), r2 = x[1] * x[1];
    return Coords{0, 0, 0.5 * e * r2, 0.5 * e * (2 - r2)};
  });
  auto deta = exterior_derivative(eta);
  auto l = lie_derivative(coordinate_field(cyl, 0), deta);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(-1, 1), r(0.2, 1.2), a(0, kTwoPi);
  double worst_t = 0;
  for (int i = 0; i < 50; ++i) {
    Coords x{t(rng), r(rng), a(rng), a(rng)};
    worst_t = std::max(worst_t, coefficient_distance(l, deta, x));
  }
  CHECK(worst_t < 1e-4);

  // Flow-pullback difference quotient of a non-invariant form.
  auto b = wiggly_two(c);
  const double eps = 1e-3;
  auto flow_map = [&](double s) {
    return ChartMap{c, c, [V, c, s](const Coords& x) { return flow(V, Point{c, x}, s, 1e-4).coords; },
                    {}, "flow"};
  };
  auto fwd = pullback(flow_map(eps), b), bwd = pullback(flow_map(-eps), b);
  auto cartan = lie_derivative(V, b);
  double worst_q = 0;
  for (int i = 0; i < 20; ++i) {
    Coords x = random_polar(rng);
    x[0] = 0.5 + 0.5 * x[0];
    Coords f = fwd(x), g = bwd(x), lc = cartan(x);
    // Compare in the covering line: unreduced flow keeps angles continuous
    // for such short times, except near the cut, which is avoided here.
    if (x[1] < 0.1 || x[1] > kTwoPi - 0.1 || x[3] < 0.1 || x[3] > kTwoPi - 0.1) continue;
    for (std::size_t k = 0; k < f.size(); ++k)
      worst_q = std::max(worst_q, std::abs((f[k] - g[k]) / (2 * eps) - lc[k]));
  }
  CHECK(worst_q < 1e-3);
}

TEST_CASE("pullback: push-off map, identity, naturality") {
  auto plane = make_chart("plane", {"x", "y"}, {false, false}, [](const Coords& x) { return x[0] > 0; });
  auto src = make_chart("src", {"x", "y"}, {false, false}, [](const Coords& x) { return x[0] < 3; });
  const double c1 = 3, c2 = 0.1;
  ChartMap phi{src, plane,
               [=](const Coords& x) { return Coords{c2 / (c1 - x[0]), c2 * x[1]}; },
               [=](const Coords& x) {
                 Matrix j = Matrix::Zero(2, 2);
                 j(0, 0) = c2 / ((c1 - x[0]) * (c1 - x[0]));
                 j(1, 1) = c2;
                 return j;
               },
               "phi"};
  auto area = make_form(plane, 2, [](const Coords& x) { return Coords{1 / (x[0] * x[0])}; });
  CHECK(std::abs(pullback(phi, area)({0, 0})[0] - 1.0) < 1e-10);
  // Outside the target domain.
  CHECK_THROWS_AS(pullback(phi, area)({4, 0}), DomainError);

  auto c = models::polar4();
  auto a = wiggly_one(c), b = wiggly_two(c);
  std::mt19937_64 rng(9);
  double worst_id = 0, worst_nat = 0;
  ChartMap twist{c, c,
                 [](const Coords& x) { return Coords{x[0] + 0.1 * std::sin(x[3]), x[1] + x[0], x[2], x[3] + 0.2 * x[2]}; },
                 {}, "twist"};
  for (int i = 0; i < 100; ++i) {
    Coords x = random_polar(rng);
    worst_id = std::max(worst_id, coefficient_distance(pullback(identity_map(c), b), b, x));
    worst_nat = std::max(worst_nat, coefficient_distance(pullback(twist, wedge(a, b)),
                                                         wedge(pullback(twist, a), pullback(twist, b)), x));
  }
  CHECK(worst_id < 1e-14);
  CHECK(worst_nat < 1e-8);
}

TEST_CASE("flow: closed form, identity, semigroup, reversibility, domain exit") {
  auto c = models::polar4();
  auto V = models::weak_convex_dilation(c);
  const double eps1 = -0.5, r = 0.8, T = std::log(3.0);
  Point p = make_point(c, {std::sqrt(r * r - eps1), 0.3, r, 1.1});
  Point q = flow(V, p, T);
  // Closed-form flow: r1^2 = (r^2 - eps1 - 1) e^t + 1, r2^2 = r^2 e^t.
  const double r1sq = (r * r - eps1 - 1) * std::exp(T) + 1, r2sq = r * r * std::exp(T);
  CHECK(std::abs(q.coords[0] * q.coords[0] - r1sq) < 1e-6);
  CHECK(std::abs(q.coords[2] * q.coords[2] - r2sq) < 1e-6);
  CHECK(std::abs(r1sq - 1.42) < 1e-12);
  CHECK(std::abs(r2sq - 1.92) < 1e-12);
  auto f = models::morse_function(c);
  CHECK(std::abs(f(q.coords) - 0.5) < 1e-6);

  Point same = flow(V, p, 0.0);
  CHECK(same.coords == p.coords);

  Point a = flow(V, flow(V, p, 0.4), 0.7), b = flow(V, p, 1.1);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(angle_difference(a.coords[k], b.coords[k])) < 1e-6);

  for (double t : {-2.0, -0.5, 1.0, 2.0}) {
    Point start = make_point(c, {1.3, 0.2, 1.0, 6.2});
    Point back = flow(V, flow(V, start, t), -t);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(angle_difference(back.coords[k], start.coords[k])) < 1e-6);
  }

  // Forward along V, r1 reaches 0 at t = log(4/3) from r1 = 0.5.
  try {
    flow(V, make_point(c, {0.5, 0, 1, 0}), 3.0);
    FAIL("expected domain exit");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("t = 0.28") != std::string::npos);
  }
}

TEST_CASE("analytic derivatives agree with finite differences") {
  auto c = models::polar4();
  auto f = models::morse_function(c);
  auto V = models::weak_convex_dilation(c);
  auto w = models::omega0(c);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    Coords x = random_polar(rng);
    Coords g = f.gradient(x);
    Matrix jf = fd_jacobian([&](const Coords& y) { return Coords{f(y)}; }, x, 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(g[k] - jf(0, k)) < 1e-4);
    CHECK((V.jacobian(x) - fd_jacobian(V.eval, x, 4)).cwiseAbs().maxCoeff() < 1e-4);
    CHECK((w.coefficient_jacobian(x) - fd_jacobian(w.coeffs, x, 4)).cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("sampling is deterministic and respects the domain") {
  auto c = models::polar4();
  SampleSpec spec;
  auto a = sample_box(c, {{-1, 2}, {0, kTwoPi}, {0.1, 2}, {0, kTwoPi}}, spec);
  auto b = sample_box(c, {{-1, 2}, {0, kTwoPi}, {0.1, 2}, {0, kTwoPi}}, spec);
  CHECK(a.points == b.points);
  for (const auto& x : a.points) CHECK(x[0] > 0);
  spec.seed = 99;
  auto d = sample_box(c, {{-1, 2}, {0, kTwoPi}, {0.1, 2}, {0, kTwoPi}}, spec);
  CHECK(d.points != a.points);
  CHECK(d.seed == 99);
}
