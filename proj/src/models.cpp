#include "hk/models.hpp"

#include <cmath>

namespace hk::models {

ChartPtr polar4() {
  static const ChartPtr chart =
      make_chart("polar4", {"r1", "th1", "r2", "th2"}, {false, true, false, true},
                 [](const Coords& x) { return x[0] > 0 && x[2] > 0; });
  return chart;
}

DifferentialForm omega0(const ChartPtr& polar) {
  // Basis order: 01 02 03 12 13 23.
  return make_form(
      polar, 2, [](const Coords& x) { return Coords{x[0], 0, 0, 0, 0, x[2]}; },
      [](const Coords&) {
        Matrix p = Matrix::Zero(6, 4);
        p(0, 0) = 1;
        p(5, 2) = 1;
        return p;
      },
      "omega0");
}

VectorField weak_convex_dilation(const ChartPtr& polar) {
  return make_field(
      polar, [](const Coords& x) { return Coords{0.5 * (x[0] - 1 / x[0]), 0, 0.5 * x[2], 0}; },
      [](const Coords& x) {
        Matrix j = Matrix::Zero(4, 4);
        j(0, 0) = 0.5 * (1 + 1 / (x[0] * x[0]));
        j(2, 2) = 0.5;
        return j;
      },
      [](const Coords& x) { return x[0] > 0; }, "V");
}

ScalarField morse_function(const ChartPtr& polar) {
  return ScalarField{polar, [](const Coords& x) { return -x[0] * x[0] + x[2] * x[2]; },
                     [](const Coords& x) { return Coords{-2 * x[0], 0, 2 * x[2], 0}; }, "f"};
}

ChartPtr solid_torus(const std::string& name, double r_max) {
  return make_chart(name, {"r", "mu", "lambda"}, {false, true, true},
                    [r_max](const Coords& x) { return x[0] > 0 && x[0] < r_max; });
}

DifferentialForm model_alpha_plus(const ChartPtr& torus, double A, double B) {
  return make_form(
      torus, 1,
      [A, B](const Coords& x) {
        const double r2 = x[0] * x[0], q = B + A * r2;
        return Coords{0, r2 / q, 1 / q};
      },
      [A, B](const Coords& x) {
        const double r = x[0], q = B + A * r * r;
        Matrix p = Matrix::Zero(3, 3);
        p(1, 0) = 2 * r * B / (q * q);
        p(2, 0) = -2 * A * r / (q * q);
        return p;
      },
      "alpha+");
}

DifferentialForm constant_form(const ChartPtr& torus, double a, double b) {
  return make_form(
      torus, 1, [a, b](const Coords&) { return Coords{0, a, b}; },
      [](const Coords&) { return Matrix(Matrix::Zero(3, 3)); }, "const");
}

DifferentialForm model_alpha_minus(const ChartPtr& torus, double A, double B, double C, double D) {
  DifferentialForm m = subtract(constant_form(torus, C, D), model_alpha_plus(torus, A, B));
  m.label = "alpha-";
  return m;
}

ChartPtr s3() {
  static const ChartPtr chart =
      make_chart("S3", {"r1", "th1", "th2"}, {false, true, true},
                 [](const Coords& x) { return x[0] > 0 && x[0] < std::sqrt(2.0); });
  return chart;
}

DifferentialForm s3_alpha(const ChartPtr& s3) {
  return make_form(
      s3, 1,
      [](const Coords& x) {
        const double r2 = x[0] * x[0];
        return Coords{0, 0.5 * r2, 0.5 * (2 - r2)};
      },
      [](const Coords& x) {
        Matrix p = Matrix::Zero(3, 3);
        p(1, 0) = x[0];
        p(2, 0) = -x[0];
        return p;
      },
      "alpha_std");
}

}  // namespace hk::models
