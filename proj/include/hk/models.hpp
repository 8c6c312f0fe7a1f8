// Explicit charts and forms shared by the handle constructions and examples.
#pragma once

#include "hk/geom.hpp"

namespace hk::models {

/// (r1, th1, r2, th2) on R^4 minus the coordinate axes.
ChartPtr polar4();
/// r1 dr1^dth1 + r2 dr2^dth2.
DifferentialForm omega0(const ChartPtr& polar);
/// (1/2)[(r1 - 1/r1) d/dr1 + r2 d/dr2]; undefined on r1 = 0.
VectorField weak_convex_dilation(const ChartPtr& polar);
/// f = -r1^2 + r2^2.
ScalarField morse_function(const ChartPtr& polar);

/// (r, mu, lambda) normal coordinates around a knot; r > 0.
ChartPtr solid_torus(const std::string& name, double r_max = 1e9);
/// (r^2 dmu + dlambda) / (B + A r^2).
DifferentialForm model_alpha_plus(const ChartPtr& torus, double A, double B);
/// C dmu + D dlambda - model_alpha_plus.
DifferentialForm model_alpha_minus(const ChartPtr& torus, double A, double B, double C, double D);
/// a dmu + b dlambda with constant a, b.
DifferentialForm constant_form(const ChartPtr& torus, double a, double b);

/// S^3 of squared radius 2 in (r1, th1, th2), 0 < r1 < sqrt 2.
ChartPtr s3();
/// (1/2)(r1^2 dth1 + (2 - r1^2) dth2).
DifferentialForm s3_alpha(const ChartPtr& s3);

}  // namespace hk::models
